#pragma once

// Sweep over lattice points in lexicographic order computing the number of
// run-restricted walks ending at each point.
//
// For every point x and axis i the engine needs
//   g_i(x) = sum over allowed r >= 1 of h_i(x - r e_i),
//   h_i(y) = g(y) - g_i(y)   (walks not ending with an i-step, plus the
//                             empty walk at the origin).
// Along a line parallel to axis i the sum over allowed r is the running
// total minus the forbidden contributions. Forbidden lengths below the
// canonical threshold T are point lookups in a ring buffer of the last T
// values; lengths >= T are forbidden by residue class modulo the period P,
// which is served by per-class partial sums of positions <= x - T.
//
// Each axis i keeps one accumulator line per suffix (x_{i+1}, ..., x_k).
// Because the prefix (x_1, ..., x_{i-1}) is fixed while a line is live and
// the sweep is lexicographic, every line sees consecutive positions and is
// reset when it restarts at its lower boundary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rrsyt/bigint.hpp"
#include "rrsyt/errors.hpp"
#include "rrsyt/restrict.hpp"

namespace rrsyt::detail {

enum class Cone {
  weyl,     // x_1 >= x_2 >= ... >= x_k >= 0 (standard Young tableaux)
  orthant,  // x_i >= 0 (free walks)
};

struct ModRing {
  using value_type = std::uint64_t;
  std::uint64_t p;

  void zero(value_type& a) const { a = 0; }
  void one(value_type& a) const { a = 1; }
  void add(value_type& a, const value_type& b) const {
    a += b;
    if (a >= p) a -= p;
  }
  void sub(value_type& a, const value_type& b) const { a = a >= b ? a - b : a + p - b; }
  void set_difference(value_type& out, const value_type& a, const value_type& b) const {
    out = a >= b ? a - b : a + p - b;
  }
  std::uint64_t bytes_per_value(double /*bits*/) const { return sizeof(value_type); }
};

struct BigRing {
  using value_type = BigInt;

  void zero(value_type& a) const { a = 0; }
  void one(value_type& a) const { a = 1; }
  void add(value_type& a, const value_type& b) const {
    mpz_add(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  void sub(value_type& a, const value_type& b) const {
    mpz_sub(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  void set_difference(value_type& out, const value_type& a, const value_type& b) const {
    mpz_sub(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  std::uint64_t bytes_per_value(double bits) const {
    return sizeof(value_type) + 8 * (static_cast<std::uint64_t>(bits / 64.0) + 1);
  }
};

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{4} << 30;

template <class Ring>
class WalkEngine {
 public:
  using value_type = typename Ring::value_type;

  WalkEngine(Ring ring, Cone cone, std::vector<int> caps, std::span<const RunSet> restrictions,
             std::uint64_t memory_budget = kDefaultMemoryBudget)
      : ring_(std::move(ring)), cone_(cone), caps_(std::move(caps)) {
    const std::size_t k = caps_.size();
    if (restrictions.size() != k) {
      throw InvalidInput("need one run-set per axis: " + std::to_string(k) + " axes, " +
                         std::to_string(restrictions.size()) + " run-sets");
    }
    weights_.assign(k, 1);
    for (std::size_t j = k; j-- > 1;) {
      weights_[j - 1] = weights_[j] * static_cast<std::uint64_t>(caps_[j] + 1);
    }

    double bits = 1.0;
    for (int c : caps_) bits += c * std::log2(std::max<double>(2.0, static_cast<double>(k)));

    axes_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      Axis& ax = axes_[i];
      const auto& ind = restrictions[i].canonical();
      ax.threshold = ind.threshold;
      ax.period = ind.period;
      for (std::int64_t r = 1; r < ind.threshold; ++r) {
        if (ind.head[static_cast<std::size_t>(r)]) ax.small_forbidden.push_back(r);
      }
      for (std::int64_t c = 0; c < ind.period; ++c) {
        if (ind.tail[static_cast<std::size_t>(c)]) ax.forbidden_classes.push_back(c);
      }
      ax.stride = 1 + static_cast<std::size_t>(ax.threshold + ax.period);
      const std::uint64_t lines = weights_[i];
      const std::uint64_t bytes = lines * ax.stride * ring_.bytes_per_value(bits);
      if (bytes > memory_budget) {
        throw ResourceError("accumulator slice for axis " + std::to_string(i + 1) + " needs " +
                                std::to_string(lines) + " lines x " + std::to_string(ax.stride) +
                                " values (~" + std::to_string(bytes) +
                                " bytes), exceeding the memory budget of " +
                                std::to_string(memory_budget) + " bytes",
                            bytes);
      }
      ax.bank.resize(static_cast<std::size_t>(lines * ax.stride));
    }
  }

  // Calls visit(point, g) for every point of the cone inside the caps box, in
  // lexicographic order.
  template <class Visit>
  void run(Visit&& visit) {
    const std::size_t k = caps_.size();
    std::vector<int> point(k, 0);
    value_type g;
    if (k == 0) {
      ring_.one(g);
      visit(std::span<const int>(point), g);
      return;
    }
    std::vector<value_type> partial(k);
    std::vector<value_type*> lines(k);
    std::vector<int> lower(k);
    value_type scratch;
    bool origin = true;

    while (true) {
      std::uint64_t suffix = 0;
      for (std::size_t i = k; i-- > 0;) {
        lines[i] = axes_[i].bank.data() + suffix * axes_[i].stride;
        suffix += static_cast<std::uint64_t>(point[i]) * weights_[i];
        lower[i] = (cone_ == Cone::weyl && i + 1 < k) ? point[i + 1] : 0;
      }

      if (origin) {
        ring_.one(g);
      } else {
        ring_.zero(g);
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (point[i] == lower[i]) {
          reset(axes_[i], lines[i]);
          ring_.zero(partial[i]);
        } else {
          query(axes_[i], lines[i], point[i], lower[i], partial[i]);
          ring_.add(g, partial[i]);
        }
      }

      visit(std::span<const int>(point), g);

      for (std::size_t i = 0; i < k; ++i) {
        ring_.set_difference(scratch, g, partial[i]);
        push(axes_[i], lines[i], point[i], lower[i], scratch);
      }

      if (!advance(point)) break;
      origin = false;
    }
  }

 private:
  struct Axis {
    std::int64_t threshold = 1;
    std::int64_t period = 1;
    std::vector<std::int64_t> small_forbidden;
    std::vector<std::int64_t> forbidden_classes;
    std::size_t stride = 3;
    std::vector<value_type> bank;  // per line: total, ring[threshold], classes[period]
  };

  void reset(const Axis& ax, value_type* line) const {
    for (std::size_t s = 0; s < ax.stride; ++s) ring_.zero(line[s]);
  }

  void query(const Axis& ax, const value_type* line, std::int64_t x, std::int64_t lower,
             value_type& out) const {
    const value_type* buffer = line + 1;
    const value_type* classes = buffer + ax.threshold;
    out = line[0];
    for (auto r : ax.small_forbidden) {
      if (x - r < lower) break;
      ring_.sub(out, buffer[(x - r) % ax.threshold]);
    }
    for (auto c : ax.forbidden_classes) {
      ring_.sub(out, classes[(((x - c) % ax.period) + ax.period) % ax.period]);
    }
  }

  void push(const Axis& ax, value_type* line, std::int64_t y, std::int64_t lower,
            const value_type& h) const {
    value_type* buffer = line + 1;
    value_type* classes = buffer + ax.threshold;
    ring_.add(line[0], h);
    buffer[y % ax.threshold] = h;
    const std::int64_t z = y - (ax.threshold - 1);
    if (z >= lower) ring_.add(classes[z % ax.period], buffer[z % ax.threshold]);
  }

  bool advance(std::vector<int>& point) const {
    const std::size_t k = point.size();
    for (std::size_t j = k; j-- > 0;) {
      int upper = caps_[j];
      if (cone_ == Cone::weyl && j > 0) upper = std::min(upper, point[j - 1]);
      if (point[j] < upper) {
        ++point[j];
        std::fill(point.begin() + static_cast<std::ptrdiff_t>(j) + 1, point.end(), 0);
        return true;
      }
    }
    return false;
  }

  Ring ring_;
  Cone cone_;
  std::vector<int> caps_;
  std::vector<std::uint64_t> weights_;
  std::vector<Axis> axes_;
};

}  // namespace rrsyt::detail
