#include "rrsyt/modp.hpp"

#include <limits>
#include <numeric>

#include "rrsyt/errors.hpp"

namespace rrsyt::modp {

namespace {

// Row echelon form with delayed reduction: rows accumulate unreduced
// products in 64-bit words and are reduced only when the next update could
// overflow or when an entry is inspected.
struct Echelon {
  std::vector<std::size_t> pivot_cols;
  std::vector<std::vector<std::uint32_t>> pivot_rows;  // normalized, full width
};

Echelon eliminate(const Matrix& m, std::uint64_t p, bool keep_rows) {
  if (p < 3 || p >= (std::uint64_t{1} << 31)) throw InvalidInput("modulus out of range");
  const std::size_t rows = m.rows;
  const std::size_t cols = m.cols;
  std::vector<std::uint64_t> work(m.data.begin(), m.data.end());
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::uint64_t> pending(rows, 0);
  const std::uint64_t q = (p - 1) * (p - 1);
  const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() - (p - 1)) / q;

  auto reduce_row = [&](std::size_t r, std::size_t from) {
    std::uint64_t* row = work.data() + r * cols;
    for (std::size_t c = from; c < cols; ++c) row[c] %= p;
    pending[r] = 0;
  };

  Echelon out;
  std::vector<std::uint32_t> pivot(cols);
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t found = rows;
    for (std::size_t i = next; i < rows; ++i) {
      std::uint64_t& entry = work[order[i] * cols + c];
      entry %= p;
      if (entry != 0) {
        found = i;
        break;
      }
    }
    if (found == rows) continue;
    std::swap(order[next], order[found]);
    const std::size_t pr = order[next];
    reduce_row(pr, c);
    const std::uint64_t scale = inv(work[pr * cols + c], p);
    for (std::size_t cc = c; cc < cols; ++cc) {
      pivot[cc] = static_cast<std::uint32_t>(work[pr * cols + cc] * scale % p);
    }

    for (std::size_t i = next + 1; i < rows; ++i) {
      const std::size_t r = order[i];
      std::uint64_t* row = work.data() + r * cols;
      const std::uint64_t f = row[c] % p;
      if (f == 0) {
        row[c] = 0;
        continue;
      }
      if (pending[r] >= limit) reduce_row(r, c);
      const auto nf = static_cast<std::uint32_t>(p - f);
      const std::uint32_t* src = pivot.data();
      for (std::size_t cc = c; cc < cols; ++cc) {
        row[cc] += static_cast<std::uint64_t>(nf) * src[cc];
      }
      ++pending[r];
    }

    out.pivot_cols.push_back(c);
    if (keep_rows) out.pivot_rows.push_back(pivot);
    ++next;
  }
  return out;
}

Matrix permuted(const Matrix& m, PivotOrder order) {
  if (order == PivotOrder::natural) return m;
  Matrix out(m.rows, m.cols);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      out.at(m.rows - 1 - r, m.cols - 1 - c) = m.at(r, c);
    }
  }
  return out;
}

}  // namespace

std::size_t rank(const Matrix& m, std::uint64_t p, PivotOrder order) {
  return eliminate(permuted(m, order), p, false).pivot_cols.size();
}

std::vector<std::vector<std::uint64_t>> nullspace(const Matrix& m, std::uint64_t p,
                                                  PivotOrder order) {
  const Matrix work = permuted(m, order);
  const Echelon ech = eliminate(work, p, true);
  const std::size_t cols = work.cols;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = ech.pivot_cols.size(); i-- > 0;) {
      const std::size_t pc = ech.pivot_cols[i];
      const auto& row = ech.pivot_rows[i];
      std::uint64_t acc = 0;
      for (std::size_t cc = pc + 1; cc < cols; ++cc) {
        if (v[cc] != 0) acc = (acc + row[cc] * v[cc]) % p;
      }
      v[pc] = neg(acc, p);
    }
    if (order == PivotOrder::reversed) {
      std::vector<std::uint64_t> back(cols);
      for (std::size_t c = 0; c < cols; ++c) back[cols - 1 - c] = v[c];
      v = std::move(back);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace rrsyt::modp
