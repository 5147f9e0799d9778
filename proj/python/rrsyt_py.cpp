#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rrsyt/asympt.hpp"
#include "rrsyt/count.hpp"
#include "rrsyt/errors.hpp"
#include "rrsyt/formats.hpp"
#include "rrsyt/freewalk.hpp"
#include "rrsyt/reclab.hpp"

namespace py = pybind11;
using namespace rrsyt;

namespace {

// Big integers cross the boundary as decimal strings.
py::object to_py(const BigInt& v) {
  const std::string s = to_string(v);
  return py::reinterpret_steal<py::object>(PyLong_FromString(s.c_str(), nullptr, 10));
}

BigInt from_py(const py::handle& h) { return parse_bigint(py::str(h)); }

py::list to_py(const TermSequence& seq) {
  py::list out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq.is_exact()) {
      out.append(to_py(seq.values()[i]));
    } else {
      out.append(py::int_(seq.residues()[i]));
    }
  }
  return out;
}

TermSequence exact_terms(const py::iterable& terms, std::int64_t offset) {
  std::vector<BigInt> v;
  for (auto t : terms) v.push_back(from_py(t));
  return TermSequence::exact(offset, std::move(v));
}

py::object json_to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Arithmetic arithmetic_of(std::optional<std::uint64_t> mod) {
  return mod ? Arithmetic::modular(*mod) : Arithmetic::exact();
}

py::list recurrence_coeffs(const Recurrence& r) {
  py::list out;
  for (const auto& poly : r.coeffs()) {
    py::list row;
    for (const auto& c : poly) row.append(to_py(c));
    out.append(row);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(rrsyt, m) {
  m.doc() = "Run-restricted standard Young tableaux: counts, recurrences and asymptotics";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidShape>(m, "InvalidShape", base.ptr());
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<ShortfallError>(m, "ShortfallError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<CacheError>(m, "CacheError", base.ptr());

  py::class_<RunSet>(m, "RunSet")
      .def(py::init([](std::vector<std::int64_t> finite, std::vector<std::pair<std::int64_t, std::int64_t>> progs) {
             std::vector<Progression> p;
             for (auto [first, step] : progs) p.push_back({first, step});
             return RunSet(std::move(finite), std::move(p));
           }),
           py::arg("finite") = std::vector<std::int64_t>{},
           py::arg("progressions") = std::vector<std::pair<std::int64_t, std::int64_t>>{})
      .def_static("evens", &RunSet::evens)
      .def_static("singleton", &RunSet::singleton)
      .def("__contains__", &RunSet::contains)
      .def("contains", &RunSet::contains)
      .def_property_readonly("threshold", [](const RunSet& r) { return r.canonical().threshold; })
      .def_property_readonly("period", [](const RunSet& r) { return r.canonical().period; })
      .def("canonicalized", &RunSet::canonicalized)
      .def("__eq__", [](const RunSet& a, const RunSet& b) { return a == b; })
      .def("__repr__", [](const RunSet& r) { return "RunSet(" + r.describe() + ")"; });

  py::class_<Problem>(m, "Problem")
      .def(py::init([](int rows, std::vector<RunSet> restrictions, std::optional<std::uint64_t> mod) {
             Problem p{rows, std::move(restrictions), arithmetic_of(mod)};
             p.validate();
             return p;
           }),
           py::arg("rows"), py::arg("restrictions"), py::arg("mod") = py::none())
      .def_static("preset_g", [] { return Problem::preset_g(); })
      .def_static("preset_h", [] { return Problem::preset_h(); })
      .def_static("unrestricted", [](int k) { return Problem::unrestricted(k); }, py::arg("k"))
      .def_readonly("rows", &Problem::rows)
      .def_readonly("restrictions", &Problem::restrictions)
      .def_property_readonly("prime",
                             [](const Problem& p) -> py::object {
                               if (p.arithmetic.is_exact()) return py::none();
                               return py::int_(p.arithmetic.prime());
                             })
      .def("with_mod",
           [](Problem p, std::optional<std::uint64_t> mod) {
             p.arithmetic = arithmetic_of(mod);
             return p;
           },
           py::arg("mod"))
      .def("hash", &problem_hash);

  m.def(
      "count_restricted",
      [](std::vector<int> shape, std::vector<RunSet> restrictions, std::optional<std::uint64_t> mod) -> py::object {
        const Shape s(std::move(shape));
        if (mod) return py::int_(count_restricted_mod(s, restrictions, Arithmetic::modular(*mod)));
        return to_py(count_restricted(s, restrictions));
      },
      py::arg("shape"), py::arg("restrictions"), py::arg("mod") = py::none(),
      "Tableaux of `shape` with no run of row i in restrictions[i].");

  m.def(
      "brute_force_count",
      [](std::vector<int> shape, std::vector<RunSet> restrictions) {
        return to_py(brute_force_count(Shape(std::move(shape)), restrictions));
      },
      py::arg("shape"), py::arg("restrictions"));
  m.def(
      "young_frobenius", [](std::vector<int> shape) { return to_py(young_frobenius(Shape(std::move(shape)))); },
      py::arg("shape"));
  m.def(
      "rect_closed_form", [](int k, int n) { return to_py(rect_closed_form(k, n)); }, py::arg("k"), py::arg("n"));

  m.def(
      "diagonal_sequence",
      [](const Problem& p, int n_max, std::optional<std::string> cache_dir) {
        std::optional<TermCache> cache;
        if (cache_dir) cache.emplace(*cache_dir);
        TermSequence seq;
        {
          py::gil_scoped_release release;
          seq = cached_diagonal_sequence(p, n_max, cache ? &*cache : nullptr);
        }
        return to_py(seq);
      },
      py::arg("problem"), py::arg("n_max"), py::arg("cache_dir") = py::none(),
      "Terms for n = 0..n_max of the k x n rectangle diagonal.");

  m.def(
      "free_walk_count",
      [](std::vector<int> endpoint, std::vector<RunSet> restrictions) {
        return to_py(free_walk_count(endpoint, restrictions));
      },
      py::arg("endpoint"), py::arg("restrictions"));

  m.def(
      "restricted_series",
      [](int k, std::vector<RunSet> restrictions, int degree_cap) {
        const auto f = solve_restricted_system(k, restrictions, degree_cap);
        py::dict out;
        for (const auto& [e, c] : f.terms()) out[py::tuple(py::cast(e))] = to_py(c);
        return out;
      },
      py::arg("k"), py::arg("restrictions"), py::arg("degree_cap"),
      "Coefficients of the truncated generating function as {exponent tuple: count}.");

  m.def(
      "series_diagonal",
      [](int k, std::vector<RunSet> restrictions, int m_max, std::optional<int> degree_cap) {
        const auto f = solve_restricted_system(k, restrictions, degree_cap.value_or(k * m_max));
        return to_py(series_diagonal(f, m_max));
      },
      py::arg("k"), py::arg("restrictions"), py::arg("m"), py::arg("degree_cap") = py::none());

  m.def(
      "guess_recurrence",
      [](const py::iterable& terms, int order, int degree, std::uint64_t prime, std::int64_t offset,
         std::size_t margin) {
        const auto seq = exact_terms(terms, offset).reduce(prime);
        py::list out;
        for (const auto& r : guess_recurrence(seq, order, degree, margin)) out.append(recurrence_coeffs(r));
        return out;
      },
      py::arg("terms"), py::arg("order"), py::arg("degree"), py::arg("prime") = Arithmetic::kDefaultPrime,
      py::arg("offset") = 0, py::arg("margin") = kDefaultMargin,
      "Basis of recurrences mod prime; coeffs[i][j] multiplies n^j a(n+i).");

  m.def(
      "lift_recurrence",
      [](const py::iterable& terms, int order, int degree, std::optional<std::vector<std::uint64_t>> primes,
         std::int64_t offset) -> py::object {
        const auto ps = primes ? *primes : default_primes(3);
        const auto res = lift_recurrence(exact_terms(terms, offset), order, degree, ps);
        if (!res.recurrence) return py::none();
        py::dict out;
        out["coefficients"] = recurrence_coeffs(*res.recurrence);
        out["text"] = res.recurrence->to_string();
        return out;
      },
      py::arg("terms"), py::arg("order"), py::arg("degree"), py::arg("primes") = py::none(),
      py::arg("offset") = 0, "Integer recurrence verified on the terms, or None.");

  m.def(
      "certify_absence",
      [](const py::iterable& terms, int budget, std::uint64_t prime, std::int64_t offset, std::size_t margin) {
        const auto seq = exact_terms(terms, offset).reduce(prime);
        CertifyOptions opts;
        opts.margin = margin;
        Certificate cert;
        {
          py::gil_scoped_release release;
          cert = certify_absence(seq, budget, opts);
        }
        return json_to_py(certificate_to_json(cert));
      },
      py::arg("terms"), py::arg("budget"), py::arg("prime") = Arithmetic::kDefaultPrime, py::arg("offset") = 0,
      py::arg("margin") = kDefaultMargin);

  m.def(
      "estimate_growth",
      [](const py::iterable& terms, int depth, std::int64_t offset) {
        return json_to_py(growth_to_json(estimate_growth(exact_terms(terms, offset), depth)));
      },
      py::arg("terms"), py::arg("depth") = 4, py::arg("offset") = 0,
      "Fit of C mu^n n^theta with stability spreads and nearest named constants.");

  m.def(
      "match_constant",
      [](double value, const std::string& kind) {
        const auto cands = kind == "exponent" ? default_exponent_candidates() : default_base_candidates();
        const auto best = match_constant(value, cands);
        return py::make_tuple(best.best.name, best.residual);
      },
      py::arg("value"), py::arg("kind") = "base");
}
