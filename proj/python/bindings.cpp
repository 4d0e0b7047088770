#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "majorlens/io.hpp"
#include "majorlens/scan.hpp"

namespace py = pybind11;
using namespace majorlens;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

HermitianOperator to_operator(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw ValidationError("expected a square matrix");
  const auto dim = static_cast<std::size_t>(a.shape(0));
  ComplexMatrix m(dim);
  auto r = a.unchecked<2>();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = r(i, j);
  return HermitianOperator(std::move(m));
}

CArray to_array(const HermitianOperator& op) {
  const auto dim = static_cast<py::ssize_t>(op.dim());
  CArray out({dim, dim});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < dim; ++i)
    for (py::ssize_t j = 0; j < dim; ++j) w(i, j) = op(i, j);
  return out;
}

BipartiteDensity to_density(const CArray& a, std::size_t da, std::size_t db) {
  return BipartiteDensity(Dims{da, db}, to_operator(a));
}

py::dict verdict_dict(const DetectionVerdict& v) {
  py::dict d;
  d["detected"] = v.detected;
  d["margin"] = v.margin;
  const auto& w = v.detected ? *v.witness : v.at_margin;
  d["q"] = w.q;
  d["alpha"] = w.alpha;
  d["t"] = w.t;
  return d;
}

py::dict report_dict(const MajorizationReport& r) {
  py::dict d;
  d["side"] = to_string(r.side);
  d["cumsum_rho"] = r.cumsum_rho;
  d["cumsum_reduced"] = r.cumsum_reduced;
  d["violated_indices"] = r.violated_indices;
  d["first_violation"] = r.first_violation;
  return d;
}

FamilySpec make_spec(std::size_t d, std::vector<double> x, bool symmetric) {
  FamilySpec s{d, std::move(x), symmetric ? Exchange::Symmetric : Exchange::Antisymmetric};
  validate_region(s);
  return s;
}

EntropicFamily make_family(const std::string& kind, double q, double alpha, double t) {
  if (kind == "von_neumann") return EntropicFamily::von_neumann();
  if (kind == "tsallis") return EntropicFamily::tsallis(q);
  if (kind == "peaked") return EntropicFamily::peaked(alpha, t);
  if (kind == "peaked_limit") return EntropicFamily::peaked_limit(alpha);
  throw ValidationError("unknown entropic family '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_majorlens, m) {
  m.doc() = "Majorization and entropic entanglement criteria for bipartite qudit densities";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::enum_<Side>(m, "Side").value("A", Side::A).value("B", Side::B);

  m.def("eigenvalues", [](const CArray& a) { return eigenvalues(to_operator(a)).values; },
        "Descending eigenvalues of a Hermitian matrix");
  m.def("partial_trace", [](const CArray& a, std::size_t da, std::size_t db, Side keep) {
          return to_array(partial_trace(to_operator(a), Dims{da, db}, keep));
        }, py::arg("rho"), py::arg("d_a"), py::arg("d_b"), py::arg("keep") = Side::A);
  m.def("partial_transpose", [](const CArray& a, std::size_t da, std::size_t db) {
          return to_array(partial_transpose(to_operator(a), Dims{da, db}));
        }, py::arg("rho"), py::arg("d_a"), py::arg("d_b"));
  m.def("peres_check", [](const CArray& a, std::size_t da, std::size_t db) {
          return peres_check(to_density(a, da, db));
        }, py::arg("rho"), py::arg("d_a"), py::arg("d_b"));
  m.def("disorder_check", [](const CArray& a, std::size_t da, std::size_t db, double tol) {
          const auto [ra, rb] = disorder_check(to_density(a, da, db), tol);
          return py::make_tuple(report_dict(ra), report_dict(rb));
        }, py::arg("rho"), py::arg("d_a"), py::arg("d_b"), py::arg("tol") = 1e-10);

  m.def("entropy", [](const std::vector<double>& p, const std::string& kind, double q, double alpha, double t) {
          return entropy(make_family(kind, q, alpha, t), Spectrum::from_values(p));
        }, py::arg("spectrum"), py::arg("kind") = "von_neumann", py::arg("q") = 2.0, py::arg("alpha") = 0.5,
        py::arg("t") = 1e3);
  m.def("conditional", [](const std::vector<double>& rho, const std::vector<double>& reduced,
                          const std::string& kind, double q, double alpha, double t) {
          const auto r = conditional(make_family(kind, q, alpha, t), Spectrum::from_values(rho),
                                     Spectrum::from_values(reduced));
          py::dict d;
          d["s_rho"] = r.s_rho;
          d["s_reduced"] = r.s_reduced;
          d["difference"] = r.difference;
          d["normalized"] = r.normalized;
          return d;
        }, py::arg("rho"), py::arg("reduced"), py::arg("kind") = "von_neumann", py::arg("q") = 2.0,
        py::arg("alpha") = 0.5, py::arg("t") = 1e3);
  m.def("tsallis_sweep", [](const std::vector<double>& rho, const std::vector<double>& reduced, double qmin,
                            double qmax, std::size_t points) {
          return verdict_dict(tsallis_sweep(Spectrum::from_values(rho), Spectrum::from_values(reduced),
                                            QGrid{qmin, qmax, points}));
        }, py::arg("rho"), py::arg("reduced"), py::arg("qmin") = 1e-2, py::arg("qmax") = 1e3,
        py::arg("points") = 96);
  m.def("peaked_search", [](const std::vector<double>& rho, const std::vector<double>& reduced,
                            std::vector<double> alphas, std::vector<double> ts) {
          const auto red = Spectrum::from_values(reduced);
          if (alphas.empty()) alphas = recommended_alphas(red);
          if (ts.empty()) ts = default_t_schedule();
          return verdict_dict(peaked_search(Spectrum::from_values(rho), red, alphas, ts));
        }, py::arg("rho"), py::arg("reduced"), py::arg("alphas") = std::vector<double>{},
        py::arg("ts") = std::vector<double>{});
  m.def("recommend_alpha", [](const std::vector<double>& reduced, std::size_t j) {
          return recommend_alpha(Spectrum::from_values(reduced), j);
        }, py::arg("reduced"), py::arg("j"));

  m.def("family_density", [](std::size_t d, std::vector<double> x, bool symmetric) {
          return to_array(build(make_spec(d, std::move(x), symmetric)).op());
        }, py::arg("d"), py::arg("x"), py::arg("symmetric") = false);
  m.def("family_spectrum", [](std::size_t d, std::vector<double> x) {
          return analytic_spectrum(make_spec(d, std::move(x), false)).values;
        }, py::arg("d"), py::arg("x"));
  m.def("family_reduced", [](std::size_t d, std::vector<double> x) {
          return analytic_reduced(make_spec(d, std::move(x), false)).values;
        }, py::arg("d"), py::arg("x"));
  m.def("family_sigma", [](std::size_t d, std::vector<double> x) {
          return sigma_min_pt(make_spec(d, std::move(x), false));
        }, py::arg("d"), py::arg("x"));
  m.def("in_region", [](std::size_t d, std::vector<double> x) {
          return in_region(FamilySpec{d, std::move(x)});
        }, py::arg("d"), py::arg("x"));
  m.def("thresholds", [](std::size_t d, std::size_t n) {
          const auto t = thresholds(d, n);
          py::dict out;
          out["delta"] = t.delta;
          out["peres_axis"] = t.peres_axis();
          out["peres_diagonal"] = t.peres_diagonal();
          out["disorder_axis"] = t.disorder_axis();
          out["disorder_diagonal"] = t.disorder_diagonal();
          out["depletion_vertex"] = t.depletion_vertex();
          return out;
        }, py::arg("d"), py::arg("n"));

  m.def("classify_point", [](std::size_t d, std::vector<double> x, Side side) {
          ClassifyOptions o;
          o.side = side;
          const auto r = classify_point(FamilySpec{d, std::move(x)}, o);
          py::dict out;
          out["in_region"] = r.in_region;
          out["sigma"] = r.sigma;
          out["violated_indices"] = r.violated_indices;
          out["first_violation"] = r.first_violation;
          out["vn_diff"] = r.vn_diff;
          out["tsallis"] = verdict_dict(r.tsallis);
          out["peaked"] = verdict_dict(r.peaked);
          out["sector"] = r.sector;
          return out;
        }, py::arg("d"), py::arg("x"), py::arg("side") = Side::A);
  m.def("threshold", [](std::size_t d, std::size_t n, const std::string& ray, const std::string& criterion,
                        double tol) -> std::optional<double> {
          const auto r = ray == "axis" ? RaySpec::axis(d, n) : RaySpec::diagonal(d, n);
          if (ray != "axis" && ray != "diag") throw ValidationError("ray must be 'diag' or 'axis'");
          return bisect_threshold(r, parse_criterion(criterion), {}, tol).value;
        }, py::arg("d"), py::arg("n"), py::arg("ray") = "diag", py::arg("criterion") = "peres",
        py::arg("tol") = 1e-5);
  m.def("curve", [](std::size_t d, std::vector<double> x, const std::string& axis, double lo, double hi,
                    std::size_t points, bool log_spaced, double alpha, double t) {
          const auto rows = curve_sweep(make_spec(d, std::move(x), false), parse_curve_axis(axis),
                                        {lo, hi, points}, log_spaced, alpha, t);
          std::vector<std::vector<double>> out;
          out.reserve(rows.size());
          for (const auto& r : rows) out.push_back({r.parameter, r.s_rho, r.s_reduced, r.difference, r.normalized});
          return out;
        }, py::arg("d"), py::arg("x"), py::arg("axis"), py::arg("lo"), py::arg("hi"), py::arg("points"),
        py::arg("log_spaced") = false, py::arg("alpha") = 0.28, py::arg("t") = 1e3);
  m.def("area_fractions", [](std::size_t d, std::size_t n, std::size_t steps) {
          const auto grid = n == 2 ? GridSpec::plane(d, steps) : GridSpec::section(d, n, steps);
          return area_summary_json(area_fractions(grid), grid);
        }, py::arg("d"), py::arg("n"), py::arg("steps"), "JSON summary of area fractions");
}
