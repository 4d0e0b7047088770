#include "majorlens/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace majorlens {

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MAJORLENS_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

namespace {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
// written by exactly one worker, so results stored by index are deterministic.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

double lerp_node(const AxisRange& a, std::size_t k) {
  return a.lo + (a.hi - a.lo) * static_cast<double>(k) / static_cast<double>(a.steps - 1);
}

double lerp_center(const AxisRange& a, std::size_t k) {
  return a.lo + (a.hi - a.lo) * (static_cast<double>(k) + 0.5) / static_cast<double>(a.steps);
}

std::vector<std::size_t> unflatten(const GridSpec& g, std::size_t flat) {
  std::vector<std::size_t> idx(g.axes.size());
  for (std::size_t a = g.axes.size(); a-- > 0;) {
    idx[a] = flat % g.axes[a].steps;
    flat /= g.axes[a].steps;
  }
  return idx;
}

}  // namespace

GridSpec GridSpec::plane(std::size_t d, std::size_t steps) {
  GridSpec g;
  g.d = d;
  g.component_axis = {0, 1};
  g.fixed = {0.0, 0.0};
  const double lo = thresholds(d, 2).depletion_vertex();
  g.axes = {{lo, 1.0, steps}, {lo, 1.0, steps}};
  return g;
}

GridSpec GridSpec::section(std::size_t d, std::size_t n, std::size_t steps) {
  if (n < 2) throw DomainError("section grid needs n >= 2");
  GridSpec g;
  g.d = d;
  g.component_axis.assign(n, 0);
  g.component_axis.back() = 1;
  g.fixed.assign(n, 0.0);
  const double lo = thresholds(d, n).depletion_vertex();
  g.axes = {{lo, 1.0 / static_cast<double>(n - 1), steps}, {lo, 1.0, steps}};
  return g;
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (const auto& a : axes) s *= a.steps;
  return s;
}

void GridSpec::validate() const {
  if (axes.empty() || axes.size() > 2) throw ValidationError("grid needs 1 or 2 axes");
  for (const auto& a : axes) {
    if (a.steps < 2) throw ValidationError("grid axes need at least 2 steps");
    if (!(a.hi > a.lo)) throw ValidationError("grid axis range must have hi > lo");
  }
  if (component_axis.empty() || component_axis.size() != fixed.size())
    throw ValidationError("grid component map and fixed values must have equal, nonzero length");
  for (int c : component_axis)
    if (c < -1 || c >= static_cast<int>(axes.size()))
      throw ValidationError("grid component map refers to a missing axis");
  if (d < 2 || n() > d - 1) throw ValidationError("grid needs d >= 2 and 1 <= n <= d-1");
}

FamilySpec GridSpec::point(std::span<const double> coords) const {
  FamilySpec spec;
  spec.d = d;
  spec.exchange = exchange;
  spec.x.resize(n());
  for (std::size_t i = 0; i < n(); ++i)
    spec.x[i] = component_axis[i] < 0 ? fixed[i] : coords[static_cast<std::size_t>(component_axis[i])];
  return spec;
}

std::vector<double> GridSpec::node(std::size_t flat_index) const {
  const auto idx = unflatten(*this, flat_index);
  std::vector<double> c(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) c[a] = lerp_node(axes[a], idx[a]);
  return c;
}

std::vector<double> GridSpec::cell_center(std::size_t flat_index) const {
  const auto idx = unflatten(*this, flat_index);
  std::vector<double> c(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) c[a] = lerp_center(axes[a], idx[a]);
  return c;
}

std::string sector_label(bool in_region, double sigma, const std::vector<std::size_t>& violated) {
  if (!in_region) return "outside";
  if (sigma >= 0.0) return "separable";
  if (violated.empty()) return "entangled";
  std::string s = "disorder:";
  for (std::size_t k = 0; k < violated.size(); ++k) {
    if (k) s += '+';
    s += std::to_string(violated[k]);
  }
  return s;
}

ScanRecord classify_point(const FamilySpec& spec, const ClassifyOptions& options) {
  ScanRecord r;
  r.x = spec.x;
  r.in_region = in_region(spec);
  if (!r.in_region) {
    r.sector = sector_label(false, 0.0, {});
    return r;
  }
  const Spectrum rho = analytic_spectrum(spec);
  const Spectrum reduced = analytic_reduced(spec);
  r.sigma = sigma_min_pt(spec);

  const auto report = majorization_report(rho, reduced, options.side, options.tol);
  r.violated_indices = report.violated_indices;
  r.first_violation = report.first_violation;

  if (options.run_von_neumann)
    r.vn_diff = conditional(EntropicFamily::von_neumann(), rho, reduced, options.side).difference;
  if (options.run_tsallis) r.tsallis = tsallis_sweep(rho, reduced, options.q_grid);
  if (options.run_peaked) {
    const auto alphas = options.alphas.empty() ? recommended_alphas(reduced) : options.alphas;
    r.peaked = peaked_search(rho, reduced, alphas, options.ts);
  }
  r.sector = sector_label(true, r.sigma, r.violated_indices);
  return r;
}

std::vector<ScanRecord> grid_scan(const GridSpec& grid, const ClassifyOptions& options) {
  grid.validate();
  std::vector<ScanRecord> out(grid.size());
  parallel_for(out.size(), resolve_threads(options.threads), [&](std::size_t i) {
    const auto coords = grid.node(i);
    out[i] = classify_point(grid.point(coords), options);
    out[i].coords = coords;
  });
  return out;
}

Criterion parse_criterion(const std::string& name) {
  if (name == "peres" || name == "sigma") return Criterion::Peres;
  if (name == "disorder" || name == "majorization") return Criterion::Disorder;
  if (name == "vn" || name == "von-neumann") return Criterion::VonNeumann;
  if (name == "tsallis") return Criterion::Tsallis;
  if (name == "peaked") return Criterion::Peaked;
  throw ValidationError("unknown criterion '" + name + "' (peres|disorder|vn|tsallis|peaked)");
}

const char* to_string(Criterion c) noexcept {
  switch (c) {
    case Criterion::Peres: return "peres";
    case Criterion::Disorder: return "disorder";
    case Criterion::VonNeumann: return "vn";
    case Criterion::Tsallis: return "tsallis";
    case Criterion::Peaked: return "peaked";
  }
  return "?";
}

bool criterion_fires(const FamilySpec& spec, Criterion criterion, const ClassifyOptions& options) {
  switch (criterion) {
    case Criterion::Peres:
      return sigma_min_pt(spec) < 0.0;
    case Criterion::Disorder:
      return majorization_report(analytic_spectrum(spec), analytic_reduced(spec), options.side,
                                 options.tol)
          .violated();
    case Criterion::VonNeumann:
      return conditional(EntropicFamily::von_neumann(), analytic_spectrum(spec),
                         analytic_reduced(spec), options.side)
                 .difference < -kDetectionThreshold;
    case Criterion::Tsallis:
      return tsallis_sweep(analytic_spectrum(spec), analytic_reduced(spec), options.q_grid).detected;
    case Criterion::Peaked: {
      const Spectrum reduced = analytic_reduced(spec);
      const auto alphas = options.alphas.empty() ? recommended_alphas(reduced) : options.alphas;
      return peaked_search(analytic_spectrum(spec), reduced, alphas, options.ts).detected;
    }
  }
  return false;
}

RaySpec RaySpec::diagonal(std::size_t d, std::size_t n) {
  RaySpec r;
  r.d = d;
  r.base.assign(n, 0.0);
  r.direction.assign(n, 1.0);
  r.s_hi = 1.0 / static_cast<double>(n);
  return r;
}

RaySpec RaySpec::axis(std::size_t d, std::size_t n) {
  RaySpec r;
  r.d = d;
  r.base.assign(n, 0.0);
  r.direction.assign(n, 0.0);
  r.direction[0] = 1.0;
  return r;
}

FamilySpec RaySpec::at(double s) const {
  FamilySpec spec;
  spec.d = d;
  spec.exchange = exchange;
  spec.x.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) spec.x[i] = base[i] + s * direction[i];
  return spec;
}

ThresholdResult bisect_threshold(const RaySpec& ray, Criterion criterion,
                                 const ClassifyOptions& options, double tol, std::size_t prescan) {
  if (ray.base.empty() || ray.base.size() != ray.direction.size())
    throw ValidationError("ray base and direction must have equal, nonzero length");
  if (!(ray.s_hi > ray.s_lo) || prescan < 2 || !(tol > 0.0))
    throw ValidationError("ray needs s_hi > s_lo, tol > 0 and at least 2 pre-scan points");

  std::vector<double> s_in;
  std::vector<bool> fires;
  for (std::size_t k = 0; k < prescan; ++k) {
    const double s =
        ray.s_lo + (ray.s_hi - ray.s_lo) * static_cast<double>(k) / static_cast<double>(prescan - 1);
    const FamilySpec spec = ray.at(s);
    if (!in_region(spec)) continue;
    s_in.push_back(s);
    fires.push_back(criterion_fires(spec, criterion, options));
  }
  std::size_t flips = 0, flip_at = 0;
  for (std::size_t k = 1; k < fires.size(); ++k)
    if (fires[k] != fires[k - 1]) {
      ++flips;
      flip_at = k;
    }
  if (flips > 1) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "criterion '%s' is not monotone along the ray: %zu sign changes in the pre-scan",
                  to_string(criterion), flips);
    throw DomainError(buf);
  }
  ThresholdResult result;
  if (flips == 0) return result;

  double lo = s_in[flip_at - 1], hi = s_in[flip_at];
  const bool fires_lo = fires[flip_at - 1];
  result.fires_above = !fires_lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (criterion_fires(ray.at(mid), criterion, options) == fires_lo) lo = mid;
    else hi = mid;
  }
  result.value = 0.5 * (lo + hi);
  return result;
}

CurveAxis parse_curve_axis(const std::string& name) {
  if (name == "q") return CurveAxis::Q;
  if (name == "t") return CurveAxis::T;
  if (name == "alpha") return CurveAxis::Alpha;
  throw ValidationError("unknown curve axis '" + name + "' (q|t|alpha)");
}

std::vector<CurveRow> curve_sweep(const FamilySpec& spec, CurveAxis axis, AxisRange range,
                                  bool log_spaced, double fixed_alpha, double fixed_t, Side side) {
  if (range.steps < 2 || !(range.hi > range.lo)) throw ValidationError("curve range needs hi > lo and >= 2 points");
  if (log_spaced && !(range.lo > 0.0)) throw ValidationError("log-spaced curve needs a positive lower bound");
  const Spectrum rho = analytic_spectrum(spec);
  const Spectrum reduced = analytic_reduced(spec);
  std::vector<CurveRow> rows;
  rows.reserve(range.steps);
  for (std::size_t k = 0; k < range.steps; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(range.steps - 1);
    const double p = log_spaced ? std::exp(std::log(range.lo) + u * (std::log(range.hi) - std::log(range.lo)))
                                : range.lo + u * (range.hi - range.lo);
    EntropicFamily family = EntropicFamily::von_neumann();
    switch (axis) {
      case CurveAxis::Q: family = EntropicFamily::tsallis(p); break;
      case CurveAxis::T: family = EntropicFamily::peaked(fixed_alpha, p); break;
      case CurveAxis::Alpha: family = EntropicFamily::peaked(p, fixed_t); break;
    }
    const auto rep = conditional(family, rho, reduced, side);
    rows.push_back({p, rep.s_rho, rep.s_reduced, rep.difference, rep.normalized});
  }
  return rows;
}

Fraction make_fraction(std::size_t count, std::size_t total) {
  Fraction f;
  f.count = count;
  f.total = total;
  if (total == 0) return f;
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(count) / n;
  f.value = p;
  f.std_error = std::sqrt(p * (1.0 - p) / n);
  constexpr double z = 1.959963984540054;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  f.wilson_lo = centre - half;
  f.wilson_hi = centre + half;
  return f;
}

AreaSummary area_fractions(const GridSpec& grid, double tol, unsigned threads) {
  grid.validate();
  if (grid.axes.size() != 2) throw ValidationError("area fractions need a 2-D grid");
  struct Cell {
    bool in_region = false;
    bool entangled = false;
    std::size_t first = 0;
  };
  std::vector<Cell> cells(grid.size());
  parallel_for(cells.size(), resolve_threads(threads), [&](std::size_t i) {
    const FamilySpec spec = grid.point(grid.cell_center(i));
    if (!in_region(spec)) return;
    Cell& c = cells[i];
    c.in_region = true;
    c.entangled = sigma_min_pt(spec) < 0.0;
    if (c.entangled) {
      const auto rep = majorization_report(analytic_spectrum(spec), analytic_reduced(spec), Side::A, tol);
      c.first = rep.first_violation.value_or(0);
    }
  });

  AreaSummary s;
  s.cells = cells.size();
  for (const Cell& c : cells) {
    if (!c.in_region) continue;
    ++s.in_region;
    if (!c.entangled) continue;
    ++s.entangled;
    if (c.first) {
      ++s.disorder;
      ++s.first_violation_counts[c.first];
    }
  }
  const std::size_t first1 = s.first_violation_counts.count(1) ? s.first_violation_counts.at(1) : 0;
  s.entangled_of_region = make_fraction(s.entangled, s.in_region);
  s.separable_of_region = make_fraction(s.in_region - s.entangled, s.in_region);
  s.disorder_of_entangled = make_fraction(s.disorder, s.entangled);
  s.first_index1_of_entangled = make_fraction(first1, s.entangled);
  s.first_index1_of_region = make_fraction(first1, s.in_region);
  return s;
}

}  // namespace majorlens
