// Per-point classification, grid scans, threshold bisection, curves, area fractions

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "majorlens/criteria.hpp"
#include "majorlens/families.hpp"

namespace majorlens {

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t steps = 2;
};

/// A 1- or 2-parameter slice through the family parameters. Component i of x
/// follows axis component_axis[i], or is held at fixed[i] when that is -1.
struct GridSpec {
  std::size_t d = 3;
  Exchange exchange = Exchange::Antisymmetric;
  std::vector<int> component_axis;
  std::vector<double> fixed;
  std::vector<AxisRange> axes;

  /// n = 2 plane (x_1, x_2) over the bounding box of the triangle R.
  static GridSpec plane(std::size_t d, std::size_t steps);
  /// x_1 = ... = x_{n-1} on axis 0, x_n on axis 1, over the bounding box of R's section.
  static GridSpec section(std::size_t d, std::size_t n, std::size_t steps);

  std::size_t n() const noexcept { return component_axis.size(); }
  std::size_t size() const;
  void validate() const;

  FamilySpec point(std::span<const double> coords) const;
  /// Row-major node coordinates including both end points (axis 0 outermost).
  std::vector<double> node(std::size_t flat_index) const;
  /// Cell-centre coordinates, lo + (k + 1/2) (hi - lo) / steps.
  std::vector<double> cell_center(std::size_t flat_index) const;
};

struct ClassifyOptions {
  Side side = Side::A;
  QGrid q_grid;
  /// Empty selects recommended_alphas() of the point's reduced spectrum.
  std::vector<double> alphas;
  std::vector<double> ts = default_t_schedule();
  double tol = 1e-10;
  bool run_von_neumann = true;
  bool run_tsallis = true;
  bool run_peaked = true;
  /// 0 = hardware concurrency capped by MAJORLENS_THREADS.
  unsigned threads = 0;
};

struct ScanRecord {
  std::vector<double> coords;
  std::vector<double> x;
  bool in_region = false;
  double sigma = 0.0;
  std::vector<std::size_t> violated_indices;
  std::optional<std::size_t> first_violation;
  double vn_diff = 0.0;
  DetectionVerdict tsallis;
  DetectionVerdict peaked;
  std::string sector;
};

/// "outside", "separable" (sigma >= 0), "entangled" (sigma < 0, no majorization
/// violation) or "disorder:i+j+..." listing the violated indices.
std::string sector_label(bool in_region, double sigma, const std::vector<std::size_t>& violated);

ScanRecord classify_point(const FamilySpec& spec, const ClassifyOptions& options = {});

/// Deterministic row-major records; independent of the thread count.
std::vector<ScanRecord> grid_scan(const GridSpec& grid, const ClassifyOptions& options = {});

enum class Criterion { Peres, Disorder, VonNeumann, Tsallis, Peaked };

Criterion parse_criterion(const std::string& name);
const char* to_string(Criterion c) noexcept;

/// True when the criterion certifies entanglement at spec (spec must lie in R).
bool criterion_fires(const FamilySpec& spec, Criterion criterion, const ClassifyOptions& options = {});

/// x(s) = base + s * direction for s in [s_lo, s_hi].
struct RaySpec {
  std::size_t d = 3;
  Exchange exchange = Exchange::Antisymmetric;
  std::vector<double> base;
  std::vector<double> direction;
  double s_lo = 0.0;
  double s_hi = 1.0;

  /// x_i = s for all i on [0, s_max], s_max where the ray leaves R.
  static RaySpec diagonal(std::size_t d, std::size_t n);
  /// x_1 = s, others zero, on [0, 1].
  static RaySpec axis(std::size_t d, std::size_t n);

  FamilySpec at(double s) const;
};

struct ThresholdResult {
  std::optional<double> value;  ///< absent: the criterion never flips on the ray
  bool fires_above = true;      ///< criterion holds for s > value
};

/// Pre-scans the ray at `prescan` points inside R, refuses (DomainError) if the
/// predicate flips more than once, then bisects the single flip to `tol`.
ThresholdResult bisect_threshold(const RaySpec& ray, Criterion criterion,
                                 const ClassifyOptions& options = {}, double tol = 1e-5,
                                 std::size_t prescan = 64);

enum class CurveAxis { Q, T, Alpha };

CurveAxis parse_curve_axis(const std::string& name);

struct CurveRow {
  double parameter = 0.0;
  double s_rho = 0.0;
  double s_reduced = 0.0;
  double difference = 0.0;
  double normalized = 0.0;
};

/// Conditional entropic difference as a function of q (Tsallis), t (Peaked at
/// fixed alpha) or alpha (Peaked at fixed t).
std::vector<CurveRow> curve_sweep(const FamilySpec& spec, CurveAxis axis, AxisRange range,
                                  bool log_spaced, double fixed_alpha = 0.28,
                                  double fixed_t = 1e3, Side side = Side::A);

struct Fraction {
  std::size_t count = 0;
  std::size_t total = 0;
  double value = 0.0;
  double std_error = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
};

Fraction make_fraction(std::size_t count, std::size_t total);

struct AreaSummary {
  std::size_t cells = 0;
  std::size_t in_region = 0;
  std::size_t entangled = 0;
  std::size_t disorder = 0;
  std::map<std::size_t, std::size_t> first_violation_counts;
  Fraction entangled_of_region;
  Fraction separable_of_region;
  Fraction disorder_of_entangled;
  Fraction first_index1_of_entangled;
  Fraction first_index1_of_region;
};

/// Cell-centre counting over a 2-D grid using sigma and the majorization test.
AreaSummary area_fractions(const GridSpec& grid, double tol = 1e-10, unsigned threads = 0);

/// Worker count: explicit request, else hardware concurrency, capped by MAJORLENS_THREADS.
unsigned resolve_threads(unsigned requested);

}  // namespace majorlens
