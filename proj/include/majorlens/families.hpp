// The two-qudit families
//
//   rho = sum_{i=1..n} x_i |0i><0i| + y I_A (x) I_B,   y = (1 - sum x_i) / d^2,
//
// where |0i> = (|0i> -+ |i0>)/sqrt(2) is the antisymmetric (or symmetric)
// combination and 1 <= n <= d - 1. Closed-form spectra, partial-transpose
// minimum, separability witness and detection thresholds live here.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "majorlens/bipartite.hpp"
#include "majorlens/hermitian.hpp"

namespace majorlens {

enum class Exchange { Antisymmetric, Symmetric };

/// Raised when family parameters fall outside the positivity region R.
class RegionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct FamilySpec {
  std::size_t d = 2;
  std::vector<double> x;
  Exchange exchange = Exchange::Antisymmetric;

  std::size_t n() const noexcept { return x.size(); }
  double y() const;
  double norm() const;  ///< |x|
};

inline constexpr double kRegionTolerance = 1e-12;

/// Throws RegionError naming the first violated constraint (y >= 0, x_i >= -y),
/// or ValidationError for a malformed spec (d < 2, n outside 1..d-1).
void validate_region(const FamilySpec& spec, double tol = kRegionTolerance);
bool in_region(const FamilySpec& spec, double tol = kRegionTolerance);

BipartiteDensity build(const FamilySpec& spec);

/// x_i + y (i = 1..n) and y with multiplicity d^2 - n.
Spectrum analytic_spectrum(const FamilySpec& spec);
/// Spectrum of rho_A (equal to that of rho_B):
/// sum(x)/2 + y d, x_i/2 + y d (i = 1..n), y d with multiplicity d - n - 1.
Spectrum analytic_reduced(const FamilySpec& spec);

/// Minimum eigenvalue of the partial transpose, y - |x|/2.
double sigma_min_pt(const FamilySpec& spec);

/// Convex weights q_i for the decomposition rho = sum_i rho_i + y (I - sum_i Q_i)
/// with each two-qubit block rho_i separable iff x_i^2 <= 4 q_i y^2.
struct SeparabilityWitness {
  std::vector<double> weights;
  std::vector<double> slack;  ///< 4 q_i y^2 - x_i^2, all >= 0 (up to roundoff)
};

/// Present iff sigma_min_pt(spec) >= 0.
std::optional<SeparabilityWitness> separability_witness(const FamilySpec& spec);

/// Closed-form thresholds for given (d, n).
struct ThresholdSet {
  std::size_t d = 2;
  std::size_t n = 1;
  double delta = 0.0;  ///< d^2 / (2 (d - 1))

  /// Peres onset for |x| along a direction at angle gamma to (1, ..., 1).
  double peres_norm(double gamma) const;
  /// Peres onset of x_1 with the other components zero.
  double peres_axis() const;
  /// Peres onset of the common value x on the diagonal x_i = x.
  double peres_diagonal() const;

  /// n = 2: first inequality violated for x_1 above this (x_1 >= x_2).
  double disorder_i1(double x2) const;
  /// Onset on the x_1 axis, 1 / (1 + delta).
  double disorder_axis() const;
  /// n = 2: second inequality violated for x_1 above this (x_1 >= x_2 >= 0).
  double disorder_i2(double x2) const;
  /// Onset of the common value x on the diagonal (only the n-th inequality fails).
  double disorder_diagonal() const;

  /// Vertex of R in the all-negative direction: x_i = -1 / (d^2 - n).
  double depletion_vertex() const;
  std::vector<std::vector<double>> region_vertices() const;
};

ThresholdSet thresholds(std::size_t d, std::size_t n);

struct PredictedViolations {
  std::vector<std::size_t> indices;  ///< 1-based, ascending
  bool analytic = true;              ///< false when the numeric fallback was used
};

/// Violated majorization indices from the closed forms (nonnegative x, and
/// the single-negative-component n = 2 case); otherwise compares the analytic
/// spectra numerically.
PredictedViolations violation_predictor(const FamilySpec& spec, double tol = 1e-10);

/// Parses "d=3 x=0.4,0.4" style tokens.
FamilySpec parse_family(const std::vector<std::string>& tokens, bool symmetric = false);
std::string describe(const FamilySpec& spec);

}  // namespace majorlens
