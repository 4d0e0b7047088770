// Entanglement criteria: disorder (majorization), Peres, entropic detectors

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "majorlens/bipartite.hpp"
#include "majorlens/entropy.hpp"
#include "majorlens/hermitian.hpp"

namespace majorlens {

/// Differences below this certify a violation of S_f(rho) >= S_f(rho_side).
inline constexpr double kDetectionThreshold = 1e-12;

/// Compares the leading partial sums of rho's spectrum with those of a reduced
/// density. Indices are 1-based.
struct MajorizationReport {
  Side side = Side::A;
  std::vector<double> cumsum_rho;
  std::vector<double> cumsum_reduced;
  std::vector<std::size_t> violated_indices;
  std::optional<std::size_t> first_violation;
  double tol = 1e-10;

  bool violated() const noexcept { return !violated_indices.empty(); }
};

MajorizationReport majorization_report(const Spectrum& rho, const Spectrum& reduced, Side side,
                                       double tol = 1e-10);

/// Reports for rho vs rho_A and rho vs rho_B. Any violation certifies entanglement.
std::pair<MajorizationReport, MajorizationReport> disorder_check(const BipartiteDensity& rho,
                                                                 double tol = 1e-10);

/// Minimum eigenvalue of the partial transpose; negative certifies entanglement.
double peres_check(const BipartiteDensity& rho);

struct QGrid {
  double qmin = 1e-2;
  double qmax = 1e3;
  std::size_t points = 96;
  double refine_tol = 1e-6;  ///< bracket width in ln q
};

struct WitnessParams {
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<double> t;
};

/// Result of a bounded parameter search. detected means some searched
/// parameter gave a difference below -kDetectionThreshold; it says nothing
/// about parameters outside the searched set.
struct DetectionVerdict {
  bool detected = false;
  std::optional<WitnessParams> witness;
  double margin = 0.0;       ///< smallest difference found
  WitnessParams at_margin;   ///< parameters attaining margin
};

/// Tsallis conditional difference over a log-spaced q grid. Every discrete
/// local minimum of the sampled curve is refined by golden section in ln q;
/// the deepest refined value is reported.
DetectionVerdict tsallis_sweep(const Spectrum& rho, const Spectrum& reduced,
                               const QGrid& grid = {});
DetectionVerdict tsallis_sweep(const BipartiteDensity& rho, Side side, const QGrid& grid = {});

inline const std::vector<double>& default_t_schedule() {
  static const std::vector<double> ts{1e1, 1e2, 1e3, 1e4};
  return ts;
}

/// Peaked conditional difference over the (alpha, t) lattice, alphas outer.
/// The witness is the first strictly negative cell in that order.
DetectionVerdict peaked_search(const Spectrum& rho, const Spectrum& reduced,
                               const std::vector<double>& alphas,
                               const std::vector<double>& ts = default_t_schedule());
DetectionVerdict peaked_search(const BipartiteDensity& rho, Side side,
                               const std::vector<double>& alphas,
                               const std::vector<double>& ts = default_t_schedule());

/// p_j of the reduced spectrum (1-based j).
double recommend_alpha(const Spectrum& reduced, std::size_t j);
double recommend_alpha(const BipartiteDensity& rho, Side side, std::size_t j);

/// p_j^side and p_j^side +- jitter for every j, clipped to (0, 1), sorted, unique.
std::vector<double> recommended_alphas(const Spectrum& reduced, double jitter = 1e-3);

}  // namespace majorlens
