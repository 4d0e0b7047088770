#include "majorlens/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "majorlens/golden.hpp"

namespace majorlens {

MajorizationReport majorization_report(const Spectrum& rho, const Spectrum& reduced, Side side,
                                       double tol) {
  MajorizationReport r;
  r.side = side;
  r.tol = tol;
  const std::size_t k = std::min(reduced.size(), rho.size());
  r.cumsum_rho.assign(rho.cumsums.begin(), rho.cumsums.begin() + static_cast<std::ptrdiff_t>(k));
  r.cumsum_reduced.assign(reduced.cumsums.begin(),
                          reduced.cumsums.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t i = 0; i < k; ++i)
    if (r.cumsum_rho[i] > r.cumsum_reduced[i] + tol) r.violated_indices.push_back(i + 1);
  if (!r.violated_indices.empty()) r.first_violation = r.violated_indices.front();
  return r;
}

std::pair<MajorizationReport, MajorizationReport> disorder_check(const BipartiteDensity& rho,
                                                                 double tol) {
  return {majorization_report(rho.spectrum(), eigenvalues(partial_trace(rho, Side::A)), Side::A, tol),
          majorization_report(rho.spectrum(), eigenvalues(partial_trace(rho, Side::B)), Side::B, tol)};
}

double peres_check(const BipartiteDensity& rho) { return min_eigenvalue(partial_transpose(rho)); }

DetectionVerdict tsallis_sweep(const Spectrum& rho, const Spectrum& reduced, const QGrid& grid) {
  if (!(grid.qmin > 0.0 && grid.qmax > grid.qmin) || grid.points < 2)
    throw DomainError("tsallis_sweep: need 0 < qmin < qmax and at least 2 grid points");

  auto diff_at = [&](double ln_q) {
    const auto family = EntropicFamily::tsallis(std::exp(ln_q));
    return entropy(family, rho) - entropy(family, reduced);
  };

  const double lo = std::log(grid.qmin), hi = std::log(grid.qmax);
  const std::size_t n = grid.points;
  std::vector<double> ln_q(n), values(n);
  for (std::size_t i = 0; i < n; ++i) {
    ln_q[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    values[i] = diff_at(ln_q[i]);
  }

  double best_ln_q = ln_q[0];
  double best = values[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] < best) {
      best = values[i];
      best_ln_q = ln_q[i];
    }
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(values[i] <= values[i - 1] && values[i] <= values[i + 1])) continue;
    if (values[i] == values[i - 1] && values[i] == values[i + 1]) continue;  // flat (underflow)
    const auto refined = golden_section_minimize(diff_at, ln_q[i - 1], ln_q[i + 1], grid.refine_tol);
    if (refined.value < best) {
      best = refined.value;
      best_ln_q = refined.x;
    }
  }

  DetectionVerdict v;
  v.margin = best;
  v.at_margin.q = std::exp(best_ln_q);
  if (best < -kDetectionThreshold) {
    v.detected = true;
    v.witness = v.at_margin;
  }
  return v;
}

DetectionVerdict tsallis_sweep(const BipartiteDensity& rho, Side side, const QGrid& grid) {
  return tsallis_sweep(rho.spectrum(), eigenvalues(partial_trace(rho, side)), grid);
}

DetectionVerdict peaked_search(const Spectrum& rho, const Spectrum& reduced,
                               const std::vector<double>& alphas, const std::vector<double>& ts) {
  DetectionVerdict v;
  v.margin = std::numeric_limits<double>::infinity();
  for (double alpha : alphas) {
    for (double t : ts) {
      const auto family = EntropicFamily::peaked(alpha, t);
      const double diff = entropy(family, rho) - entropy(family, reduced);
      if (diff < v.margin) {
        v.margin = diff;
        v.at_margin = WitnessParams{std::nullopt, alpha, t};
      }
      if (!v.detected && diff < -kDetectionThreshold) {
        v.detected = true;
        v.witness = WitnessParams{std::nullopt, alpha, t};
      }
    }
  }
  return v;
}

DetectionVerdict peaked_search(const BipartiteDensity& rho, Side side,
                               const std::vector<double>& alphas, const std::vector<double>& ts) {
  return peaked_search(rho.spectrum(), eigenvalues(partial_trace(rho, side)), alphas, ts);
}

double recommend_alpha(const Spectrum& reduced, std::size_t j) {
  if (j < 1 || j > reduced.size()) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "recommend_alpha: index %zu outside 1..%zu", j, reduced.size());
    throw DomainError(buf);
  }
  return reduced.values[j - 1];
}

double recommend_alpha(const BipartiteDensity& rho, Side side, std::size_t j) {
  return recommend_alpha(eigenvalues(partial_trace(rho, side)), j);
}

std::vector<double> recommended_alphas(const Spectrum& reduced, double jitter) {
  std::vector<double> out;
  for (double p : reduced.values)
    for (double a : {p - jitter, p, p + jitter})
      if (a > 0.0 && a < 1.0) out.push_back(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace majorlens
