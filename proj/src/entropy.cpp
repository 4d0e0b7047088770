#include "majorlens/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace majorlens {

EntropicFamily EntropicFamily::tsallis(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("Tsallis entropy requires q > 0");
  if (q == 1.0) return von_neumann();
  return EntropicFamily(Kind::Tsallis, q, 0.0, 0.0);
}

EntropicFamily EntropicFamily::peaked(double alpha, double t) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("peaked entropy requires 0 <= alpha <= 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("peaked entropy requires t > 0");
  return EntropicFamily(Kind::Peaked, 0.0, alpha, t);
}

EntropicFamily EntropicFamily::peaked_limit(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("peaked entropy requires 0 <= alpha <= 1");
  return EntropicFamily(Kind::PeakedLimit, 0.0, alpha, 0.0);
}

std::string EntropicFamily::describe() const {
  char buf[96];
  switch (kind_) {
    case Kind::VonNeumann: return "von-neumann";
    case Kind::Tsallis: std::snprintf(buf, sizeof buf, "tsallis(q=%.10g)", q_); break;
    case Kind::Peaked: std::snprintf(buf, sizeof buf, "peaked(alpha=%.10g,t=%.10g)", alpha_, t_); break;
    case Kind::PeakedLimit: std::snprintf(buf, sizeof buf, "peaked-limit(alpha=%.10g)", alpha_); break;
  }
  return buf;
}

double log_cosh_g(double x, double t) {
  const double u = std::abs(t * x);
  // ln cosh u = log1p(2 sinh^2(u/2)) near zero, |u| + log1p(e^{-2|u|}) - ln 2 elsewhere.
  double lc;
  if (u < 1.0) {
    const double sh = std::sinh(0.5 * u);
    lc = std::log1p(2.0 * sh * sh);
  } else {
    lc = u + std::log1p(std::exp(-2.0 * u)) - std::numbers::ln2;
  }
  return -lc / (2.0 * t);
}

double f_eval(const EntropicFamily& family, double p) {
  constexpr double kSlack = 1e-12;
  if (!(p >= -kSlack && p <= 1.0 + kSlack)) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "f_eval: p = %.6g outside [0, 1]", p);
    throw DomainError(buf);
  }
  p = std::clamp(p, 0.0, 1.0);
  switch (family.kind()) {
    case EntropicFamily::Kind::VonNeumann:
      return p > 0.0 ? -p * std::log(p) : 0.0;
    case EntropicFamily::Kind::Tsallis: {
      if (p == 0.0) return 0.0;
      // (p - p^q)/(q-1) = -p * expm1((q-1) ln p)/(q-1), exact at q -> 1.
      const double qm1 = family.q() - 1.0;
      return -p * std::expm1(qm1 * std::log(p)) / qm1;
    }
    case EntropicFamily::Kind::Peaked: {
      const double a = family.alpha(), t = family.t();
      return log_cosh_g(p - a, t) - (1.0 - p) * log_cosh_g(-a, t) - p * log_cosh_g(1.0 - a, t);
    }
    case EntropicFamily::Kind::PeakedLimit: {
      const double a = family.alpha();
      return p <= a ? p * (1.0 - a) : a * (1.0 - p);
    }
  }
  return 0.0;
}

double entropy(const EntropicFamily& family, const Spectrum& spectrum) {
  if (std::abs(spectrum.total() - 1.0) > 1e-8) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "entropy: spectrum sums to %.12g, expected 1", spectrum.total());
    throw ValidationError(buf);
  }
  double s = 0.0;
  for (double p : spectrum.values) s += f_eval(family, std::clamp(p, 0.0, 1.0));
  return s;
}

ConditionalReport conditional(const EntropicFamily& family, const Spectrum& rho,
                              const Spectrum& reduced, Side side) {
  ConditionalReport r;
  r.family = family;
  r.side = side;
  r.s_rho = entropy(family, rho);
  r.s_reduced = entropy(family, reduced);
  r.difference = r.s_rho - r.s_reduced;

  double n = 1.0;
  if (family.kind() == EntropicFamily::Kind::Tsallis) {
    const double q = family.q();
    auto power_sum = [q](const Spectrum& s) {
      double acc = 0.0;
      for (double p : s.values)
        if (p > 0.0) acc += std::pow(p, q);
      return acc;
    };
    n = power_sum(reduced);
    // Both entropies approach 1/(q-1) at large q; subtracting them loses the p_1^q terms.
    if (q > 2.0) r.difference = (n - power_sum(rho)) / (q - 1.0);
  } else if (family.kind() == EntropicFamily::Kind::Peaked) {
    n = 0.0;
    for (double p : rho.values) n += log_cosh_g(p - family.alpha(), family.t());
    n = std::abs(n);
  }
  // Only reachable for Peaked with every eigenvalue equal to alpha.
  if (!(n > 0.0)) n = 1.0;
  r.normalizer = n;
  r.normalized = r.difference / n;
  return r;
}

ConditionalReport conditional(const EntropicFamily& family, const BipartiteDensity& rho, Side side) {
  return conditional(family, rho.spectrum(), eigenvalues(partial_trace(rho, side)), side);
}

double tsallis_q2_limit_check(const BipartiteDensity& rho, double t_small, double alpha) {
  if (!(t_small > 0.0 && t_small <= 1e-2))
    throw DomainError("tsallis_q2_limit_check: t_small must lie in (0, 1e-2]");
  const auto peaked = EntropicFamily::peaked(alpha, t_small);
  const auto q2 = EntropicFamily::tsallis(2.0);
  const Spectrum reduced = eigenvalues(partial_trace(rho, Side::A));
  double worst = 0.0;
  for (const Spectrum* s : {&rho.spectrum(), &reduced})
    worst = std::max(worst, std::abs(entropy(peaked, *s) / (t_small / 4.0) - entropy(q2, *s)));
  return worst;
}

}  // namespace majorlens
