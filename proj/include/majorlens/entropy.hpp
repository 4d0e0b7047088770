// Trace-form entropies S_f(rho) = Tr f(rho) for concave f with f(0) = f(1) = 0

#pragma once

#include <string>

#include "majorlens/bipartite.hpp"
#include "majorlens/hermitian.hpp"

namespace majorlens {

/// Descriptor of a concave entropic function.
///
///   VonNeumann        f(p) = -p ln p
///   Tsallis{q}        f(p) = (p - p^q) / (q - 1),  q > 0
///   Peaked{alpha, t}  f(p) = g_t(p - alpha) - (1 - p) g_t(-alpha) - p g_t(1 - alpha),
///                     g_t(x) = -ln cosh(t x) / (2t)
///   PeakedLimit{alpha} the t -> infinity limit of Peaked:
///                     p (1 - alpha) for p <= alpha, alpha (1 - p) for p >= alpha
class EntropicFamily {
 public:
  enum class Kind { VonNeumann, Tsallis, Peaked, PeakedLimit };

  static EntropicFamily von_neumann() { return EntropicFamily(Kind::VonNeumann, 1.0, 0.0, 0.0); }
  static EntropicFamily tsallis(double q);
  static EntropicFamily peaked(double alpha, double t);
  static EntropicFamily peaked_limit(double alpha);

  Kind kind() const noexcept { return kind_; }
  double q() const noexcept { return q_; }
  double alpha() const noexcept { return alpha_; }
  double t() const noexcept { return t_; }

  std::string describe() const;

 private:
  EntropicFamily(Kind kind, double q, double alpha, double t)
      : kind_(kind), q_(q), alpha_(alpha), t_(t) {}

  Kind kind_;
  double q_;
  double alpha_;
  double t_;
};

/// g_t(x) = -ln cosh(t x) / (2t), evaluated without overflow or cancellation
/// for any t > 0.
double log_cosh_g(double x, double t);

double f_eval(const EntropicFamily& family, double p);

/// Sum of f over a probability spectrum. Throws ValidationError when the
/// spectrum does not sum to 1 within 1e-8.
double entropy(const EntropicFamily& family, const Spectrum& spectrum);

struct ConditionalReport {
  double s_rho = 0.0;
  double s_reduced = 0.0;
  double difference = 0.0;  ///< s_rho - s_reduced; negative certifies entanglement
  double normalized = 0.0;  ///< difference / normalizer (same sign)
  double normalizer = 1.0;
  EntropicFamily family = EntropicFamily::von_neumann();
  Side side = Side::A;
};

/// Normalizers: Tr rho_side^q for Tsallis, |Tr g_t(rho - alpha)| for Peaked,
/// 1 otherwise.
ConditionalReport conditional(const EntropicFamily& family, const Spectrum& rho,
                              const Spectrum& reduced, Side side = Side::A);
ConditionalReport conditional(const EntropicFamily& family, const BipartiteDensity& rho,
                              Side side = Side::A);

/// Largest deviation, over rho and rho_A, between S_Peaked(alpha, t_small) / (t_small / 4)
/// and the Tsallis q = 2 entropy. Vanishes as O(t_small^2).
double tsallis_q2_limit_check(const BipartiteDensity& rho, double t_small, double alpha = 0.5);

}  // namespace majorlens
