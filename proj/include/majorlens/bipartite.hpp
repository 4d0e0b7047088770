// Two-factor structure: densities, partial trace, partial transpose
//
// Basis convention: |i>_A |j>_B is row/column i * d_B + j.

#pragma once

#include <cstddef>

#include "majorlens/hermitian.hpp"

namespace majorlens {

struct Dims {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t total() const noexcept { return a * b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Which subsystem is kept by a partial trace (Side::A gives rho_A = Tr_B rho).
enum class Side { A, B };

const char* to_string(Side side) noexcept;

/// Unit-trace, positive semidefinite operator on C^{d_A} (x) C^{d_B}.
class BipartiteDensity {
 public:
  static constexpr double kTraceTolerance = 1e-10;

  BipartiteDensity(Dims dims, HermitianOperator op, double psd_tol = 1e-10);

  const Dims& dims() const noexcept { return dims_; }
  const HermitianOperator& op() const noexcept { return op_; }
  double psd_tol() const noexcept { return psd_tol_; }

  /// Spectrum of the full operator, computed at construction.
  const Spectrum& spectrum() const { return spectrum_; }

 private:
  Dims dims_;
  HermitianOperator op_;
  double psd_tol_;
  Spectrum spectrum_;
};

HermitianOperator partial_trace(const BipartiteDensity& rho, Side kept);
HermitianOperator partial_trace(const HermitianOperator& op, Dims dims, Side kept);

/// Transposes the B factor: (rho^{T_B})_{(i a),(j b)} = rho_{(i b),(j a)}.
HermitianOperator partial_transpose(const BipartiteDensity& rho);
HermitianOperator partial_transpose(const HermitianOperator& op, Dims dims);

/// Kronecker product a (x) b.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// Rank-one projector |psi><psi| for a normalized state vector.
HermitianOperator projector(std::span<const Complex> psi);

}  // namespace majorlens
