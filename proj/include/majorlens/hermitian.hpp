// Dense Hermitian operators at small dimension and their spectra

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace majorlens {

using Complex = std::complex<double>;

/// Raised when an input fails a structural or numerical validity check
/// (non-Hermitian entries, wrong trace, dimension mismatch, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Square complex matrix, row-major. Mutable scratch type used to assemble
/// operators before they are validated into a HermitianOperator.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Immutable Hermitian operator. Construction checks that
/// |A(j,k) - conj(A(k,j))| <= tol for every pair and stores the exactly
/// Hermitian part (A + A^dagger)/2.
class HermitianOperator {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  explicit HermitianOperator(ComplexMatrix m, double tol = kDefaultTolerance);

  static HermitianOperator identity(std::size_t dim);
  static HermitianOperator diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return m_.dim(); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  double trace() const;

  HermitianOperator scaled(double factor) const;

 private:
  ComplexMatrix m_;
};

/// Eigenvalues sorted in decreasing order together with their partial sums.
struct Spectrum {
  std::vector<double> values;
  std::vector<double> cumsums;
  double degeneracy_tol = 1e-9;

  /// Sorts descending (stable: ties keep their input order) and fills cumsums.
  static Spectrum from_values(std::vector<double> values, double degeneracy_tol = 1e-9);

  std::size_t size() const noexcept { return values.size(); }
  double total() const { return cumsums.empty() ? 0.0 : cumsums.back(); }
  double largest() const { return values.front(); }
  double smallest() const { return values.back(); }

  /// Number of eigenvalues within degeneracy_tol of the largest one.
  std::size_t multiplicity_of_largest() const;
  /// Number of eigenvalues strictly greater than alpha + degeneracy_tol.
  std::size_t count_above(double alpha) const;
};

struct EigenDecomposition {
  Spectrum spectrum;
  /// Column k is the unit eigenvector of spectrum.values[k].
  ComplexMatrix vectors;
};

/// Cyclic complex Jacobi. Iterates until the off-diagonal Frobenius mass
/// falls below 1e-14 * ||A||_F.
EigenDecomposition eigen_decompose(const HermitianOperator& op);

Spectrum eigenvalues(const HermitianOperator& op);

double min_eigenvalue(const HermitianOperator& op);

bool is_psd(const HermitianOperator& op, double tol = 1e-10);

/// max_jk |A(j,k) - (V diag(values) V^dagger)(j,k)|
double reconstruction_residual(const HermitianOperator& op, const EigenDecomposition& eig);

}  // namespace majorlens
