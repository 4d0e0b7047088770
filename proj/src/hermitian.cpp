#include "majorlens/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace majorlens {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("matrix product: dimension mismatch");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

HermitianOperator::HermitianOperator(ComplexMatrix m, double tol) : m_(std::move(m)) {
  const std::size_t n = m_.dim();
  if (n == 0) throw ValidationError("Hermitian operator must have dimension >= 1");
  double worst = 0.0;
  std::size_t wj = 0, wk = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      const double dev = std::abs(m_(j, k) - std::conj(m_(k, j)));
      if (dev > worst) {
        worst = dev;
        wj = j;
        wk = k;
      }
    }
  if (!(worst <= tol)) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "matrix is not Hermitian: entries (%zu,%zu) and (%zu,%zu) differ from "
                  "conjugate symmetry by %.3e (tolerance %.1e)",
                  wj, wk, wk, wj, worst, tol);
    throw ValidationError(buf);
  }
  for (std::size_t j = 0; j < n; ++j) {
    m_(j, j) = m_(j, j).real();
    for (std::size_t k = j + 1; k < n; ++k) {
      const Complex avg = 0.5 * (m_(j, k) + std::conj(m_(k, j)));
      m_(j, k) = avg;
      m_(k, j) = std::conj(avg);
    }
  }
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  return HermitianOperator(ComplexMatrix::identity(dim));
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return HermitianOperator(std::move(m));
}

double HermitianOperator::trace() const {
  double tr = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) tr += m_(i, i).real();
  return tr;
}

HermitianOperator HermitianOperator::scaled(double factor) const {
  ComplexMatrix m(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) m(i, j) = factor * m_(i, j);
  return HermitianOperator(std::move(m));
}

Spectrum Spectrum::from_values(std::vector<double> values, double degeneracy_tol) {
  Spectrum s;
  std::stable_sort(values.begin(), values.end(), std::greater<>());
  s.values = std::move(values);
  s.cumsums.resize(s.values.size());
  std::partial_sum(s.values.begin(), s.values.end(), s.cumsums.begin());
  s.degeneracy_tol = degeneracy_tol;
  return s;
}

std::size_t Spectrum::multiplicity_of_largest() const {
  if (values.empty()) return 0;
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double v) {
    return values.front() - v <= degeneracy_tol;
  }));
}

std::size_t Spectrum::count_above(double alpha) const {
  return static_cast<std::size_t>(std::count_if(
      values.begin(), values.end(), [&](double v) { return v > alpha + degeneracy_tol; }));
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

// Annihilates a(p,q) with the unitary G = diag(1, e^{-i phi}) R(theta) acting on
// the (p,q) plane, where a(p,q) = |a(p,q)| e^{i phi}. A <- G^dagger A G, V <- V G.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.dim();
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  const Complex phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex ph_conj = std::conj(phase);

  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * ph_conj * akq;
    a(k, q) = s * akp + c * ph_conj * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * ph_conj * vkq;
    v(k, q) = s * vkp + c * ph_conj * vkq;
  }
}

}  // namespace

EigenDecomposition eigen_decompose(const HermitianOperator& op) {
  constexpr int kMaxSweeps = 100;
  const std::size_t n = op.dim();
  ComplexMatrix a = op.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = 1e-14 * frobenius_norm(a);
  double previous = off_diagonal_norm(a);
  for (int sweep = 0; sweep < kMaxSweeps && previous > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > 0.0) rotate(a, v, p, q);
    const double off = off_diagonal_norm(a);
    // Rounding floor reached: further sweeps cannot reduce the mass.
    if (off >= previous) break;
    previous = off;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  std::vector<double> values(n);
  ComplexMatrix vectors(n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) vectors(r, k) = v(r, order[k]);
  }
  return {Spectrum::from_values(std::move(values)), std::move(vectors)};
}

Spectrum eigenvalues(const HermitianOperator& op) { return eigen_decompose(op).spectrum; }

double min_eigenvalue(const HermitianOperator& op) { return eigenvalues(op).smallest(); }

bool is_psd(const HermitianOperator& op, double tol) { return min_eigenvalue(op) >= -tol; }

double reconstruction_residual(const HermitianOperator& op, const EigenDecomposition& eig) {
  const std::size_t n = op.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k)
        acc += eig.vectors(i, k) * eig.spectrum.values[k] * std::conj(eig.vectors(j, k));
      worst = std::max(worst, std::abs(op(i, j) - acc));
    }
  return worst;
}

}  // namespace majorlens
