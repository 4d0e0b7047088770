#include "majorlens/bipartite.hpp"

#include <cmath>
#include <cstdio>

namespace majorlens {

const char* to_string(Side side) noexcept { return side == Side::A ? "A" : "B"; }

namespace {

void check_dims(const HermitianOperator& op, Dims dims) {
  if (dims.a == 0 || dims.b == 0 || op.dim() != dims.total()) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "dimension mismatch: dims (%zu, %zu) but operator is %zux%zu",
                  dims.a, dims.b, op.dim(), op.dim());
    throw ValidationError(buf);
  }
}

}  // namespace

BipartiteDensity::BipartiteDensity(Dims dims, HermitianOperator op, double psd_tol)
    : dims_(dims), op_(std::move(op)), psd_tol_(psd_tol) {
  check_dims(op_, dims_);
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "density trace is %.12g, expected 1", tr);
    throw ValidationError(buf);
  }
  spectrum_ = eigenvalues(op_);
  if (spectrum_.smallest() < -psd_tol_) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "density is not positive semidefinite: min eigenvalue %.6e",
                  spectrum_.smallest());
    throw ValidationError(buf);
  }
}

HermitianOperator partial_trace(const HermitianOperator& op, Dims dims, Side kept) {
  check_dims(op, dims);
  const std::size_t da = dims.a, db = dims.b;
  if (kept == Side::A) {
    ComplexMatrix out(da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t b = 0; b < db; ++b) out(i, j) += op(i * db + b, j * db + b);
    return HermitianOperator(std::move(out));
  }
  ComplexMatrix out(db);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t a = 0; a < da; ++a) out(i, j) += op(a * db + i, a * db + j);
  return HermitianOperator(std::move(out));
}

HermitianOperator partial_trace(const BipartiteDensity& rho, Side kept) {
  return partial_trace(rho.op(), rho.dims(), kept);
}

HermitianOperator partial_transpose(const HermitianOperator& op, Dims dims) {
  check_dims(op, dims);
  const std::size_t da = dims.a, db = dims.b;
  ComplexMatrix out(dims.total());
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t a = 0; a < db; ++a)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t b = 0; b < db; ++b) out(i * db + a, j * db + b) = op(i * db + b, j * db + a);
  return HermitianOperator(std::move(out));
}

HermitianOperator partial_transpose(const BipartiteDensity& rho) {
  return partial_transpose(rho.op(), rho.dims());
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return HermitianOperator(std::move(out));
}

HermitianOperator projector(std::span<const Complex> psi) {
  ComplexMatrix out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) out(i, j) = psi[i] * std::conj(psi[j]);
  return HermitianOperator(std::move(out));
}

}  // namespace majorlens
