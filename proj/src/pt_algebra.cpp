#include "ptalg/pt_algebra.hpp"

#include <algorithm>

namespace ptalg {

namespace {

const Matrix& require_c(const SymmetryData& sym) {
  if (!sym.K) throw ParameterError("C matrix K is required but absent");
  return *sym.K;
}

void require_operator_dim(const Matrix& a, const SymmetryData& sym) {
  if (!a.is_square() || a.rows() != sym.dim()) {
    throw DimensionError("operator dimension " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " does not match symmetry dimension " +
                         std::to_string(sym.dim()));
  }
}

void require_vector_dim(std::span<const Complex> v, const SymmetryData& sym) {
  if (v.size() != sym.dim()) throw DimensionError("state length does not match symmetry dimension");
}

}  // namespace

SymmetryData standard_sz2() {
  const Matrix sx{{0.0, 1.0}, {1.0, 0.0}};
  return SymmetryData{sx, sx, std::nullopt};
}

Matrix pt_adjoint(const Matrix& a, const SymmetryData& sym) {
  require_operator_dim(a, sym);
  return sym.S * dagger(a) * sym.S;
}

Matrix cpt_adjoint(const Matrix& a, const SymmetryData& sym) {
  const Matrix& k = require_c(sym);
  require_operator_dim(a, sym);
  return k * sym.S * dagger(a) * sym.S * k;
}

Complex pt_inner(std::span<const Complex> phi, std::span<const Complex> psi, const SymmetryData& sym) {
  require_vector_dim(phi, sym);
  require_vector_dim(psi, sym);
  const Vector pt_phi = mat_vec(sym.S * sym.Z, vec_conj(phi));
  return dot(pt_phi, mat_vec(sym.Z, psi));
}

Complex cpt_inner(std::span<const Complex> phi, std::span<const Complex> psi, const SymmetryData& sym) {
  const Matrix& k = require_c(sym);
  require_vector_dim(phi, sym);
  require_vector_dim(psi, sym);
  return dot(vec_conj(phi), mat_vec(sym.S * k, psi));
}

bool is_nilpotent(const Matrix& a, double tol) {
  if (!a.is_square()) throw DimensionError("is_nilpotent: matrix not square");
  const double n = max_abs(a);
  return max_abs(a * a) <= tol * std::max(1.0, n * n);
}

bool SymmetryReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

SymmetryReport validate_symmetry(const SymmetryData& sym, double tol) {
  SymmetryReport report;
  auto record = [&](std::string name, double r) {
    report.checks.push_back({std::move(name), r, r <= tol});
  };
  const std::size_t n = sym.dim();
  if (!sym.S.is_square() || !sym.Z.is_square() || sym.Z.rows() != n) {
    throw DimensionError("validate_symmetry: S and Z must be square of equal size");
  }
  const Matrix id = Matrix::identity(n);
  record("S^2=1", residual(sym.S * sym.S, id));
  record("SZ=ZS*", residual(sym.S * sym.Z, sym.Z * conj(sym.S)));
  if (sym.K) {
    const Matrix& k = *sym.K;
    if (!k.is_square() || k.rows() != n) throw DimensionError("validate_symmetry: K has wrong size");
    record("K^2=1", residual(k * k, id));
    const Matrix sz = sym.S * sym.Z;
    record("KSZ=SZK*", residual(k * sz, sz * conj(k)));
  }
  return report;
}

}  // namespace ptalg
