#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptalg/linalg.hpp"

namespace ptalg {

/// Matrix data of the discrete symmetries: parity acts as psi -> S psi,
/// time reversal as psi -> Z conj(psi), and C (when known) as psi -> K psi.
struct SymmetryData {
  Matrix S;
  Matrix Z;
  std::optional<Matrix> K;

  std::size_t dim() const noexcept { return S.rows(); }
  SymmetryData with_c(Matrix k) const { return SymmetryData{S, Z, std::move(k)}; }
};

/// S = Z = sigma_x.
SymmetryData standard_sz2();

Matrix pt_adjoint(const Matrix& a, const SymmetryData& sym);
/// K S A^dagger S K. Throws ParameterError when sym.K is absent.
Matrix cpt_adjoint(const Matrix& a, const SymmetryData& sym);

/// (PT phi)^T Z psi with PT phi = S Z conj(phi).
Complex pt_inner(std::span<const Complex> phi, std::span<const Complex> psi, const SymmetryData& sym);
/// phi^dagger S K psi.
Complex cpt_inner(std::span<const Complex> phi, std::span<const Complex> psi, const SymmetryData& sym);

/// max|A^2| <= tol * max(1, max|A|^2).
bool is_nilpotent(const Matrix& a, double tol = kDefaultTol);

struct ConstraintCheck {
  std::string name;
  double residual;
  bool pass;
};

struct SymmetryReport {
  std::vector<ConstraintCheck> checks;
  bool all_pass() const;
};

/// Checks S^2 = 1 and [P,T] = 0 (S Z = Z conj(S)); with K present also
/// K^2 = 1 and K S Z = S Z conj(K).
SymmetryReport validate_symmetry(const SymmetryData& sym, double tol = kDefaultTol);

}  // namespace ptalg
