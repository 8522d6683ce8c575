#pragma once

#include "ptalg/linalg.hpp"
#include "ptalg/pt_algebra.hpp"
#include "ptalg/rep2.hpp"

namespace ptalg::rep4 {

/// Twelve real parameters (six complex) of the rank-one nilpotent family
///   row 0 = (-F, f, g4, h), row k = x_k * row 0 for x = (1, a, b, c),
/// where F = c h + b g4 + a f.
struct Rep4TwelveParams {
  Complex a, b, c, f, g4, h;

  Complex F() const noexcept { return c * h + b * g4 + a * f; }
};

/// Block ansatz with real f = f_sign * sqrt(-alpha beta4 (|b|^2 + |c|^2)).
struct Rep4BlockParams {
  Complex b, c;
  double alpha = 0.0;
  double beta4 = 0.0;
  Sign f_sign = Sign::Plus;

  double weight() const noexcept { return std::norm(b) + std::norm(c); }
  /// Throws ParameterError when alpha beta4 (|b|^2 + |c|^2) > 0.
  double f() const;
};

/// Parameters of the 4x4 C matrix; must satisfy g_c^2 - gamma^2 (|b|^2 + |c|^2) = 1.
struct Rep4CParams {
  double g_c = 1.0;
  double gamma = 0.0;

  /// g_c = g_sign * sqrt(1 + gamma^2 (|b|^2 + |c|^2)).
  static Rep4CParams from_gamma(const Rep4BlockParams& p, double gamma, Sign g_sign = Sign::Plus);
  double constraint_residual(const Rep4BlockParams& p) const;
};

Matrix eta12(const Rep4TwelveParams& p);
/// S = diag(1, 1, -1, -1), Z = diag(e2, e2) with e2 = [[0, 1], [-1, 0]].
SymmetryData standard_sz4();

/// a* F = -f, b* F = g4, c* F = h, each within tol.
bool grassmann_check12(const Rep4TwelveParams& p, double tol = kDefaultTol);

/// Closed-form {eta, eta^PT} for the twelve-parameter family in terms of
/// J4 = |F|^2 + |f|^2 - |g4|^2 - |h|^2 and K4 = 1 + |a|^2 - |b|^2 - |c|^2.
Matrix pt_anticomm_closed12(const Rep4TwelveParams& p);

struct OffdiagReport {
  /// residual(direct anticommutator, closed form).
  double closed_vs_direct;
  double max_offdiag;
  double max_diag;
};

OffdiagReport offdiag_vanishing12(const Rep4TwelveParams& p);

Matrix eta_block(const Rep4BlockParams& p);
/// -(alpha + beta4)^2 (|b|^2 + |c|^2).
double pt_anticomm_closed_block(const Rep4BlockParams& p);

/// Throws when g_c^2 - gamma^2 (|b|^2 + |c|^2) = 1 is violated beyond tol.
Matrix c_matrix4(const Rep4BlockParams& p, const Rep4CParams& k, double tol = kDefaultTol);

struct CptCoefficients {
  double D, A, B;
};

CptCoefficients cpt_coefficients_block(const Rep4BlockParams& p, const Rep4CParams& k);
/// eta^CPT assembled from D, A, B.
Matrix cpt_adjoint_closed_block(const Rep4BlockParams& p, const Rep4CParams& k);
/// (|b|^2 + |c|^2) (2 gamma f + (alpha - beta4) g_c)^2.
double cpt_anticomm_closed_block(const Rep4BlockParams& p, const Rep4CParams& k);

/// eta / sqrt(|pt scalar|), so that {eta, eta^PT} = -1. Throws when alpha = -beta4
/// or the family is degenerate.
Matrix normalized_eta_block(const Rep4BlockParams& p);

/// Ground (f, 0, beta4 c*, beta4 b*) and excited (beta4 w, 0, f c*, f b*)
/// with w = |b|^2 + |c|^2, unnormalized. Throws for w = 0.
rep2::States states4(const Rep4BlockParams& p);

}  // namespace ptalg::rep4
