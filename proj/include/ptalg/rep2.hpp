#pragma once

#include "ptalg/linalg.hpp"
#include "ptalg/pt_algebra.hpp"

namespace ptalg {

enum class Sign : int { Plus = 1, Minus = -1 };

inline double sign_value(Sign s) noexcept { return static_cast<double>(static_cast<int>(s)); }

namespace rep2 {

/// eta = [[a, b], [c, -a]] with a = a_sign * sqrt(-b c), so a^2 + b c = 0
/// holds by construction. Requires b c <= 0.
struct Rep2Params {
  double b = 0.0;
  double c = 0.0;
  Sign a_sign = Sign::Plus;

  double a() const;
};

/// C-matrix family K = [[g_c, B_c], [A_c, -g_c]] with g_c^2 + A_c B_c = 1.
struct Rep2CParams {
  double g_c = 0.0;
  double A_c = 1.0;
  double B_c = 1.0;
};

/// H = [[alpha, beta], [gamma, alpha]].
struct Ham2Params {
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 1.0;

  bool unbroken() const noexcept { return beta * gamma >= 0.0; }
};

enum class Phase { Unbroken, Broken };

struct EtaPair {
  Matrix eta;
  Matrix eta_pt;
};

struct States {
  Vector ground;
  Vector excited;
};

struct Eigensystem {
  Complex lambda_plus;
  Complex lambda_minus;
  Vector v_plus;
  Vector v_minus;
  Phase phase;
  /// True when the eigenvectors come from the closed-form fourth-root
  /// formula (beta, gamma > 0) and so carry PT norms +1/-1.
  bool closed_form = false;
  /// beta or gamma vanishes with the other nonzero: H is not diagonalizable.
  bool defective = false;
};

Matrix eta2(const Rep2Params& p);
/// Scalar s with {eta, eta^PT} = s * 1, namely -4 a^2.
double pt_anticomm_closed_2(const Rep2Params& p);
/// (eta / 2a, eta^PT / 2a), whose anticommutator is -1. Throws for a = 0.
EtaPair normalized_eta_pair(const Rep2Params& p);

/// Ground (-b, a) and excited (b, a), unnormalized. Throws when
/// a = b = 0.
States states2(const Rep2Params& p);
/// Rescales v so that |(v, v)_PT| = 1. Throws for a PT-null vector.
Vector pt_normalize(std::span<const Complex> v, const SymmetryData& sym);

Matrix hamiltonian2(const Ham2Params& h);
Eigensystem eigensystem2(const Ham2Params& h);
/// K = [[0, sqrt(beta/gamma)], [sqrt(gamma/beta), 0]]. Throws unless beta/gamma > 0.
Matrix c_matrix2(const Ham2Params& h);
/// Lowering operator with eta|lambda-> = 0 and eta|lambda+> = |lambda->.
Matrix eta_from_h(const Ham2Params& h);
/// N^PT = eta^PT eta.
Matrix number_operator(const Matrix& eta, const Matrix& eta_pt);
/// Delta lambda (-N^PT) + lambda_- 1 assembled from eta_from_h.
Matrix h_from_ladder(const Ham2Params& h);

/// K for general (g_c, A_c, B_c); throws if g_c^2 + A_c B_c != 1 beyond tol.
Matrix c_matrix_general2(const Rep2CParams& k, double tol = kDefaultTol);
/// 2 a^2 A_c B_c + c^2 B_c^2 + b^2 A_c^2, the scalar in {eta, eta^CPT}.
double cpt_anticomm_closed_2(const Rep2Params& p, const Rep2CParams& k);
/// Whether (p, k) realizes a nontrivial Grassmann CPT algebra compatible
/// with a Hamiltonian: b A_c = c B_c, eta != 0, g_c^2 + A_c B_c = 1, and
/// g_c = 0 (the only way K commutes with a non-scalar H of the 2x2 family).
/// Then A_c B_c = 1 and b A_c = c B_c would need b c > 0, so for valid
/// Rep2Params the answer is always false.
bool cpt_grassmann_admissible(const Rep2Params& p, const Rep2CParams& k, double tol = kDefaultTol);

}  // namespace rep2
}  // namespace ptalg
