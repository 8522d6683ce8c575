#include "ptalg/rep2.hpp"

#include <cmath>

namespace ptalg::rep2 {

namespace {

void require_positive_ratio(const Ham2Params& h, const char* op) {
  if (!(h.beta * h.gamma > 0.0) || !(h.beta / h.gamma > 0.0)) {
    throw ParameterError(std::string(op) + ": requires beta/gamma > 0 (unbroken phase)");
  }
}

}  // namespace

double Rep2Params::a() const {
  if (!std::isfinite(b) || !std::isfinite(c)) throw ParameterError("Rep2Params: b, c must be finite");
  if (b * c > 0.0) throw ParameterError("Rep2Params: b*c > 0 makes a imaginary");
  return sign_value(a_sign) * std::sqrt(-b * c);
}

Matrix eta2(const Rep2Params& p) {
  const double a = p.a();
  return Matrix{{a, p.b}, {p.c, -a}};
}

double pt_anticomm_closed_2(const Rep2Params& p) {
  const double a = p.a();
  return -4.0 * a * a;
}

EtaPair normalized_eta_pair(const Rep2Params& p) {
  const double a = p.a();
  if (a == 0.0) throw ParameterError("normalized_eta_pair: a = 0 (Grassmann member) cannot be normalized");
  const Matrix eta = eta2(p);
  const Complex s = 1.0 / (2.0 * a);
  return {scale(eta, s), scale(pt_adjoint(eta, standard_sz2()), s)};
}

States states2(const Rep2Params& p) {
  const double a = p.a();
  if (a == 0.0 && p.b == 0.0) throw ParameterError("states2: a = b = 0 gives the zero vector");
  return {{-p.b, a}, {p.b, a}};
}

Vector pt_normalize(std::span<const Complex> v, const SymmetryData& sym) {
  const double n = std::abs(pt_inner(v, v, sym));
  if (n == 0.0) throw ParameterError("pt_normalize: vector has zero PT norm");
  return vec_scale(v, 1.0 / std::sqrt(n));
}

Matrix hamiltonian2(const Ham2Params& h) {
  return Matrix{{h.alpha, h.beta}, {h.gamma, h.alpha}};
}

Eigensystem eigensystem2(const Ham2Params& h) {
  Eigensystem out;
  out.phase = h.unbroken() ? Phase::Unbroken : Phase::Broken;
  if (h.beta > 0.0 && h.gamma > 0.0) {
    const double root = std::sqrt(h.beta * h.gamma);
    const double q = std::pow(h.beta / h.gamma, 0.25);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    out.lambda_plus = h.alpha + root;
    out.lambda_minus = h.alpha - root;
    out.v_plus = {inv_sqrt2 * q, inv_sqrt2 / q};
    out.v_minus = {inv_sqrt2 * q, -inv_sqrt2 / q};
    out.closed_form = true;
    return out;
  }
  const Eigen2 generic = eig_2x2(hamiltonian2(h));
  out.lambda_plus = generic.lambda_plus;
  out.lambda_minus = generic.lambda_minus;
  out.v_plus = generic.v_plus;
  out.v_minus = generic.v_minus;
  out.defective = generic.defective;
  return out;
}

Matrix c_matrix2(const Ham2Params& h) {
  require_positive_ratio(h, "c_matrix2");
  const double r = std::sqrt(h.beta / h.gamma);
  return Matrix{{0.0, r}, {1.0 / r, 0.0}};
}

Matrix eta_from_h(const Ham2Params& h) {
  require_positive_ratio(h, "eta_from_h");
  const double r = std::sqrt(h.beta / h.gamma);
  return Matrix{{0.5, 0.5 * r}, {-0.5 / r, -0.5}};
}

Matrix number_operator(const Matrix& eta, const Matrix& eta_pt) {
  if (!eta.is_square() || eta.rows() != eta_pt.rows() || !eta_pt.is_square()) {
    throw DimensionError("number_operator: eta and eta^PT must be square of equal size");
  }
  return eta_pt * eta;
}

Matrix h_from_ladder(const Ham2Params& h) {
  const Matrix eta = eta_from_h(h);
  const Matrix n_pt = number_operator(eta, pt_adjoint(eta, standard_sz2()));
  const double root = std::sqrt(h.beta * h.gamma);
  const double lambda_minus = h.alpha - root;
  const double gap = 2.0 * root;
  return scale(n_pt, -gap) + scale(Matrix::identity(2), lambda_minus);
}

Matrix c_matrix_general2(const Rep2CParams& k, double tol) {
  const double constraint = k.g_c * k.g_c + k.A_c * k.B_c - 1.0;
  if (std::abs(constraint) > tol) {
    throw ParameterError("c_matrix_general2: g^2 + A B = 1 violated by " + std::to_string(constraint));
  }
  return Matrix{{k.g_c, k.B_c}, {k.A_c, -k.g_c}};
}

double cpt_anticomm_closed_2(const Rep2Params& p, const Rep2CParams& k) {
  const double a = p.a();
  return 2.0 * a * a * k.A_c * k.B_c + p.c * p.c * k.B_c * k.B_c + p.b * p.b * k.A_c * k.A_c;
}

bool cpt_grassmann_admissible(const Rep2Params& p, const Rep2CParams& k, double tol) {
  const bool grassmann = std::abs(p.b * k.A_c - p.c * k.B_c) <= tol;
  if (!grassmann) return false;
  const bool trivial_eta = max_abs(eta2(p)) <= tol;
  const bool valid_k = std::abs(k.g_c * k.g_c + k.A_c * k.B_c - 1.0) <= tol;
  // [K, H] = 0 for a non-scalar H = [[alpha, beta], [gamma, alpha]] needs g_c = 0.
  const bool commutes_with_h = std::abs(k.g_c) <= tol;
  return !trivial_eta && valid_k && commutes_with_h;
}

}  // namespace ptalg::rep2
