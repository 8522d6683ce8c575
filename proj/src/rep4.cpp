#include "ptalg/rep4.hpp"

#include <cmath>

namespace ptalg::rep4 {

using std::conj;
using std::norm;

double Rep4BlockParams::f() const {
  const double radicand = -alpha * beta4 * weight();
  if (radicand < 0.0) throw ParameterError("Rep4BlockParams: alpha*beta4*(|b|^2+|c|^2) > 0, no real f");
  return sign_value(f_sign) * std::sqrt(radicand);
}

Rep4CParams Rep4CParams::from_gamma(const Rep4BlockParams& p, double gamma, Sign g_sign) {
  return {sign_value(g_sign) * std::sqrt(1.0 + gamma * gamma * p.weight()), gamma};
}

double Rep4CParams::constraint_residual(const Rep4BlockParams& p) const {
  return std::abs(g_c * g_c - gamma * gamma * p.weight() - 1.0);
}

Matrix eta12(const Rep4TwelveParams& p) {
  const Complex row0[4] = {-p.F(), p.f, p.g4, p.h};
  const Complex col[4] = {1.0, p.a, p.b, p.c};
  std::vector<Complex> e(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e[i * 4 + j] = col[i] * row0[j];
  return Matrix(4, 4, std::move(e));
}

SymmetryData standard_sz4() {
  const Matrix s{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, -1.0, 0.0}, {0.0, 0.0, 0.0, -1.0}};
  const Matrix z{{0.0, 1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, -1.0, 0.0}};
  return SymmetryData{s, z, std::nullopt};
}

bool grassmann_check12(const Rep4TwelveParams& p, double tol) {
  const Complex F = p.F();
  return std::abs(conj(p.a) * F + p.f) <= tol && std::abs(conj(p.b) * F - p.g4) <= tol &&
         std::abs(conj(p.c) * F - p.h) <= tol;
}

Matrix pt_anticomm_closed12(const Rep4TwelveParams& p) {
  const Complex F = p.F();
  const Complex a = p.a, b = p.b, c = p.c, f = p.f, g = p.g4, h = p.h;
  const double J = norm(F) + norm(f) - norm(g) - norm(h);
  const double K = 1.0 + norm(a) - norm(b) - norm(c);
  return Matrix{
      {J + norm(F) * K, conj(a) * J - conj(F) * f * K, -conj(b) * J - conj(F) * g * K,
       -conj(c) * J - conj(F) * h * K},
      {a * J - conj(f) * F * K, norm(a) * J + norm(f) * K, -a * conj(b) * J + conj(f) * g * K,
       -a * conj(c) * J + conj(f) * h * K},
      {b * J + conj(g) * F * K, b * conj(a) * J - conj(g) * f * K, -norm(b) * J - norm(g) * K,
       -b * conj(c) * J - conj(g) * h * K},
      {c * J + conj(h) * F * K, c * conj(a) * J - conj(h) * f * K, -c * conj(b) * J - conj(h) * g * K,
       -norm(c) * J - norm(h) * K},
  };
}

OffdiagReport offdiag_vanishing12(const Rep4TwelveParams& p) {
  const Matrix eta = eta12(p);
  const Matrix direct = anticommutator(eta, pt_adjoint(eta, standard_sz4()));
  const Matrix closed = pt_anticomm_closed12(p);
  OffdiagReport r{residual(direct, closed), 0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double v = std::abs(direct(i, j));
      if (i == j) {
        r.max_diag = std::max(r.max_diag, v);
      } else {
        r.max_offdiag = std::max(r.max_offdiag, v);
      }
    }
  }
  return r;
}

Matrix eta_block(const Rep4BlockParams& p) {
  const double f = p.f();
  const double al = p.alpha, be = p.beta4;
  const Complex b = p.b, c = p.c;
  return Matrix{
      {f, 0.0, al * c, al * b},
      {0.0, f, al * conj(b), -al * conj(c)},
      {be * conj(c), be * b, -f, 0.0},
      {be * conj(b), -be * c, 0.0, -f},
  };
}

double pt_anticomm_closed_block(const Rep4BlockParams& p) {
  const double s = p.alpha + p.beta4;
  return -s * s * p.weight();
}

Matrix c_matrix4(const Rep4BlockParams& p, const Rep4CParams& k, double tol) {
  const double r = k.constraint_residual(p);
  if (r > tol) {
    throw ParameterError("c_matrix4: g^2 - gamma^2 (|b|^2+|c|^2) = 1 violated by " + std::to_string(r));
  }
  const double g = k.g_c, ga = k.gamma;
  const Complex b = p.b, c = p.c;
  return Matrix{
      {g, 0.0, -ga * c, -ga * b},
      {0.0, g, -ga * conj(b), ga * conj(c)},
      {ga * conj(c), ga * b, -g, 0.0},
      {ga * conj(b), -ga * c, 0.0, -g},
  };
}

CptCoefficients cpt_coefficients_block(const Rep4BlockParams& p, const Rep4CParams& k) {
  const double f = p.f();
  const double g = k.g_c, ga = k.gamma, al = p.alpha, be = p.beta4, w = p.weight();
  return {
      f * g * g + w * ga * (ga * f + al * g - be * g),
      2.0 * ga * f * g - be * g * g + al * ga * ga * w,
      2.0 * ga * f * g + al * g * g - be * ga * ga * w,
  };
}

Matrix cpt_adjoint_closed_block(const Rep4BlockParams& p, const Rep4CParams& k) {
  const auto [D, A, B] = cpt_coefficients_block(p, k);
  const Complex b = p.b, c = p.c;
  return Matrix{
      {D, 0.0, -c * A, -b * A},
      {0.0, D, -conj(b) * A, conj(c) * A},
      {conj(c) * B, b * B, -D, 0.0},
      {conj(b) * B, -c * B, 0.0, -D},
  };
}

double cpt_anticomm_closed_block(const Rep4BlockParams& p, const Rep4CParams& k) {
  const double t = 2.0 * k.gamma * p.f() + (p.alpha - p.beta4) * k.g_c;
  return p.weight() * t * t;
}

Matrix normalized_eta_block(const Rep4BlockParams& p) {
  const double s = pt_anticomm_closed_block(p);
  if (!(s < 0.0)) throw ParameterError("normalized_eta_block: {eta, eta^PT} vanishes (alpha = -beta4 or b = c = 0)");
  return scale(eta_block(p), 1.0 / std::sqrt(-s));
}

rep2::States states4(const Rep4BlockParams& p) {
  const double w = p.weight();
  if (w == 0.0) throw ParameterError("states4: |b|^2 + |c|^2 = 0 gives eta = 0");
  const double f = p.f();
  const double be = p.beta4;
  return {
      {f, 0.0, be * conj(p.c), be * conj(p.b)},
      {be * w, 0.0, f * conj(p.c), f * conj(p.b)},
  };
}

}  // namespace ptalg::rep4
