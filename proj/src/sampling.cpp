#include "ptalg/sampling.hpp"

#include <cmath>
#include <numbers>

namespace ptalg::sampling {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Complex uniform_complex(Rng& rng, double lo, double hi) {
  const double re = uniform(rng, lo, hi);
  const double im = uniform(rng, lo, hi);
  return {re, im};
}

Sign random_sign(Rng& rng) { return (rng() & 1u) ? Sign::Plus : Sign::Minus; }

rep2::Rep2Params rep2_params(Rng& rng) {
  while (true) {
    const double b = uniform(rng, -5.0, 5.0);
    const double c = uniform(rng, -5.0, 5.0);
    if (b * c <= 0.0) return {b, c, random_sign(rng)};
  }
}

rep2::Ham2Params ham2_unbroken(Rng& rng) {
  const double alpha = uniform(rng, -5.0, 5.0);
  const double beta = uniform(rng, 0.05, 5.0);
  const double gamma = uniform(rng, 0.05, 5.0);
  return {alpha, beta, gamma};
}

rep4::Rep4TwelveParams twelve_free(Rng& rng) {
  rep4::Rep4TwelveParams p;
  p.a = uniform_complex(rng, -2.0, 2.0);
  p.b = uniform_complex(rng, -2.0, 2.0);
  p.c = uniform_complex(rng, -2.0, 2.0);
  p.f = uniform_complex(rng, -2.0, 2.0);
  p.g4 = uniform_complex(rng, -2.0, 2.0);
  p.h = uniform_complex(rng, -2.0, 2.0);
  return p;
}

rep4::Rep4TwelveParams twelve_grassmann(Rng& rng) {
  while (true) {
    const Complex a = uniform_complex(rng, -2.0, 2.0);
    const Complex b = uniform_complex(rng, -2.0, 2.0);
    const Complex F = uniform_complex(rng, -2.0, 2.0);
    const double c_sq = 1.0 + std::norm(a) - std::norm(b);
    const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    if (c_sq < 0.0) continue;
    const Complex c = std::polar(std::sqrt(c_sq), theta);
    rep4::Rep4TwelveParams p{a, b, c, -std::conj(a) * F, std::conj(b) * F, std::conj(c) * F};
    return p;
  }
}

rep4::Rep4BlockParams block_params(Rng& rng) {
  while (true) {
    rep4::Rep4BlockParams p;
    p.b = uniform_complex(rng, -2.0, 2.0);
    p.c = uniform_complex(rng, -2.0, 2.0);
    p.alpha = uniform(rng, -2.0, 2.0);
    p.beta4 = uniform(rng, -2.0, 2.0);
    p.f_sign = random_sign(rng);
    if (p.alpha * p.beta4 <= 0.0) return p;
  }
}

rep4::Rep4CParams block_c_params(Rng& rng, const rep4::Rep4BlockParams& p) {
  return rep4::Rep4CParams::from_gamma(p, uniform(rng, -2.0, 2.0));
}

}  // namespace ptalg::sampling
