#include "ptalg/lee_model.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>

namespace ptalg::lee {

namespace mp = boost::multiprecision;
using Rational = mp::cpp_rational;

namespace {

// Exact value of a finite double.
Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw ParameterError("non-finite parameter");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r{mp::cpp_int(scaled)};
  const int shift = exp - 53;
  if (shift > 0) {
    r *= mp::cpp_int(1) << shift;
  } else if (shift < 0) {
    r /= mp::cpp_int(1) << -shift;
  }
  return r;
}

CoeffSequence run_recursion(const LeeParams& p, const Rational& energy, int n_terms) {
  if (p.g_coup == 0.0) throw ParameterError("recursion_coeffs: g = 0 makes the recursion degenerate");
  if (n_terms < 2) throw ParameterError("recursion_coeffs: need at least 2 terms");
  const Rational m = exact_rational(p.m);
  const Rational big_m = exact_rational(p.M_bare);
  const Rational g = exact_rational(p.g_coup);

  CoeffSequence seq;
  seq.values.reserve(static_cast<std::size_t>(n_terms));
  Rational prev(0);
  Rational cur(1);
  seq.values.push_back(1.0);
  for (int n = 0; n + 1 < n_terms; ++n) {
    Rational next = ((energy - m * n - big_m) * cur - g * prev) / (g * (n + 1));
    prev = std::move(cur);
    cur = std::move(next);
    seq.values.push_back(static_cast<double>(cur));
  }
  return seq;
}

void require_level(int level) {
  if (level < 0) throw ParameterError("level N must be nonnegative");
}

Matrix boson_number(int n_max) {
  std::vector<Complex> d(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) d[static_cast<std::size_t>(n)] = static_cast<double>(n);
  return Matrix::diagonal(d);
}

// a + a^dag truncated: entries sqrt(n + 1) on both off-diagonals.
Matrix boson_displacement(int n_max) {
  const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
  std::vector<Complex> e(dim * dim);
  for (std::size_t n = 0; n + 1 < dim; ++n) {
    const double v = std::sqrt(static_cast<double>(n + 1));
    e[n * dim + n + 1] = v;
    e[(n + 1) * dim + n] = v;
  }
  return Matrix(dim, dim, std::move(e));
}

Matrix assemble(const LeeParams& p, const Matrix& fermion_number) {
  const Matrix id_f = Matrix::identity(2);
  const Matrix id_b = Matrix::identity(static_cast<std::size_t>(p.n_max) + 1);
  return scale(kron(id_f, boson_number(p.n_max)), p.m) -
         scale(kron(fermion_number, id_b), p.M_bare) -
         scale(kron(fermion_number, boson_displacement(p.n_max)), p.g_coup);
}

Matrix inverse_2x2(const Matrix& a) {
  const Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (det == Complex{}) throw ParameterError("sector transform is singular");
  return Matrix{{a(1, 1) / det, -a(0, 1) / det}, {-a(1, 0) / det, a(0, 0) / det}};
}

// Least-squares intercept of y against 1/(n + 1).
double extrapolated_limit(const std::vector<double>& ns, const std::vector<double>& ys) {
  const double k = static_cast<double>(ns.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = 1.0 / (ns[i] + 1.0);
    sx += x;
    sy += ys[i];
    sxx += x * x;
    sxy += x * ys[i];
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) return sy / k;
  return (sxx * sy - sx * sxy) / denom;
}

bool within(double value, double target, double rel) {
  return std::isfinite(value) && std::abs(value / target - 1.0) <= rel;
}

}  // namespace

void LeeParams::validate() const {
  if (!(m > 0.0) || !std::isfinite(m)) throw ParameterError("LeeParams: m must be positive");
  if (!std::isfinite(M_bare) || !std::isfinite(g_coup)) throw ParameterError("LeeParams: M, g must be finite");
  if (n_max < 1) throw ParameterError("LeeParams: n_max must be >= 1");
}

const char* to_string(Balance b) noexcept {
  switch (b) {
    case Balance::Normalizable:
      return "normalizable";
    case Balance::NonNormalizable:
      return "non-normalizable";
    case Balance::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

double exact_spectrum(const LeeParams& p, int level) {
  require_level(level);
  return level * p.m + p.M_bare - p.g_coup * p.g_coup / p.m;
}

double renormalized_mass(const LeeParams& p) { return p.M_bare - p.g_coup * p.g_coup / p.m; }

SymTridiag one_fermion_tridiag(const LeeParams& p) {
  p.validate();
  SymTridiag t;
  const int dim = p.n_max + 1;
  t.diag.reserve(static_cast<std::size_t>(dim));
  t.offdiag.reserve(static_cast<std::size_t>(dim - 1));
  for (int n = 0; n < dim; ++n) {
    t.diag.push_back(p.m * n + p.M_bare);
    if (n + 1 < dim) t.offdiag.push_back(p.g_coup * std::sqrt(static_cast<double>(n + 1)));
  }
  return t;
}

Matrix full_hamiltonian(const LeeParams& p, const rep2::Rep2Params& rep) {
  p.validate();
  const auto pair = rep2::normalized_eta_pair(rep);
  return assemble(p, rep2::number_operator(pair.eta, pair.eta_pt));
}

Matrix sector_transform(const rep2::Rep2Params& rep) {
  const auto states = rep2::states2(rep);
  return Matrix{{states.ground[0], states.excited[0]}, {states.ground[1], states.excited[1]}};
}

Matrix full_hamiltonian_sector_basis(const LeeParams& p, const rep2::Rep2Params& rep) {
  p.validate();
  const auto pair = rep2::normalized_eta_pair(rep);
  const Matrix basis = sector_transform(rep);
  const Matrix n_sector = inverse_2x2(basis) * rep2::number_operator(pair.eta, pair.eta_pt) * basis;
  return assemble(p, n_sector);
}

SectorBlocks sector_blocks(const LeeParams& p, const rep2::Rep2Params& rep) {
  const Matrix h = full_hamiltonian_sector_basis(p, rep);
  const std::size_t dim = static_cast<std::size_t>(p.n_max) + 1;
  const double off =
      std::max(max_abs(h.block(0, dim, dim, dim)), max_abs(h.block(dim, 0, dim, dim)));
  return {h.block(0, 0, dim, dim), h.block(dim, dim, dim, dim), off};
}

SpectrumReport truncated_spectrum(const LeeParams& p, double threshold) {
  SpectrumReport r;
  r.truncated = eig_sym_tridiag(one_fermion_tridiag(p));
  r.n_max = p.n_max;
  r.threshold = threshold;
  r.scored_levels = p.n_max / 2 + 1;
  for (int n = 0; n <= p.n_max; ++n) {
    r.exact.push_back(exact_spectrum(p, n));
    r.abs_errors.push_back(std::abs(r.truncated[static_cast<std::size_t>(n)] - r.exact.back()));
    if (n < r.scored_levels && r.abs_errors.back() < threshold) ++r.converged_levels;
  }
  return r;
}

CoeffSequence recursion_coeffs(const LeeParams& p, double energy, int n_terms) {
  p.validate();
  return run_recursion(p, exact_rational(energy), n_terms);
}

CoeffSequence recursion_coeffs_at_level(const LeeParams& p, int level, int n_terms) {
  p.validate();
  require_level(level);
  const Rational m = exact_rational(p.m);
  const Rational g = exact_rational(p.g_coup);
  const Rational energy = m * level + exact_rational(p.M_bare) - g * g / m;
  return run_recursion(p, energy, n_terms);
}

CoeffSequence generating_coeffs(const LeeParams& p, int level, int n_terms) {
  p.validate();
  require_level(level);
  if (n_terms < 1) throw ParameterError("generating_coeffs: need at least 1 term");
  const double energy = exact_spectrum(p, level);
  const double exponent = energy / p.m - p.M_bare / p.m + p.g_coup * p.g_coup / (p.m * p.m);
  if (std::abs(exponent - std::round(exponent)) > 1e-9 || std::round(exponent) != level) {
    throw ParameterError("generating_coeffs: exponent is not the integer N");
  }
  const std::size_t len = static_cast<std::size_t>(n_terms);
  const double u = p.g_coup / p.m;

  // exp(-u x) series.
  std::vector<double> expo(len);
  expo[0] = 1.0;
  for (std::size_t k = 1; k < len; ++k) expo[k] = expo[k - 1] * (-u) / static_cast<double>(k);

  // (m x + g)^N / g^N = (1 + x m / g)^N; for g = 0 only N = 0 is normalizable.
  std::vector<double> poly(static_cast<std::size_t>(level) + 1, 0.0);
  if (level == 0) {
    poly[0] = 1.0;
  } else {
    if (p.g_coup == 0.0) throw ParameterError("generating_coeffs: g = 0 with N > 0 has d_0 = 0");
    const double ratio = p.m / p.g_coup;
    double binom = 1.0;
    double power = 1.0;
    for (int j = 0; j <= level; ++j) {
      poly[static_cast<std::size_t>(j)] = binom * power;
      binom = binom * (level - j) / (j + 1);
      power *= ratio;
    }
  }

  CoeffSequence seq;
  seq.values.assign(len, 0.0);
  for (std::size_t n = 0; n < len; ++n) {
    double s = 0.0;
    for (std::size_t j = 0; j < poly.size() && j <= n; ++j) s += poly[j] * expo[n - j];
    seq.values[n] = s;
  }
  return seq;
}

Balance classify_balance(const CoeffSequence& seq, const LeeParams& p) {
  const std::size_t len = seq.values.size();
  if (len < 10 || p.g_coup == 0.0 || !(p.m > 0.0)) return Balance::Inconclusive;
  std::vector<double> ns, scaled, raw;
  for (std::size_t n = 3 * len / 4; n + 1 < len; ++n) {
    const double dn = seq.values[n];
    const double dn1 = seq.values[n + 1];
    if (dn == 0.0 || !std::isfinite(dn) || !std::isfinite(dn1)) return Balance::Inconclusive;
    const double r = dn1 / dn;
    ns.push_back(static_cast<double>(n));
    raw.push_back(r);
    scaled.push_back(r * static_cast<double>(n + 1));
  }
  if (ns.size() < 2) return Balance::Inconclusive;
  const double u = p.g_coup / p.m;
  if (within(extrapolated_limit(ns, scaled), -u, 0.2)) return Balance::Normalizable;
  if (within(extrapolated_limit(ns, raw), -1.0 / u, 0.2)) return Balance::NonNormalizable;
  return Balance::Inconclusive;
}

double norm_partial_sum(const CoeffSequence& seq, int upper) {
  if (upper < 0 || static_cast<std::size_t>(upper) >= seq.values.size()) {
    throw ParameterError("norm_partial_sum: upper index outside the sequence");
  }
  double sum = 0.0;
  for (int n = 0; n <= upper; ++n) {
    const double d = seq.values[static_cast<std::size_t>(n)];
    if (d == 0.0) continue;
    const double log_term = 2.0 * std::log(std::abs(d)) + std::lgamma(n + 1.0);
    sum += std::exp(log_term);
    if (!std::isfinite(sum)) throw DivergenceError("norm_partial_sum: partial sum overflowed (divergent norm)");
  }
  return sum;
}

}  // namespace ptalg::lee
