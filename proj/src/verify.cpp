#include <algorithm>
#include <functional>
#include <limits>

#include "ptalg/cli.hpp"
#include "ptalg/rep2.hpp"
#include "ptalg/rep4.hpp"
#include "ptalg/sampling.hpp"

namespace ptalg::cli {

namespace {

class Tracker {
 public:
  explicit Tracker(VerifySummary& s) : s_(s) {}
  void record(const std::string& name, double value) {
    auto [it, inserted] = s_.max_residuals.emplace(name, value);
    if (!inserted) it->second = std::max(it->second, value);
  }
  void minimum(const std::string& name, double value) {
    auto [it, inserted] = s_.stats.emplace(name, value);
    if (!inserted) it->second = std::min(it->second, value);
  }

 private:
  VerifySummary& s_;
};

double nilpotency(const Matrix& a) {
  const double n = max_abs(a);
  return max_abs(a * a) / std::max(1.0, n * n);
}

void rep2_trial(sampling::Rng& rng, Tracker& t) {
  const SymmetryData sym = standard_sz2();
  const auto p = sampling::rep2_params(rng);
  const Matrix eta = rep2::eta2(p);
  const Matrix eta_pt = pt_adjoint(eta, sym);
  t.record("eta^2=0", nilpotency(eta));
  t.record("(eta^PT)^2=0", nilpotency(eta_pt));
  t.record("{eta,eta^PT}=-4a^2",
           residual(anticommutator(eta, eta_pt), scale(Matrix::identity(2), rep2::pt_anticomm_closed_2(p))));
  if (p.a() != 0.0) {
    const auto pair = rep2::normalized_eta_pair(p);
    t.record("{eta,eta^PT}=-1 (normalized)",
             residual(anticommutator(pair.eta, pair.eta_pt), scale(Matrix::identity(2), -1.0)));
  }

  const auto h = sampling::ham2_unbroken(rng);
  const Matrix ham = rep2::hamiltonian2(h);
  const Matrix k = rep2::c_matrix2(h);
  const Matrix eta_h = rep2::eta_from_h(h);
  const Matrix eta_cpt = cpt_adjoint(eta_h, sym.with_c(k));
  const auto es = rep2::eigensystem2(h);
  const double root = std::sqrt(h.beta * h.gamma);
  t.record("K^2=1", residual(k * k, Matrix::identity(2)));
  t.record("[K,H]=0", max_abs(commutator(k, ham)));
  t.record("{eta,eta^CPT}=1", residual(anticommutator(eta_h, eta_cpt), Matrix::identity(2)));
  t.record("lambda+=alpha+sqrt(beta gamma)", std::abs(es.lambda_plus - (h.alpha + root)));
  t.record("lambda-=alpha-sqrt(beta gamma)", std::abs(es.lambda_minus - (h.alpha - root)));
  t.record("<+|+>_PT=1", std::abs(pt_inner(es.v_plus, es.v_plus, sym) - 1.0));
  t.record("<-|->_PT=-1", std::abs(pt_inner(es.v_minus, es.v_minus, sym) + 1.0));
  t.record("<+|->_PT=0", std::abs(pt_inner(es.v_plus, es.v_minus, sym)));
  t.record("H=gap(-N)+lambda-", residual(rep2::h_from_ladder(h), ham));
}

void twelve_trial(sampling::Rng& rng, Tracker& t) {
  const SymmetryData sym = rep4::standard_sz4();
  const auto free = sampling::twelve_free(rng);
  const Matrix eta = rep4::eta12(free);
  t.record("eta^2=0", nilpotency(eta));
  t.record("(eta^PT)^2=0", nilpotency(pt_adjoint(eta, sym)));
  t.record("J/K closed form", rep4::offdiag_vanishing12(free).closed_vs_direct);

  const auto gr = sampling::twelve_grassmann(rng);
  const Matrix eta_g = rep4::eta12(gr);
  t.record("Grassmann relations", rep4::grassmann_check12(gr, 1e-10) ? 0.0 : 1.0);
  t.record("{eta,eta^PT}=0 (Grassmann)", max_abs(anticommutator(eta_g, pt_adjoint(eta_g, sym))));
}

void block_trial(sampling::Rng& rng, Tracker& t) {
  const SymmetryData sym = rep4::standard_sz4();
  const auto p = sampling::block_params(rng);
  const auto k = sampling::block_c_params(rng, p);
  const Matrix eta = rep4::eta_block(p);
  const Matrix kmat = rep4::c_matrix4(p, k);
  const Matrix eta_pt = pt_adjoint(eta, sym);
  const Matrix eta_cpt = cpt_adjoint(eta, sym.with_c(kmat));
  const double cpt_scalar = rep4::cpt_anticomm_closed_block(p, k);
  t.record("eta^2=0", nilpotency(eta));
  t.record("{eta,eta^PT}=-(a+b)^2 w",
           residual(anticommutator(eta, eta_pt), scale(Matrix::identity(4), rep4::pt_anticomm_closed_block(p))));
  t.record("{eta,eta^CPT}=w(2gf+(a-b)g)^2",
           residual(anticommutator(eta, eta_cpt), scale(Matrix::identity(4), cpt_scalar)));
  t.record("eta^CPT closed form", residual(rep4::cpt_adjoint_closed_block(p, k), eta_cpt));
  t.record("K^2=1", residual(kmat * kmat, Matrix::identity(4)));
  t.record("KSZ=SZK*", residual(kmat * sym.S * sym.Z, sym.S * sym.Z * conj(kmat)));
  t.record("g^2-gamma^2 w=1", k.constraint_residual(p));
  t.record("cpt scalar >= 0", std::max(0.0, -cpt_scalar));
  t.minimum("min cpt scalar", cpt_scalar);
}

}  // namespace

VerifySummary verify_family(const std::string& family, int trials, std::uint64_t seed) {
  if (trials < 1) throw ParameterError("verify_family: trials must be positive");
  std::function<void(sampling::Rng&, Tracker&)> trial;
  if (family == "rep2") {
    trial = rep2_trial;
  } else if (family == "rep4-12") {
    trial = twelve_trial;
  } else if (family == "rep4-block") {
    trial = block_trial;
  } else {
    throw ParameterError("verify_family: unknown family " + family);
  }
  VerifySummary summary;
  summary.family = family;
  summary.trials = trials;
  sampling::Rng rng(seed);
  Tracker tracker(summary);
  for (int i = 0; i < trials; ++i) trial(rng, tracker);
  return summary;
}

}  // namespace ptalg::cli
