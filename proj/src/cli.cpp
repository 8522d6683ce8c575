#include "ptalg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

#include "ptalg/lee_model.hpp"
#include "ptalg/pt_algebra.hpp"
#include "ptalg/rep2.hpp"
#include "ptalg/rep4.hpp"
#include "ptalg/sampling.hpp"

namespace ptalg::cli {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- output

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_json(const Json& j, std::ostream& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(it.key()).dump() << ": ";
        write_json(it.value(), out, indent, depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      if (j.empty()) {
        out << "[]";
        return;
      }
      if (flat) {
        out << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          write_json(j[i], out, indent, depth + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        write_json(j[i], out, indent, depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      out << j.dump();
  }
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(std::span<const Complex> v) {
  Json arr = Json::array();
  for (const auto& z : v) arr.push_back(to_json(z));
  return arr;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json param_json(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Complex>) {
          return to_json(x);
        } else {
          return Json(x);
        }
      },
      v);
}

// --------------------------------------------------------- parameter access

class Params {
 public:
  explicit Params(const RunConfig& c) : cfg_(c) {}

  double real(const std::string& key, double fallback) const {
    auto it = cfg_.parameters.find(key);
    if (it == cfg_.parameters.end()) return fallback;
    if (auto d = std::get_if<double>(&it->second)) return *d;
    if (auto i = std::get_if<long long>(&it->second)) return static_cast<double>(*i);
    throw ParameterError("parameter --" + key + " must be real");
  }

  long long integer(const std::string& key, long long fallback) const {
    auto it = cfg_.parameters.find(key);
    if (it == cfg_.parameters.end()) return fallback;
    if (auto i = std::get_if<long long>(&it->second)) return *i;
    throw ParameterError("parameter --" + key + " must be an integer");
  }

  Complex complex(const std::string& key, Complex fallback) const {
    auto it = cfg_.parameters.find(key);
    if (it == cfg_.parameters.end()) return fallback;
    if (auto z = std::get_if<Complex>(&it->second)) return *z;
    if (auto d = std::get_if<double>(&it->second)) return *d;
    if (auto i = std::get_if<long long>(&it->second)) return static_cast<double>(*i);
    throw ParameterError("parameter --" + key + " must be complex");
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = cfg_.parameters.find(key);
    if (it == cfg_.parameters.end()) return fallback;
    if (auto s = std::get_if<std::string>(&it->second)) return *s;
    throw ParameterError("parameter --" + key + " must be a string");
  }

  bool has(const std::string& key) const { return cfg_.parameters.count(key) > 0; }

 private:
  const RunConfig& cfg_;
};

Sign sign_param(const Params& p, const std::string& key) {
  const long long s = p.integer(key, 1);
  if (s != 1 && s != -1) throw ParameterError("--" + key + " must be +1 or -1");
  return s > 0 ? Sign::Plus : Sign::Minus;
}

// Report under construction; residuals decide pass/fail.
struct Report {
  Json parameters = Json::object();
  Json results = Json::object();
  Json residuals = Json::object();
  double tol = kDefaultTol;
  bool extra_fail = false;

  void residual(const std::string& name, double value) { residuals[name] = value; }

  bool pass() const {
    if (extra_fail) return false;
    for (const auto& [k, v] : residuals.items()) {
      const double x = v.get<double>();
      if (!(x <= tol)) return false;
    }
    return true;
  }
};

std::string command_name(Command c) {
  switch (c) {
    case Command::Rep2:
      return "rep2";
    case Command::Rep4:
      return "rep4";
    case Command::Verify:
      return "verify";
    case Command::LeeSpectrum:
      return "lee-spectrum";
    case Command::LeeCoeffs:
      return "lee-coeffs";
    case Command::LeeConverge:
      return "lee-converge";
  }
  return "?";
}

double nilpotency_residual(const Matrix& a) {
  const double n = max_abs(a);
  return max_abs(a * a) / std::max(1.0, n * n);
}

double vector_residual(std::span<const Complex> actual, std::span<const Complex> expected) {
  return residual(actual, expected);
}

// ------------------------------------------------------------------ rep2

void run_rep2(const Params& in, Report& r) {
  const rep2::Rep2Params p{in.real("b", 1.0), in.real("c", -1.0), sign_param(in, "sign")};
  const rep2::Ham2Params h{in.real("alpha", 0.0), in.real("beta", 1.0), in.real("gamma", 1.0)};
  r.parameters = {{"b", p.b}, {"c", p.c}, {"sign", static_cast<int>(p.a_sign)},
                  {"alpha", h.alpha}, {"beta", h.beta}, {"gamma", h.gamma}};

  const SymmetryData sym = standard_sz2();
  const Matrix eta = rep2::eta2(p);
  const Matrix eta_pt = pt_adjoint(eta, sym);
  const double scalar = rep2::pt_anticomm_closed_2(p);
  r.results["a"] = p.a();
  r.results["eta"] = to_json(eta);
  r.results["eta_pt"] = to_json(eta_pt);
  r.results["pt_anticommutator_scalar"] = scalar;
  r.residual("eta^2=0", nilpotency_residual(eta));
  r.residual("(eta^PT)^2=0", nilpotency_residual(eta_pt));
  r.residual("{eta,eta^PT}=-4a^2", residual(anticommutator(eta, eta_pt), scale(Matrix::identity(2), scalar)));

  if (p.a() != 0.0) {
    const auto pair = rep2::normalized_eta_pair(p);
    const Matrix n_pt = rep2::number_operator(pair.eta, pair.eta_pt);
    const auto states = rep2::states2(p);
    r.results["normalized_eta"] = to_json(pair.eta);
    r.results["normalized_eta_pt"] = to_json(pair.eta_pt);
    r.results["ground"] = to_json(states.ground);
    r.results["excited"] = to_json(states.excited);
    r.residual("{eta,eta^PT}=-1 (normalized)",
               residual(anticommutator(pair.eta, pair.eta_pt), scale(Matrix::identity(2), -1.0)));
    r.residual("eta|0>=0", max_abs(mat_vec(pair.eta, states.ground)) / euclidean_norm(states.ground));
    r.residual("N|0>=0", max_abs(mat_vec(n_pt, states.ground)) / euclidean_norm(states.ground));
    r.residual("N|1>=-|1>", vector_residual(mat_vec(n_pt, states.excited), vec_scale(states.excited, -1.0)));
    r.residual("{N,eta}=-eta", residual(anticommutator(n_pt, pair.eta), scale(pair.eta, -1.0)));
    r.residual("{N,eta^PT}=-eta^PT", residual(anticommutator(n_pt, pair.eta_pt), scale(pair.eta_pt, -1.0)));
  }

  const Matrix ham = rep2::hamiltonian2(h);
  const auto es = rep2::eigensystem2(h);
  r.results["hamiltonian"] = to_json(ham);
  r.results["lambda_plus"] = to_json(es.lambda_plus);
  r.results["lambda_minus"] = to_json(es.lambda_minus);
  r.results["phase"] = es.phase == rep2::Phase::Unbroken ? "unbroken" : "broken";
  r.results["defective"] = es.defective;
  r.residual("H v+=lambda+ v+", vector_residual(mat_vec(ham, es.v_plus), vec_scale(es.v_plus, es.lambda_plus)));
  r.residual("H v-=lambda- v-", vector_residual(mat_vec(ham, es.v_minus), vec_scale(es.v_minus, es.lambda_minus)));

  if (h.beta > 0.0 && h.gamma > 0.0) {
    const Matrix k = rep2::c_matrix2(h);
    const SymmetryData with_c = sym.with_c(k);
    const Matrix eta_h = rep2::eta_from_h(h);
    const Matrix eta_cpt = cpt_adjoint(eta_h, with_c);
    r.results["v_plus"] = to_json(es.v_plus);
    r.results["v_minus"] = to_json(es.v_minus);
    r.results["c_matrix"] = to_json(k);
    r.results["eta_h"] = to_json(eta_h);
    r.results["eta_h_cpt"] = to_json(eta_cpt);
    r.residual("K^2=1", residual(k * k, Matrix::identity(2)));
    r.residual("[K,H]=0", max_abs(commutator(k, ham)));
    r.residual("KSZ=SZK*", residual(k * sym.S * sym.Z, sym.S * sym.Z * conj(k)));
    r.residual("{eta,eta^CPT}=1", residual(anticommutator(eta_h, eta_cpt), Matrix::identity(2)));
    r.residual("<+|+>_PT=1", std::abs(pt_inner(es.v_plus, es.v_plus, sym) - 1.0));
    r.residual("<-|-|>_PT=-1", std::abs(pt_inner(es.v_minus, es.v_minus, sym) + 1.0));
    r.residual("<+|->_PT=0", std::abs(pt_inner(es.v_plus, es.v_minus, sym)));
    r.residual("<-|+>_PT=0", std::abs(pt_inner(es.v_minus, es.v_plus, sym)));
    r.residual("H=gap(-N)+lambda-", residual(rep2::h_from_ladder(h), ham));
  }
}

// ------------------------------------------------------------------ rep4

void run_rep4_twelve(const Params& in, Report& r) {
  // Defaults reproduce the reference Grassmann matrix.
  const rep4::Rep4TwelveParams p{in.complex("a", 1.0), in.complex("b", Complex(0, 1)),
                                 in.complex("c", Complex(0, -1)), in.complex("f", 1.0),
                                 in.complex("g4", Complex(0, 1)), in.complex("h", Complex(0, -1))};
  r.parameters = {{"family", "rep4-12"}, {"a", to_json(p.a)}, {"b", to_json(p.b)}, {"c", to_json(p.c)},
                  {"f", to_json(p.f)}, {"g4", to_json(p.g4)}, {"h", to_json(p.h)}};
  const SymmetryData sym = rep4::standard_sz4();
  const Matrix eta = rep4::eta12(p);
  const Matrix eta_pt = pt_adjoint(eta, sym);
  const bool grassmann = rep4::grassmann_check12(p, r.tol);
  const auto off = rep4::offdiag_vanishing12(p);
  r.results["F"] = to_json(p.F());
  r.results["eta"] = to_json(eta);
  r.results["eta_pt"] = to_json(eta_pt);
  r.results["anticommutator"] = to_json(anticommutator(eta, eta_pt));
  r.results["grassmann_relations"] = grassmann;
  r.results["max_offdiag"] = off.max_offdiag;
  r.results["max_diag"] = off.max_diag;
  r.residual("eta^2=0", nilpotency_residual(eta));
  r.residual("(eta^PT)^2=0", nilpotency_residual(eta_pt));
  r.residual("J/K closed form", off.closed_vs_direct);
  if (grassmann) r.residual("{eta,eta^PT}=0", max_abs(anticommutator(eta, eta_pt)));
}

void run_rep4_block(const Params& in, Report& r) {
  rep4::Rep4BlockParams p;
  p.b = in.complex("b", 1.0);
  p.c = in.complex("c", 0.0);
  p.alpha = in.real("alpha", 2.0);
  p.beta4 = in.real("beta4", -0.5);
  p.f_sign = sign_param(in, "fsign");
  const double gamma = in.real("gamma", 0.5);
  const auto k = rep4::Rep4CParams::from_gamma(p, gamma);
  r.parameters = {{"family", "rep4-block"}, {"b", to_json(p.b)}, {"c", to_json(p.c)}, {"alpha", p.alpha},
                  {"beta4", p.beta4}, {"fsign", static_cast<int>(p.f_sign)}, {"gamma", gamma}};

  const SymmetryData sym = rep4::standard_sz4();
  const Matrix eta = rep4::eta_block(p);
  const Matrix eta_pt = pt_adjoint(eta, sym);
  const Matrix kmat = rep4::c_matrix4(p, k);
  const SymmetryData with_c = sym.with_c(kmat);
  const Matrix eta_cpt = cpt_adjoint(eta, with_c);
  const auto coeffs = rep4::cpt_coefficients_block(p, k);
  const double pt_scalar = rep4::pt_anticomm_closed_block(p);
  const double cpt_scalar = rep4::cpt_anticomm_closed_block(p, k);

  r.results["f"] = p.f();
  r.results["g_c"] = k.g_c;
  r.results["eta"] = to_json(eta);
  r.results["eta_pt"] = to_json(eta_pt);
  r.results["c_matrix"] = to_json(kmat);
  r.results["eta_cpt"] = to_json(eta_cpt);
  r.results["D"] = coeffs.D;
  r.results["A"] = coeffs.A;
  r.results["B"] = coeffs.B;
  r.results["pt_anticommutator_scalar"] = pt_scalar;
  r.results["cpt_anticommutator_scalar"] = cpt_scalar;

  r.residual("eta^2=0", nilpotency_residual(eta));
  r.residual("(eta^PT)^2=0", nilpotency_residual(eta_pt));
  r.residual("{eta,eta^PT}=-(a+b)^2 w", residual(anticommutator(eta, eta_pt), scale(Matrix::identity(4), pt_scalar)));
  r.residual("K^2=1", residual(kmat * kmat, Matrix::identity(4)));
  r.residual("KSZ=SZK*", residual(kmat * sym.S * sym.Z, sym.S * sym.Z * conj(kmat)));
  r.residual("g^2-gamma^2 w=1", k.constraint_residual(p));
  r.residual("eta^CPT closed form", residual(rep4::cpt_adjoint_closed_block(p, k), eta_cpt));
  r.residual("{eta,eta^CPT}=w(2gf+(a-b)g)^2",
             residual(anticommutator(eta, eta_cpt), scale(Matrix::identity(4), cpt_scalar)));
  r.residual("cpt scalar >= 0", std::max(0.0, -cpt_scalar));

  if (p.weight() > 0.0) {
    const auto states = rep4::states4(p);
    r.results["ground"] = to_json(states.ground);
    r.results["excited"] = to_json(states.excited);
    r.residual("eta|0>=0", max_abs(mat_vec(eta, states.ground)) / std::max(1.0, max_abs(eta) * euclidean_norm(states.ground)));
    if (pt_scalar < 0.0) {
      const Matrix eta_n = rep4::normalized_eta_block(p);
      const Matrix n_pt = rep2::number_operator(eta_n, pt_adjoint(eta_n, sym));
      r.residual("N|0>=0", max_abs(mat_vec(n_pt, states.ground)) / euclidean_norm(states.ground));
      r.residual("N|1>=-|1>", vector_residual(mat_vec(n_pt, states.excited), vec_scale(states.excited, -1.0)));
    }
  }
}

// --------------------------------------------------------------- verify

void run_verify(const Params& in, const RunConfig& cfg, Report& r) {
  const std::string family = in.text("family", "rep2");
  const long long trials = in.integer("trials", 1000);
  if (trials < 1) throw ParameterError("--trials must be positive");
  r.parameters = {{"family", family}, {"trials", trials}, {"seed", cfg.seed}, {"tol", cfg.tolerance}};
  const auto summary = verify_family(family, static_cast<int>(trials), cfg.seed);
  r.results["trials"] = summary.trials;
  for (const auto& [k, v] : summary.stats) r.results[k] = v;
  for (const auto& [k, v] : summary.max_residuals) r.residual(k, v);
}

// -------------------------------------------------------------- lee model

lee::LeeParams lee_params(const Params& in) {
  lee::LeeParams p{in.real("m", 1.0), in.real("M", 1.0), in.real("g", 0.5),
                   static_cast<int>(in.integer("nmax", 64))};
  p.validate();
  return p;
}

void run_lee_spectrum(const Params& in, Report& r, std::vector<std::vector<std::string>>& csv) {
  const auto p = lee_params(in);
  r.parameters = {{"m", p.m}, {"M", p.M_bare}, {"g", p.g_coup}, {"nmax", p.n_max}};
  const auto rep = lee::truncated_spectrum(p);
  Json levels = Json::array();
  double worst = 0.0;
  csv.push_back({"N", "truncated", "exact", "abs_err"});
  for (int n = 0; n < rep.scored_levels; ++n) {
    const auto i = static_cast<std::size_t>(n);
    levels.push_back({{"N", n}, {"truncated", rep.truncated[i]}, {"exact", rep.exact[i]},
                      {"abs_err", rep.abs_errors[i]}});
    csv.push_back({std::to_string(n), format_double(rep.truncated[i]), format_double(rep.exact[i]),
                   format_double(rep.abs_errors[i])});
    worst = std::max(worst, rep.abs_errors[i]);
  }
  r.results["levels"] = std::move(levels);
  r.results["renormalized_mass"] = lee::renormalized_mass(p);
  r.results["scored_levels"] = rep.scored_levels;
  r.results["converged_levels"] = rep.converged_levels;
  r.results["threshold"] = rep.threshold;
  r.residual("max abs_err (scored levels)", worst);
}

void run_lee_coeffs(const Params& in, Report& r, std::vector<std::vector<std::string>>& csv) {
  auto p = lee_params(in);
  const int level = static_cast<int>(in.integer("N", 0));
  const int terms = static_cast<int>(in.integer("terms", 20));
  const std::string route = in.text("route", "both");
  if (route != "recursion" && route != "genfunc" && route != "both") {
    throw ParameterError("--route must be recursion, genfunc or both");
  }
  const bool explicit_energy = in.has("E");
  if (explicit_energy && route != "recursion") {
    throw ParameterError("--E is only meaningful with --route recursion");
  }
  r.parameters = {{"m", p.m}, {"M", p.M_bare}, {"g", p.g_coup}, {"N", level}, {"terms", terms}, {"route", route}};
  const double energy = explicit_energy ? in.real("E", 0.0) : lee::exact_spectrum(p, level);
  if (explicit_energy) r.parameters["E"] = energy;
  r.results["E"] = energy;

  std::optional<lee::CoeffSequence> rec, gen;
  if (route != "genfunc") {
    rec = explicit_energy ? lee::recursion_coeffs(p, energy, terms) : lee::recursion_coeffs_at_level(p, level, terms);
    r.results["recursion"] = rec->values;
    r.results["recursion_balance"] = lee::to_string(lee::classify_balance(*rec, p));
    try {
      r.results["recursion_norm_partial_sum"] = lee::norm_partial_sum(*rec, terms - 1);
    } catch (const lee::DivergenceError&) {
      r.results["recursion_norm_partial_sum"] = nullptr;
    }
  }
  if (route != "recursion") {
    gen = lee::generating_coeffs(p, level, terms);
    r.results["genfunc"] = gen->values;
    r.results["genfunc_balance"] = lee::to_string(lee::classify_balance(*gen, p));
    r.results["genfunc_norm_partial_sum"] = lee::norm_partial_sum(*gen, terms - 1);
  }

  std::vector<std::string> header{"n"};
  if (rec) header.push_back("recursion");
  if (gen) header.push_back("genfunc");
  if (rec && gen) header.push_back("rel_diff");
  csv.push_back(header);
  double worst = 0.0;
  for (int n = 0; n < terms; ++n) {
    const auto i = static_cast<std::size_t>(n);
    std::vector<std::string> row{std::to_string(n)};
    if (rec) row.push_back(format_double(rec->values[i]));
    if (gen) row.push_back(format_double(gen->values[i]));
    if (rec && gen) {
      const double x = rec->values[i], y = gen->values[i];
      const double scale_ref = std::max(std::abs(x), std::abs(y));
      const double rel = scale_ref == 0.0 ? 0.0 : std::abs(x - y) / scale_ref;
      worst = std::max(worst, rel);
      row.push_back(format_double(rel));
    }
    csv.push_back(std::move(row));
  }
  if (rec && gen) {
    r.results["max_rel_diff"] = worst;
    r.residual("recursion vs genfunc (max rel)", worst);
  }
}

void run_lee_converge(const Params& in, Report& r, std::vector<std::vector<std::string>>& csv) {
  const auto p = lee_params(in);
  const int level = static_cast<int>(in.integer("N", 0));
  if (level < 0 || level > p.n_max) throw ParameterError("--N must lie in [0, nmax]");
  r.parameters = {{"m", p.m}, {"M", p.M_bare}, {"g", p.g_coup}, {"nmax", p.n_max}, {"N", level}};

  std::vector<int> sizes;
  for (int n = 4; n < p.n_max; n *= 2)
    if (n >= level) sizes.push_back(n);
  sizes.push_back(p.n_max);

  const double exact = lee::exact_spectrum(p, level);
  Json rows = Json::array();
  csv.push_back({"nmax", "truncated", "exact", "abs_err"});
  double increase = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    lee::LeeParams q = p;
    q.n_max = sizes[i];
    const double t = eig_sym_tridiag(lee::one_fermion_tridiag(q))[static_cast<std::size_t>(level)];
    rows.push_back({{"nmax", sizes[i]}, {"truncated", t}, {"exact", exact}, {"abs_err", std::abs(t - exact)}});
    csv.push_back({std::to_string(sizes[i]), format_double(t), format_double(exact), format_double(std::abs(t - exact))});
    if (i > 0) increase = std::max(increase, t - prev);
    prev = t;
  }
  r.results["rows"] = std::move(rows);
  r.residual("truncated level non-increasing in nmax", increase);
}

void write_csv(const std::vector<std::vector<std::string>>& rows, std::ostream& out) {
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

void residual_csv(const Report& r, std::vector<std::vector<std::string>>& csv) {
  csv.push_back({"identity", "residual", "pass"});
  for (const auto& [k, v] : r.residuals.items()) {
    const double x = v.get<double>();
    csv.push_back({"\"" + k + "\"", format_double(x), x <= r.tol ? "true" : "false"});
  }
}

// Keys whose values are integers, complex numbers or strings; all others are real.
const std::set<std::string> kIntegerKeys{"nmax", "N", "terms", "trials", "sign", "fsign"};
const std::set<std::string> kStringKeys{"family", "route"};
const std::set<std::string> kComplexKeysRep4{"a", "b", "c", "f", "g4", "h"};

long long parse_integer(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("--" + key + ": not an integer: " + s);
  }
  if (used != s.size()) throw ParameterError("--" + key + ": not an integer: " + s);
  return v;
}

double parse_real(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("--" + key + ": not a real number: " + s);
  }
  if (used != s.size() || !std::isfinite(v)) throw ParameterError("--" + key + ": not a real number: " + s);
  return v;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s.empty()) throw ParameterError("empty complex literal");
  auto parse_part = [&](const std::string& part) -> double {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ParameterError("bad complex literal: " + std::string(text));
    }
    if (used != part.size() || !std::isfinite(v)) throw ParameterError("bad complex literal: " + std::string(text));
    return v;
  };
  if (s.back() != 'i') return {parse_part(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading sign and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_part(body)};
  return {parse_part(body.substr(0, split)), parse_part(body.substr(split))};
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"PT/CPT fermionic operator algebra toolkit", "ptalg"};
  app.set_help_flag("--help");
  app.require_subcommand(1);
  app.fallthrough();

  std::string tol_text = "1e-10";
  std::uint64_t seed = 0;
  std::string format = "json";
  app.add_option("--tol", tol_text, "Tolerance for identity residuals");
  app.add_option("--seed", seed, "Seed for randomized runs");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::map<std::string, std::string> raw;
  struct Sub {
    Command command;
    CLI::App* app;
    bool complex_b_c;
  };
  std::vector<Sub> subs;
  auto add_sub = [&](const std::string& name, Command cmd, const std::string& help,
                     const std::vector<std::string>& keys, bool complex_keys) {
    CLI::App* s = app.add_subcommand(name, help);
    s->set_help_flag("--help");
    for (const auto& k : keys) {
      auto* opt = s->add_option("--" + k, raw[name + ":" + k]);
      if (k == "family") {
        opt->check(CLI::IsMember(cmd == Command::Rep4 ? std::vector<std::string>{"rep4-12", "rep4-block"}
                                                      : std::vector<std::string>{"rep2", "rep4-12", "rep4-block"}));
      }
      if (k == "route") opt->check(CLI::IsMember({"recursion", "genfunc", "both"}));
    }
    subs.push_back({cmd, s, complex_keys});
  };
  add_sub("rep2", Command::Rep2, "2x2 representation and Hamiltonian",
          {"b", "c", "sign", "alpha", "beta", "gamma"}, false);
  add_sub("rep4", Command::Rep4, "4x4 representations",
          {"family", "a", "b", "c", "f", "g4", "h", "alpha", "beta4", "fsign", "gamma"}, true);
  add_sub("verify", Command::Verify, "Randomized identity checks", {"family", "trials"}, false);
  add_sub("lee-spectrum", Command::LeeSpectrum, "Truncated one-fermion spectrum vs exact",
          {"m", "M", "g", "nmax"}, false);
  add_sub("lee-coeffs", Command::LeeCoeffs, "Recursion and generating-function coefficients",
          {"m", "M", "g", "N", "terms", "route", "E"}, false);
  add_sub("lee-converge", Command::LeeConverge, "Truncation convergence of one level",
          {"m", "M", "g", "N", "nmax"}, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);

  RunConfig cfg;
  cfg.tolerance = parse_real("tol", tol_text);
  if (!(cfg.tolerance > 0.0)) throw ParameterError("--tol must be positive");
  cfg.seed = seed;
  cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  for (const auto& sub : subs) {
    if (!sub.app->parsed()) continue;
    cfg.command = sub.command;
    const std::string prefix = sub.app->get_name() + ":";
    for (const auto* opt : sub.app->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      const std::string key = opt->get_name().substr(2);
      const std::string& text = raw[prefix + key];
      if (kIntegerKeys.count(key)) {
        cfg.parameters[key] = parse_integer(key, text);
      } else if (kStringKeys.count(key)) {
        cfg.parameters[key] = text;
      } else if (sub.complex_b_c && kComplexKeysRep4.count(key)) {
        cfg.parameters[key] = parse_complex(text);
      } else {
        cfg.parameters[key] = parse_real(key, text);
      }
    }
  }
  if (cfg.command == Command::Rep4 && !cfg.parameters.count("family")) {
    cfg.parameters["family"] = std::string("rep4-block");
  }
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Report r;
  r.tol = config.tolerance;
  std::vector<std::vector<std::string>> csv;
  const Params in(config);
  try {
    if (!(config.tolerance > 0.0)) throw ParameterError("tolerance must be positive");
    switch (config.command) {
      case Command::Rep2:
        run_rep2(in, r);
        break;
      case Command::Rep4:
        if (in.text("family", "rep4-block") == "rep4-12") {
          run_rep4_twelve(in, r);
        } else if (in.text("family", "rep4-block") == "rep4-block") {
          run_rep4_block(in, r);
        } else {
          throw ParameterError("rep4 --family must be rep4-12 or rep4-block");
        }
        break;
      case Command::Verify:
        run_verify(in, config, r);
        break;
      case Command::LeeSpectrum:
        run_lee_spectrum(in, r, csv);
        break;
      case Command::LeeCoeffs:
        run_lee_coeffs(in, r, csv);
        break;
      case Command::LeeConverge:
        run_lee_converge(in, r, csv);
        break;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }

  const bool pass = r.pass();
  if (config.format == OutputFormat::Csv) {
    if (csv.empty()) residual_csv(r, csv);
    write_csv(csv, out);
  } else {
    Json doc = Json::object();
    doc["command"] = command_name(config.command);
    Json params = r.parameters;
    for (const auto& [k, v] : config.parameters)
      if (!params.contains(k)) params[k] = param_json(v);
    params["tol"] = config.tolerance;
    doc["parameters"] = std::move(params);
    doc["results"] = std::move(r.results);
    doc["residuals"] = std::move(r.residuals);
    doc["pass"] = pass;
    write_json(doc, out, 2, 0);
    out << "\n";
  }
  if (!pass) err << "verification failed: residual above tolerance " << format_double(config.tolerance) << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const CLI::CallForHelp&) {
    out << "usage: ptalg {rep2|rep4|verify|lee-spectrum|lee-coeffs|lee-converge} [options]\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n"
        << "usage: ptalg {rep2|rep4|verify|lee-spectrum|lee-coeffs|lee-converge} [options]\n"
        << "  common: --tol <real> --seed <int> --format {json|csv}\n"
        << "  rep2: --b --c --sign --alpha --beta --gamma\n"
        << "  rep4: --family {rep4-12|rep4-block} --a --b --c --f --g4 --h (complex, e.g. 1+2i)\n"
        << "        --alpha --beta4 --fsign --gamma\n"
        << "  verify: --family {rep2|rep4-12|rep4-block} --trials <int>\n"
        << "  lee-spectrum: --m --M --g --nmax\n"
        << "  lee-coeffs: --m --M --g --N --terms --route {recursion|genfunc|both} [--E]\n"
        << "  lee-converge: --m --M --g --N --nmax\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return run(cfg, out, err);
}

}  // namespace ptalg::cli
