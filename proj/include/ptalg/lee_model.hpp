#pragma once

#include <stdexcept>
#include <vector>

#include "ptalg/linalg.hpp"
#include "ptalg/rep2.hpp"

namespace ptalg::lee {

/// Fermion-boson model H = m a^dag a - M N - g (a^dag + a) N with
/// N = eta^PT eta, truncated to boson occupations n <= n_max.
struct LeeParams {
  double m = 1.0;       // bare boson mass, > 0
  double M_bare = 1.0;  // bare fermion mass
  double g_coup = 0.0;  // coupling amplitude
  int n_max = 1;

  /// Throws ParameterError unless m > 0 and n_max >= 1.
  void validate() const;
};

/// Coefficients d_0..d_{n-1} of a one-fermion state, sum_n d_n sqrt(n!) |1,n>.
struct CoeffSequence {
  std::vector<double> values;
  double d0 = 1.0;
};

struct SpectrumReport {
  std::vector<double> truncated;  // ascending, n_max + 1 values
  std::vector<double> exact;      // E_N for N = 0..n_max
  std::vector<double> abs_errors;
  int n_max = 0;
  /// Levels N <= n_max / 2; the top of a hard-wall truncation is unconverged.
  int scored_levels = 0;
  /// Scored levels with abs_error below the threshold.
  int converged_levels = 0;
  double threshold = 1e-8;
};

enum class Balance { Normalizable, NonNormalizable, Inconclusive };

const char* to_string(Balance b) noexcept;

class DivergenceError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// E_N = N m + M - g^2 / m.
double exact_spectrum(const LeeParams& p, int level);
/// M - g^2 / m.
double renormalized_mass(const LeeParams& p);

/// One-fermion sector in the |1, n> basis: diag m n + M, offdiag g sqrt(n + 1).
SymTridiag one_fermion_tridiag(const LeeParams& p);

/// 2 (n_max + 1) square matrix in the product basis, index
/// fermion_component * (n_max + 1) + n. Uses the normalized pair of rep.
Matrix full_hamiltonian(const LeeParams& p, const rep2::Rep2Params& rep);

/// Columns are the ground and excited states of rep (zero and one fermion).
Matrix sector_transform(const rep2::Rep2Params& rep);

struct SectorBlocks {
  Matrix zero_fermion;  // (n_max + 1) square
  Matrix one_fermion;   // (n_max + 1) square
  /// Largest entry coupling the two sectors.
  double off_block_max;
};

/// H in the fermion-number basis, obtained by transforming the 2x2 fermion
/// factors with sector_transform and re-forming the Kronecker products.
Matrix full_hamiltonian_sector_basis(const LeeParams& p, const rep2::Rep2Params& rep);
SectorBlocks sector_blocks(const LeeParams& p, const rep2::Rep2Params& rep);

/// Diagonalizes one_fermion_tridiag and scores it against E_N.
SpectrumReport truncated_spectrum(const LeeParams& p, double threshold = 1e-8);

/// Forward recursion (m n + M) d_n + g d_{n-1} + g (n + 1) d_{n+1} = E d_n
/// with d_{-1} = 0, d_0 = 1. Evaluated in exact rational arithmetic on the
/// binary values of the inputs; the forward direction is unstable for the
/// subdominant solution and double precision loses it within a few terms.
/// Throws ParameterError for g = 0 or n_terms < 2.
CoeffSequence recursion_coeffs(const LeeParams& p, double energy, int n_terms);
/// Same recursion at E = E_N, with E_N formed exactly from m, M, g.
CoeffSequence recursion_coeffs_at_level(const LeeParams& p, int level, int n_terms);

/// Taylor coefficients of exp(-g x / m) (m x + g)^N normalized to d_0 = 1.
CoeffSequence generating_coeffs(const LeeParams& p, int level, int n_terms);

/// Tail analysis of r_n = d_{n+1} / d_n over the last quarter of seq. The
/// limits of r_n (n + 1) and r_n are estimated by a least-squares fit
/// linear in 1/(n + 1) and compared to -g/m and -m/g at 20%.
Balance classify_balance(const CoeffSequence& seq, const LeeParams& p);

/// sum_{n=0}^{upper} d_n^2 n!, terms formed in log space. Throws
/// DivergenceError if the sum overflows.
double norm_partial_sum(const CoeffSequence& seq, int upper);

}  // namespace ptalg::lee
