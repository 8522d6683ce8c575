#include <gtest/gtest.h>

#include <cmath>

#include "ptalg/lee_model.hpp"
#include "test_support.hpp"

namespace ptalg::lee {
namespace {

using testing::Close;

LeeParams params(double m, double M, double g, int n_max = 64) { return {m, M, g, n_max}; }

double factorial(int n) { return std::tgamma(n + 1.0); }

// Largest termwise |x - y| / max(|x|, |y|) over the first `count` terms.
double max_rel_diff(const CoeffSequence& a, const CoeffSequence& b, std::size_t count) {
  double worst = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    const double x = a.values[n], y = b.values[n];
    const double s = std::max(std::abs(x), std::abs(y));
    if (s > 0.0) worst = std::max(worst, std::abs(x - y) / s);
  }
  return worst;
}

const double kGridM[] = {0.5, 1.0, 2.0};
const double kGridBigM[] = {0.0, 1.0, 5.0};
const double kGridG[] = {0.1, 0.5, 1.0};

TEST(LeeParamsTest, Validation) {
  EXPECT_THROW(params(0.0, 1.0, 0.5).validate(), ParameterError);
  EXPECT_THROW(params(1.0, 1.0, 0.5, 0).validate(), ParameterError);
  EXPECT_THROW(params(1.0, std::nan(""), 0.5).validate(), ParameterError);
  EXPECT_NO_THROW(params(1.0, -3.0, 0.0).validate());
}

TEST(ExactSpectrumTest, Examples) {
  EXPECT_DOUBLE_EQ(exact_spectrum(params(1, 1, 0.5), 0), 0.75);
  EXPECT_DOUBLE_EQ(exact_spectrum(params(1.5, 2, 0), 4), 8.0);
  EXPECT_DOUBLE_EQ(exact_spectrum(params(2, 0, 2), 3), 4.0);
  EXPECT_THROW(exact_spectrum(params(1, 1, 0.5), -1), ParameterError);
}

TEST(RenormalizedMassTest, Examples) {
  EXPECT_DOUBLE_EQ(renormalized_mass(params(1, 1, 0.5)), 0.75);
  EXPECT_DOUBLE_EQ(renormalized_mass(params(1, 3, 0)), 3.0);
  EXPECT_DOUBLE_EQ(renormalized_mass(params(2, 5, 1)), 4.5);
}

TEST(RenormalizedMassTest, StrictlyBelowBareMassOnGrid) {
  for (double m : kGridM)
    for (double M : kGridBigM)
      for (double g : kGridG) {
        EXPECT_LT(renormalized_mass(params(m, M, g)), M);
        EXPECT_LT(renormalized_mass(params(m, M, -g)), M);
      }
}

TEST(OneFermionTridiagTest, Examples) {
  const auto free = one_fermion_tridiag(params(1.5, 2.0, 0.0, 3));
  EXPECT_EQ(free.diag, (std::vector<double>{2.0, 3.5, 5.0, 6.5}));
  EXPECT_EQ(free.offdiag, (std::vector<double>{0.0, 0.0, 0.0}));

  const auto t = one_fermion_tridiag(params(1, 1, 0.5, 2));
  EXPECT_EQ(t.diag, (std::vector<double>{1.0, 2.0, 3.0}));
  ASSERT_EQ(t.offdiag.size(), 2u);
  EXPECT_DOUBLE_EQ(t.offdiag[0], 0.5);
  EXPECT_DOUBLE_EQ(t.offdiag[1], 0.5 * std::sqrt(2.0));
  const Matrix dense = t.to_matrix();
  EXPECT_EQ(dense, transpose(dense));
}

TEST(TruncatedSpectrumTest, Examples) {
  const auto rep = truncated_spectrum(params(1, 1, 0.5, 64));
  EXPECT_NEAR(rep.truncated[0], 0.75, 1e-8);
  for (int n = 0; n <= 5; ++n) EXPECT_NEAR(rep.truncated[static_cast<std::size_t>(n)], 0.75 + n, 1e-8);
  EXPECT_EQ(rep.scored_levels, 33);
  EXPECT_EQ(rep.converged_levels, rep.scored_levels);

  const auto free = truncated_spectrum(params(0.7, 2.0, 0.0, 20));
  for (int n = 0; n <= 20; ++n) {
    const auto i = static_cast<std::size_t>(n);
    EXPECT_NEAR(free.truncated[i], free.exact[i], 4 * std::numeric_limits<double>::epsilon() * free.exact[i]);
  }
}

TEST(TruncatedSpectrumTest, GridLowestLevels) {
  for (double m : kGridM)
    for (double M : kGridBigM)
      for (double g : kGridG) {
        const auto rep = truncated_spectrum(params(m, M, g, 64));
        for (int n = 0; n < 4; ++n) {
          const auto i = static_cast<std::size_t>(n);
          EXPECT_NEAR(rep.truncated[i], exact_spectrum(params(m, M, g), n), 1e-8) << m << " " << M << " " << g;
        }
      }
}

TEST(TruncatedSpectrumTest, EqualSpacing) {
  for (double m : kGridM)
    for (double g : kGridG) {
      const auto rep = truncated_spectrum(params(m, 1.0, g, 64));
      for (int n = 0; n + 1 < 10; ++n) {
        const auto i = static_cast<std::size_t>(n);
        EXPECT_NEAR(rep.truncated[i + 1] - rep.truncated[i], m, 1e-8);
      }
    }
}

TEST(TruncatedSpectrumTest, ErrorNonIncreasingInCutoff) {
  for (double m : kGridM)
    for (double g : kGridG)
      for (int level = 0; level < 6; ++level) {
        double previous = std::numeric_limits<double>::infinity();
        for (int n_max : {16, 32, 64}) {
          const auto p = params(m, 1.0, g, n_max);
          const double err = std::abs(truncated_spectrum(p).truncated[static_cast<std::size_t>(level)] -
                                      exact_spectrum(p, level));
          // Interlacing makes the truncated level decrease toward E_N; once
          // converged only rounding remains.
          EXPECT_LE(err, previous + 1e-13) << m << " " << g << " N=" << level << " nmax=" << n_max;
          previous = err;
        }
      }
}

TEST(RecursionTest, GroundStateIsScaledExponential) {
  const auto p = params(1, 1, 0.5);
  const auto seq = recursion_coeffs(p, exact_spectrum(p, 0), 16);
  ASSERT_EQ(seq.values.size(), 16u);
  EXPECT_EQ(seq.d0, 1.0);
  for (int n = 0; n < 16; ++n) {
    const double expected = std::pow(-0.5, n) / factorial(n);
    EXPECT_LE(std::abs(seq.values[static_cast<std::size_t>(n)] - expected), 1e-9 * std::abs(expected)) << n;
  }
}

TEST(RecursionTest, NonEigenvalueRatioApproachesMOverG) {
  const auto p = params(1, 1, 0.5);
  const auto seq = recursion_coeffs(p, exact_spectrum(p, 0) + 0.3, 60);
  const double r = std::abs(seq.values[59] / seq.values[58]);
  EXPECT_NEAR(r, 2.0, 0.1);
  EXPECT_LT(std::abs(std::abs(seq.values[59] / seq.values[58]) - 2.0),
            std::abs(std::abs(seq.values[20] / seq.values[19]) - 2.0));
}

TEST(RecursionTest, TwoTermsAndErrors) {
  const auto p = params(1, 1, 0.5);
  const auto seq = recursion_coeffs(p, 2.0, 2);
  EXPECT_DOUBLE_EQ(seq.values[1], (2.0 - 1.0) / 0.5);
  EXPECT_THROW(recursion_coeffs(params(1, 1, 0), 1.0, 10), ParameterError);
  EXPECT_THROW(recursion_coeffs(p, 1.0, 1), ParameterError);
  EXPECT_THROW(recursion_coeffs(p, std::nan(""), 5), ParameterError);
}

TEST(RecursionTest, AtLevelMatchesDoubleEnergyForEarlyTerms) {
  const auto p = params(1, 1, 0.5);
  const auto a = recursion_coeffs_at_level(p, 2, 12);
  const auto b = recursion_coeffs(p, exact_spectrum(p, 2), 12);
  EXPECT_LE(max_rel_diff(a, b, 12), 1e-12);
}

TEST(GeneratingTest, Examples) {
  const auto p = params(1, 1, 0.5);
  const auto g0 = generating_coeffs(p, 0, 20);
  for (int n = 0; n < 20; ++n) {
    const double expected = std::pow(-0.5, n) / factorial(n);
    EXPECT_LE(std::abs(g0.values[static_cast<std::size_t>(n)] - expected), 1e-9 * std::abs(expected));
  }
  EXPECT_DOUBLE_EQ(generating_coeffs(p, 1, 5).values[1], 1.5);

  const auto free = generating_coeffs(params(1, 1, 0.0), 0, 6);
  EXPECT_EQ(free.values, (std::vector<double>{1, 0, 0, 0, 0, 0}));
  EXPECT_THROW(generating_coeffs(params(1, 1, 0.0), 1, 6), ParameterError);
  EXPECT_THROW(generating_coeffs(p, -1, 6), ParameterError);
}

TEST(DualRouteTest, AgreeForLowLevels) {
  const auto p = params(1, 1, 0.5);
  for (int level = 0; level <= 3; ++level) {
    const auto rec = recursion_coeffs_at_level(p, level, 21);
    const auto gen = generating_coeffs(p, level, 21);
    EXPECT_LE(max_rel_diff(rec, gen, 21), 1e-9) << "N=" << level;
  }
}

TEST(DualRouteTest, ThreeWayAgreementOnGrid) {
  for (double m : kGridM)
    for (double M : kGridBigM)
      for (double g : kGridG) {
        const auto p = params(m, M, g, 64);
        const auto spectrum = truncated_spectrum(p);
        for (int level = 0; level <= 3; ++level) {
          const auto rec = recursion_coeffs_at_level(p, level, 21);
          const auto gen = generating_coeffs(p, level, 21);
          EXPECT_LE(max_rel_diff(rec, gen, 21), 1e-8) << m << " " << M << " " << g << " N=" << level;
          EXPECT_NEAR(spectrum.truncated[static_cast<std::size_t>(level)], exact_spectrum(p, level), 1e-8);
          // Large g/m needs a longer sequence before the asymptotic balance shows;
          // exact arithmetic keeps the long recursion clean.
          const auto tail = recursion_coeffs_at_level(p, level, 60);
          EXPECT_EQ(classify_balance(tail, p), Balance::Normalizable) << m << " " << M << " " << g << " N=" << level;
        }
      }
}

TEST(ClassifyTest, Examples) {
  const auto p = params(1, 1, 0.5);
  for (int level = 0; level <= 3; ++level) {
    EXPECT_EQ(classify_balance(recursion_coeffs_at_level(p, level, 24), p), Balance::Normalizable);
    EXPECT_EQ(classify_balance(generating_coeffs(p, level, 24), p), Balance::Normalizable);
    const double off = exact_spectrum(p, level) + 0.3 * p.m;
    EXPECT_EQ(classify_balance(recursion_coeffs(p, off, 24), p), Balance::NonNormalizable);
  }
  CoeffSequence zeros;
  zeros.values.assign(24, 0.0);
  zeros.values[0] = 1.0;
  EXPECT_EQ(classify_balance(zeros, p), Balance::Inconclusive);
  CoeffSequence shortseq;
  shortseq.values.assign(9, 1.0);
  EXPECT_EQ(classify_balance(shortseq, p), Balance::Inconclusive);
  EXPECT_STREQ(to_string(Balance::Normalizable), "normalizable");
}

TEST(NormPartialSumTest, GroundStateConverges) {
  const auto p = params(1, 1, 0.5);
  const auto seq = recursion_coeffs_at_level(p, 0, 40);
  const double s29 = norm_partial_sum(seq, 29);
  const double s30 = norm_partial_sum(seq, 30);
  EXPECT_LT(s30 - s29, 1e-12);
  // sum (1/4)^n / n! = e^{1/4}
  EXPECT_NEAR(norm_partial_sum(seq, 39), std::exp(0.25), 1e-14);
}

TEST(NormPartialSumTest, NonEigenvalueDiverges) {
  const auto p = params(1, 1, 0.5);
  const auto seq = recursion_coeffs(p, exact_spectrum(p, 0) + 0.3, 60);
  double prev_increment = 0.0;
  int sustained = 0;
  for (int n = 20; n < 60; ++n) {
    const double increment = norm_partial_sum(seq, n) - norm_partial_sum(seq, n - 1);
    if (n > 20 && increment > prev_increment) ++sustained;
    prev_increment = increment;
  }
  EXPECT_EQ(sustained, 39);
}

TEST(NormPartialSumTest, OverflowIsFlagged) {
  const auto p = params(1, 1, 0.5);
  const auto seq = recursion_coeffs(p, exact_spectrum(p, 0) + 0.3, 200);
  EXPECT_THROW(norm_partial_sum(seq, 199), DivergenceError);
}

TEST(NormPartialSumTest, FreeCase) {
  CoeffSequence seq;
  seq.values = {1.0, 0.0, 0.0, 0.0};
  EXPECT_EQ(norm_partial_sum(seq, 3), 1.0);
  EXPECT_THROW(norm_partial_sum(seq, 4), ParameterError);
}

TEST(FullHamiltonianTest, SectorBlocksAreExactlyDecoupled) {
  const rep2::Rep2Params rep{1.0, -1.0, Sign::Plus};
  for (int n_max : {4, 32}) {
    const auto p = params(1, 1, 0.5, n_max);
    const auto blocks = sector_blocks(p, rep);
    EXPECT_EQ(blocks.off_block_max, 0.0);
    std::vector<Complex> bosons;
    for (int n = 0; n <= n_max; ++n) bosons.push_back(n * p.m);
    EXPECT_TRUE(Close(blocks.zero_fermion, Matrix::diagonal(bosons), 1e-12));
    EXPECT_TRUE(Close(blocks.one_fermion, one_fermion_tridiag(p).to_matrix(), 1e-12));
  }
}

TEST(FullHamiltonianTest, SectorBasisIsSimilarityOfFullMatrix) {
  const rep2::Rep2Params rep{2.0, -0.5, Sign::Minus};
  const auto p = params(1.3, 0.4, 0.7, 6);
  const Matrix basis = sector_transform(rep);
  const Complex det = basis(0, 0) * basis(1, 1) - basis(0, 1) * basis(1, 0);
  const Matrix inverse{{basis(1, 1) / det, -basis(0, 1) / det}, {-basis(1, 0) / det, basis(0, 0) / det}};
  const Matrix id_b = Matrix::identity(static_cast<std::size_t>(p.n_max) + 1);
  const Matrix similar = kron(inverse, id_b) * full_hamiltonian(p, rep) * kron(basis, id_b);
  EXPECT_TRUE(Close(similar, full_hamiltonian_sector_basis(p, rep), 1e-12));
  const auto blocks = sector_blocks(p, rep);
  EXPECT_LE(blocks.off_block_max, 1e-12);
  EXPECT_TRUE(Close(blocks.one_fermion, one_fermion_tridiag(p).to_matrix(), 1e-12));
}

TEST(FullHamiltonianTest, FreeSpectrum) {
  const rep2::Rep2Params rep{1.0, -1.0, Sign::Plus};
  const auto p = params(0.5, 3.0, 0.0, 8);
  const auto blocks = sector_blocks(p, rep);
  for (std::size_t n = 0; n <= 8; ++n) {
    EXPECT_NEAR(blocks.zero_fermion(n, n).real(), 0.5 * n, 1e-15);
    EXPECT_NEAR(blocks.one_fermion(n, n).real(), 0.5 * n + 3.0, 1e-15);
  }
  const Matrix full = full_hamiltonian(p, rep);
  EXPECT_EQ(full.rows(), 18u);
}

}  // namespace
}  // namespace ptalg::lee
