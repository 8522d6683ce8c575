#pragma once

#include <random>

#include "ptalg/rep2.hpp"
#include "ptalg/rep4.hpp"

/// Seeded parameter draws for randomized verification. All draws are
/// bounded uniform; rejection is used where a family has a constraint.
namespace ptalg::sampling {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
Complex uniform_complex(Rng& rng, double lo, double hi);
Sign random_sign(Rng& rng);

/// b, c in [-5, 5] with b c <= 0.
rep2::Rep2Params rep2_params(Rng& rng);
/// alpha in [-5, 5], beta and gamma in [0.05, 5].
rep2::Ham2Params ham2_unbroken(Rng& rng);

/// All six complex parameters with re, im in [-2, 2].
rep4::Rep4TwelveParams twelve_free(Rng& rng);
/// Draws satisfying a* F = -f, b* F = g4, c* F = h. With those relations
/// F = c h + b g4 + a f reduces to F = F (|b|^2 + |c|^2 - |a|^2), so a, b, F
/// are drawn freely and |c| is solved from |b|^2 + |c|^2 - |a|^2 = 1
/// (rejecting draws where that is impossible); arg c is uniform.
rep4::Rep4TwelveParams twelve_grassmann(Rng& rng);

/// b, c complex with re, im in [-2, 2]; alpha, beta4 in [-2, 2] with
/// alpha beta4 <= 0; random f sign.
rep4::Rep4BlockParams block_params(Rng& rng);
/// gamma in [-2, 2], g_c from the K^2 = 1 constraint (positive root).
rep4::Rep4CParams block_c_params(Rng& rng, const rep4::Rep4BlockParams& p);

}  // namespace ptalg::sampling
