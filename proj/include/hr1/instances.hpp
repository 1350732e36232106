#pragma once

#include "hr1/rank1.hpp"
#include "hr1/rng.hpp"

namespace hr1 {

// Seeded numeric instance in the normalized template shape: chain monomials,
// random surviving invariants through order n+5, zeros on the killed slots.
// force_last_zero pins F[n+2,0..0,1] = 0 (the branch split of the verdict).
IndependentJetData random_normalized_data(int n, int trunc, SeededRng& rng, bool force_last_zero);

Series random_normalized_instance(int n, int trunc, uint64_t seed, bool force_last_zero,
                                  int grade_cap = -1);

// Random rank-1 graph that is *not* normalized: random independent jets with
// a generic order-2 part. Used by pipeline and property tests.
IndependentJetData random_independent_data(int n, int trunc, SeededRng& rng);

Series random_rank1_graph(int n, int trunc, uint64_t seed, int grade_cap = -1);

} // namespace hr1
