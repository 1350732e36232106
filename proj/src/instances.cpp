#include "hr1/instances.hpp"

namespace hr1 {

namespace {
Expo e_x1k(int n, int p, int k = 0) {
    Expo e(static_cast<size_t>(n), 0);
    e[0] = p;
    if (k >= 2) e[static_cast<size_t>(k - 1)] += 1;
    return e;
}
} // namespace

IndependentJetData random_normalized_data(int n, int trunc, SeededRng& rng, bool force_last_zero) {
    IndependentJetData d;
    d.dimension = n;
    d.truncation = trunc;
    d.set(e_x1k(n, 2), Coeff(Rational(1, 2)));
    if (n >= 2) d.set(e_x1k(n, 2, 2), Coeff(Rational(1, 2)));
    for (int m = 3; m <= n && m + 1 <= trunc; ++m)
        d.set(e_x1k(n, m, m), Coeff(Rational(1) / factorial(m)));
    auto put_random = [&](const Expo& e, bool nonzero = false) {
        if (expo_degree(e) > trunc) return;
        Rational v = nonzero ? rng.nonzero_rational() : rng.rational();
        Rational fact(1);
        for (int x : e) fact *= factorial(x);
        d.set(e, Coeff(v / fact));
    };
    if (trunc >= n + 2) put_random(e_x1k(n, n + 1, 2));
    if (trunc >= n + 3) {
        put_random(e_x1k(n, n + 3));
        put_random(e_x1k(n, n + 2, 2));
        for (int k = 4; k < n; ++k) put_random(e_x1k(n, n + 2, k));
        // Branch split of the nonexistence proof.
        Expo last = e_x1k(n, n + 2, n);
        if (force_last_zero) d.set(last, Coeff());
        else put_random(last, true);
    }
    if (trunc >= n + 4) {
        put_random(e_x1k(n, n + 4));
        for (int k = 2; k <= n; ++k) put_random(e_x1k(n, n + 3, k));
    }
    if (trunc >= n + 5) {
        put_random(e_x1k(n, n + 5));
        for (int k = 2; k <= n; ++k) put_random(e_x1k(n, n + 4, k));
    }
    return d;
}

Series random_normalized_instance(int n, int trunc, uint64_t seed, bool force_last_zero,
                                  int grade_cap) {
    SeededRng rng(seed);
    return complete_rank1(random_normalized_data(n, trunc, rng, force_last_zero), grade_cap);
}

IndependentJetData random_independent_data(int n, int trunc, SeededRng& rng) {
    IndependentJetData d;
    d.dimension = n;
    d.truncation = trunc;
    d.set(e_x1k(n, 2), Coeff(rng.nonzero_rational()));
    for (int k = 2; k <= n; ++k) {
        Expo e(static_cast<size_t>(n), 0);
        e[0] = 1;
        e[static_cast<size_t>(k - 1)] = 1;
        d.set(e, Coeff(rng.rational(2)));
    }
    for (int deg = 3; deg <= trunc; ++deg) {
        d.set(e_x1k(n, deg), Coeff(rng.rational()));
        for (int k = 2; k <= n; ++k) d.set(e_x1k(n, deg - 1, k), Coeff(rng.rational()));
    }
    return d;
}

Series random_rank1_graph(int n, int trunc, uint64_t seed, int grade_cap) {
    SeededRng rng(seed);
    return complete_rank1(random_independent_data(n, trunc, rng), grade_cap);
}

} // namespace hr1
