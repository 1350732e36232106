#pragma once

#include "hr1/instances.hpp"
#include "hr1/series.hpp"

#include <map>

namespace hr1::testutil {

inline Expo ex(std::initializer_list<int> e) { return Expo(e); }

inline Series series_of(int n, int trunc, std::initializer_list<std::pair<Expo, Rational>> entries) {
    Series s(n, trunc);
    for (auto& [e, v] : entries) s.add_coeff(e, Coeff(v));
    return s;
}

// Random sparse series of minimum order >= min_ord (test-data generator).
inline Series random_series(int n, int trunc, SeededRng& rng, int min_ord = 0, int terms = 12) {
    Series s(n, trunc);
    for (int t = 0; t < terms; ++t) {
        Expo e(static_cast<size_t>(n), 0);
        int deg = static_cast<int>(rng.integer(min_ord, trunc));
        for (int d = 0; d < deg; ++d) e[static_cast<size_t>(rng.integer(0, n - 1))] += 1;
        s.add_coeff(e, Coeff(rng.rational(4)));
    }
    return s;
}

// Brute-force product oracle: no truncation tricks, plain nested loops over
// term pairs, then an explicit degree filter. Stays independent of
// Series::operator*'s blocked/truncated path.
inline Series brute_multiply(const Series& a, const Series& b, int keep_order) {
    Series out(a.nvars(), std::min({keep_order, a.trunc() + b.trunc(), mono::kMaxDegree}));
    for (auto& [ka, va] : a.terms())
        for (auto& [kb, vb] : b.terms()) {
            Expo ea = mono::unpack(ka, a.nvars());
            Expo eb = mono::unpack(kb, b.nvars());
            Expo e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            if (expo_degree(e) > out.trunc()) continue;
            out.add_coeff(e, va * vb);
        }
    return out;
}

} // namespace hr1::testutil
