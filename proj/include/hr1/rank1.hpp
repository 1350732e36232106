#pragma once

#include "hr1/series.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace hr1 {

// Symmetric matrix of second partials F_{x_i x_j}; entries truncated at
// source truncation - 2.
struct HessianMatrix {
    int n = 0;
    std::vector<Series> entries; // row-major upper triangle, i <= j

    const Series& at(int i, int j) const {
        if (i > j) std::swap(i, j);
        return entries[static_cast<size_t>(i * n - i * (i - 1) / 2 + (j - i))];
    }
};

inline HessianMatrix hessian(const Series& F) {
    if (F.trunc() < 2) throw std::invalid_argument("hessian requires truncation >= 2");
    HessianMatrix H;
    H.n = F.nvars();
    for (int i = 0; i < H.n; ++i) {
        Series di = F.deriv(i);
        for (int j = i; j < H.n; ++j) H.entries.push_back(di.deriv(j));
    }
    return H;
}

// Rank over Q of the Hessian evaluated at the origin. Requires numeric
// (parameter-free) second jets.
inline int hessian_rank_at_origin(const Series& F) {
    HessianMatrix H = hessian(F);
    int n = H.n;
    Expo zero(static_cast<size_t>(n), 0);
    std::vector<std::vector<Rational>> m(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = H.at(i, j).coeff(zero).rational_value();
    int rank = 0;
    for (int c = 0; c < n && rank < n; ++c) {
        int sel = -1;
        for (int r = rank; r < n; ++r)
            if (m[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[rank], m[sel]);
        for (int r = 0; r < n; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (int j = c; j < n; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Residuals of the constant-rank-1 identity in polynomial form,
// F_{x1x1} F_{xixj} - F_{x1xi} F_{x1xj}, indexed by pairs 2 <= i <= j <= n
// (1-based variable numbering as in displays). All residuals vanish
// identically to order N-2 iff F has constant Hessian rank 1 to order N.
struct Rank1Residuals {
    int n = 0;
    std::vector<std::pair<std::pair<int, int>, Series>> items; // ((i,j) 1-based), residual

    bool all_zero() const {
        for (auto& it : items)
            if (!it.second.is_zero()) return false;
        return true;
    }
};

inline Rank1Residuals rank1_residuals(const Series& F) {
    if (F.trunc() < 2) throw std::invalid_argument("rank1_residuals requires truncation >= 2");
    Expo zero(static_cast<size_t>(F.nvars()), 0);
    Series F1 = F.deriv(0);
    Series F11 = F1.deriv(0);
    if (F11.coeff(zero).is_zero())
        throw std::domain_error("rank1_residuals: F_{x1x1}(0) = 0; pivot first (order-2 normalization)");
    Rank1Residuals R;
    R.n = F.nvars();
    std::vector<Series> F1i;
    for (int i = 1; i < F.nvars(); ++i) F1i.push_back(F1.deriv(i));
    for (int i = 1; i < F.nvars(); ++i) {
        Series Fi = F.deriv(i);
        for (int j = i; j < F.nvars(); ++j) {
            Series Fij = Fi.deriv(j);
            Series resid = F11 * Fij - F1i[static_cast<size_t>(i - 1)] * F1i[static_cast<size_t>(j - 1)];
            R.items.push_back({{i + 1, j + 1}, std::move(resid)});
        }
    }
    return R;
}

// Independent jet data: the free part of a constant-rank-1 graph. Stored
// coefficients are plain monomial coefficients on exponents with
// sigma_2 + ... + sigma_n <= 1.
struct IndependentJetData {
    int dimension = 0;
    int truncation = 0;
    std::map<Expo, Coeff> values;

    void set(const Expo& e, const Coeff& v) {
        if (static_cast<int>(e.size()) != dimension) throw std::invalid_argument("independent jet arity mismatch");
        int xp = expo_degree(e) - e[0];
        if (xp > 1) throw std::invalid_argument("exponent is not independent (x'-degree >= 2)");
        if (expo_degree(e) > truncation) throw std::invalid_argument("independent jet above truncation");
        if (v.is_zero()) values.erase(e);
        else values[e] = v;
    }
};

// Extracts the independent part of a series as jet data.
inline IndependentJetData independent_jets(const Series& F) {
    IndependentJetData d;
    d.dimension = F.nvars();
    d.truncation = F.trunc();
    for (auto& [k, v] : F.terms()) {
        Expo e = mono::unpack(k, F.nvars());
        if (expo_degree(e) - e[0] <= 1) d.values[e] = v;
    }
    return d;
}

namespace detail {

// Inverse of a series with nonzero rational constant term, all of whose
// monomials are pure powers of x1.
inline Series invert_unit_x1(const Series& P, int trunc) {
    int n = P.nvars();
    Expo zero(static_cast<size_t>(n), 0);
    Rational c = P.coeff(zero).rational_value();
    if (c == 0) throw std::domain_error("series inversion requires a nonzero constant term");
    std::vector<Coeff> p(static_cast<size_t>(trunc + 1));
    for (auto& [k, v] : P.terms()) {
        int d = mono::deg(k);
        if (mono::exp_of(k, 0) != d) throw std::logic_error("invert_unit_x1: series is not pure-x1");
        if (d <= trunc) p[static_cast<size_t>(d)] = v;
    }
    std::vector<Coeff> inv(static_cast<size_t>(trunc + 1));
    inv[0] = Coeff(Rational(1) / c);
    for (int k = 1; k <= trunc; ++k) {
        Coeff s;
        for (int m = 1; m <= k; ++m) s.add_mul(p[static_cast<size_t>(m)], inv[static_cast<size_t>(k - m)]);
        inv[static_cast<size_t>(k)] = -(s / c);
    }
    Series R(n, trunc);
    for (int k = 0; k <= trunc; ++k) {
        if (inv[static_cast<size_t>(k)].is_zero()) continue;
        Expo e(static_cast<size_t>(n), 0);
        e[0] = k;
        R.set_coeff(e, inv[static_cast<size_t>(k)]);
    }
    return R;
}

} // namespace detail

// Completion of a series from its independent jets under the constant-rank-1
// identity. Dependent coefficients are produced grade-by-grade in x'-degree;
// each is computed from the lexicographically smallest determining pair and
// all other pairs are asserted as exact consistency checks.
//
// grade_cap limits the produced x'-degree (2 = independent + border only);
// pass a negative value for the full completion.
inline Series complete_rank1(const IndependentJetData& data, int grade_cap = -1) {
    int n = data.dimension;
    int N = data.truncation;
    if (n < 1) throw std::invalid_argument("complete_rank1: dimension must be positive");
    if (N < 2) throw std::invalid_argument("complete_rank1: truncation must be >= 2");
    if (grade_cap < 0) grade_cap = N;

    Expo pivot(static_cast<size_t>(n), 0);
    pivot[0] = 2;
    auto pv = data.values.find(pivot);
    if (pv == data.values.end() || pv->second.is_zero())
        throw std::domain_error("complete_rank1: missing pivot coefficient at x1^2");
    if (!pv->second.is_rational())
        throw std::domain_error("complete_rank1: pivot must be an invertible rational");

    // Grade slices F_(g): terms of x'-degree exactly g.
    std::vector<Series> slice(static_cast<size_t>(grade_cap + 1), Series(n, N));
    for (auto& [e, v] : data.values) {
        int xp = expo_degree(e) - e[0];
        slice[static_cast<size_t>(xp)].add_coeff(e, v);
    }

    Series P = slice[0].deriv(0).deriv(0); // pure-x1, unit constant term
    Series Inv = detail::invert_unit_x1(P, N - 2);

    // Cached second partials of completed slices: d11[g], d1i[g][i], dij on demand.
    auto d11 = [&](int g) { return slice[static_cast<size_t>(g)].deriv(0).deriv(0); };
    auto d1 = [&](int g, int i) { return slice[static_cast<size_t>(g)].deriv(0).deriv(i); };
    auto dij = [&](int g, int i, int j) { return slice[static_cast<size_t>(g)].deriv(i).deriv(j); };

    std::vector<Series> d11c, d1c_flat; // d11c[g]; d1c[g][i-1] flattened
    auto d1c = [&](int g, int i) -> const Series& {
        return d1c_flat[static_cast<size_t>(g * (n - 1) + (i - 1))];
    };
    auto refresh_cache_for = [&](int g) {
        d11c.push_back(d11(g));
        for (int i = 1; i < n; ++i) d1c_flat.push_back(d1(g, i));
    };
    refresh_cache_for(0);
    if (grade_cap >= 1) refresh_cache_for(1);

    for (int g = 2; g <= grade_cap; ++g) {
        // D[(i,j)] = d_i d_j of the unknown grade-g slice, derived from lower grades.
        std::vector<Series> D;
        D.reserve(static_cast<size_t>((n - 1) * n / 2));
        for (int i = 1; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                Series rhs(n, N - 2);
                for (int p = 0; p <= g - 2; ++p) {
                    int q = g - 2 - p;
                    if (p >= 1 && q + 2 <= g - 1) {
                        rhs -= d11c[static_cast<size_t>(p)] * dij(q + 2, i, j);
                    }
                    rhs += d1c(p + 1, i) * d1c(q + 1, j);
                }
                D.push_back(Inv * rhs);
            }
        }
        auto D_at = [&](int i, int j) -> const Series& {
            // i <= j, 1-based offsets into the 0-based triangle over vars 1..n-1
            int a = i - 1, b = j - 1; // 0-based within x' variables
            return D[static_cast<size_t>(a * (n - 1) - a * (a - 1) / 2 + (b - a))];
        };

        // Reconstruct the slice from the lexicographically smallest pair.
        Series& Sg = slice[static_cast<size_t>(g)];
        for (int i = 1; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                for (auto& [k, v] : D_at(i, j).terms()) {
                    Expo tau = mono::unpack(k, n);
                    Expo sig = tau;
                    sig[static_cast<size_t>(i)] += 1;
                    sig[static_cast<size_t>(j)] += 1;
                    if (expo_degree(sig) > N) continue;
                    // smallest determining pair of sig
                    int si = -1, sj = -1;
                    for (int a = 1; a < n && si < 0; ++a) {
                        if (sig[static_cast<size_t>(a)] >= 2) {
                            si = a;
                            sj = a;
                        } else if (sig[static_cast<size_t>(a)] == 1) {
                            si = a;
                            for (int b = a + 1; b < n; ++b)
                                if (sig[static_cast<size_t>(b)] >= 1) {
                                    sj = b;
                                    break;
                                }
                        }
                    }
                    if (si != i || sj != j) continue; // handled by the smallest pair
                    Rational scale = (i == j) ? Rational(sig[static_cast<size_t>(i)]) * (sig[static_cast<size_t>(i)] - 1)
                                              : Rational(sig[static_cast<size_t>(i)]) * sig[static_cast<size_t>(j)];
                    Sg.set_coeff(sig, v / scale);
                }
            }
        }

        // Consistency: every pair must reproduce its D exactly.
        for (int i = 1; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (!(dij(g, i, j) == D_at(i, j)))
                    throw std::logic_error("complete_rank1: inconsistent reconstruction at pair (" +
                                           std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                           "), grade " + std::to_string(g));

        refresh_cache_for(g);
    }

    Series F(n, N);
    for (auto& s : slice) F += s;
    return F;
}

} // namespace hr1
