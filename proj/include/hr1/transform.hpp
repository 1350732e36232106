#pragma once

#include "hr1/series.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hr1 {

// Affine map of the ambient space R^{n+1} with coordinates (x_1..x_n, u):
// (y, v) = M (x, u) + translation. Rows and columns 0..n-1 are the x's,
// row/column n is the graph coordinate.
struct AffineTransform {
    int n = 0;
    std::vector<std::vector<Coeff>> M;
    std::vector<Coeff> translation;
    std::string label;

    static AffineTransform identity(int n, const std::string& label = "identity") {
        AffineTransform t;
        t.n = n;
        t.label = label;
        t.M.assign(static_cast<size_t>(n + 1), std::vector<Coeff>(static_cast<size_t>(n + 1)));
        for (int i = 0; i <= n; ++i) t.M[static_cast<size_t>(i)][static_cast<size_t>(i)] = Coeff(1);
        t.translation.assign(static_cast<size_t>(n + 1), Coeff());
        return t;
    }

    bool is_identity() const {
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                const Coeff& v = M[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (i == j && !(v == Coeff(1))) return false;
                if (i != j && !v.is_zero()) return false;
            }
            if (!translation[static_cast<size_t>(i)].is_zero()) return false;
        }
        return true;
    }

    // Composite mapping x -> other(x) -> this(other(x)).
    AffineTransform after(const AffineTransform& other) const {
        if (n != other.n) throw std::invalid_argument("transform dimension mismatch");
        AffineTransform r = identity(n, label + " . " + other.label);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                Coeff s;
                for (int k = 0; k <= n; ++k)
                    s.add_mul(M[static_cast<size_t>(i)][static_cast<size_t>(k)],
                              other.M[static_cast<size_t>(k)][static_cast<size_t>(j)]);
                r.M[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
            }
        for (int i = 0; i <= n; ++i) {
            Coeff s = translation[static_cast<size_t>(i)];
            for (int k = 0; k <= n; ++k)
                s.add_mul(M[static_cast<size_t>(i)][static_cast<size_t>(k)],
                          other.translation[static_cast<size_t>(k)]);
            r.translation[static_cast<size_t>(i)] = s;
        }
        return r;
    }
};

// Elementary origin-fixing maps; everything the normalization pipeline emits
// is a composition of these, so the new graphing function is always exactly
// computable.
struct ElementaryMap {
    enum class Kind {
        SwapVars, // y_i = x_j, y_j = x_i
        ScaleVar, // y_k = c x_k
        ScaleU,   // v = d u
        ShearX,   // y_k = x_k + sum_j L_j x_j (L_k = 0)
        ShearB,   // y_k = x_k + t u
    };
    Kind kind;
    int k = 0, j = 0;          // variable indices, 0-based
    Coeff c;                   // scale / shear parameter
    std::vector<Coeff> L;      // ShearX row
    std::string label;

    static ElementaryMap swap_vars(int i, int j, const std::string& label) {
        ElementaryMap e{Kind::SwapVars, i, j, Coeff(), {}, label};
        return e;
    }
    static ElementaryMap scale_var(int k, const Coeff& c, const std::string& label) {
        ElementaryMap e{Kind::ScaleVar, k, 0, c, {}, label};
        return e;
    }
    static ElementaryMap scale_u(const Coeff& d, const std::string& label) {
        ElementaryMap e{Kind::ScaleU, 0, 0, d, {}, label};
        return e;
    }
    static ElementaryMap shear_x(int k, const std::vector<Coeff>& L, const std::string& label) {
        ElementaryMap e{Kind::ShearX, k, 0, Coeff(), L, label};
        return e;
    }
    static ElementaryMap shear_b(int k, const Coeff& t, const std::string& label) {
        ElementaryMap e{Kind::ShearB, k, 0, t, {}, label};
        return e;
    }

    AffineTransform matrix(int n) const {
        AffineTransform t = AffineTransform::identity(n, label);
        switch (kind) {
            case Kind::SwapVars: {
                auto& Mi = t.M[static_cast<size_t>(k)];
                auto& Mj = t.M[static_cast<size_t>(j)];
                Mi[static_cast<size_t>(k)] = Coeff();
                Mj[static_cast<size_t>(j)] = Coeff();
                Mi[static_cast<size_t>(j)] = Coeff(1);
                Mj[static_cast<size_t>(k)] = Coeff(1);
                break;
            }
            case Kind::ScaleVar:
                t.M[static_cast<size_t>(k)][static_cast<size_t>(k)] = c;
                break;
            case Kind::ScaleU:
                t.M[static_cast<size_t>(n)][static_cast<size_t>(n)] = c;
                break;
            case Kind::ShearX:
                for (int i = 0; i < n; ++i)
                    if (i != k && !L[static_cast<size_t>(i)].is_zero())
                        t.M[static_cast<size_t>(k)][static_cast<size_t>(i)] = L[static_cast<size_t>(i)];
                break;
            case Kind::ShearB:
                t.M[static_cast<size_t>(k)][static_cast<size_t>(n)] = c;
                break;
        }
        return t;
    }
};

namespace graphring {

// Lift an x-series into the (x, u) ring, u carrying weight 2.
inline Series lift(const Series& F, int extra_trunc = -1) {
    int n = F.nvars();
    int t = extra_trunc < 0 ? F.trunc() : extra_trunc;
    std::vector<Series::Term> terms;
    for (auto& [k, v] : F.terms()) {
        Expo e = mono::unpack(k, n);
        e.push_back(0);
        if (expo_degree(e) <= t) terms.push_back({mono::pack(e.data(), n + 1, 2), v});
    }
    return Series::from_sorted(n + 1, t, 2, std::move(terms));
}

// -u + F(x) as a graph-ring element.
inline Series graph_equation(const Series& F) {
    Series W = lift(F);
    Expo u(static_cast<size_t>(F.nvars() + 1), 0);
    u[static_cast<size_t>(F.nvars())] = 1;
    W.add_coeff(u, Coeff(Rational(-1)));
    return W;
}

// Decompose W = sum_b W_b(x) u^b into x-ring slices.
inline std::vector<Series> u_slices(const Series& W) {
    int n = W.nvars() - 1;
    int maxb = 0;
    for (auto& [k, v] : W.terms()) maxb = std::max(maxb, mono::exp_of(k, n));
    std::vector<Series> out(static_cast<size_t>(maxb + 1), Series(n, W.trunc()));
    for (auto& [k, v] : W.terms()) {
        Expo e = mono::unpack(k, n + 1);
        int b = e.back();
        e.pop_back();
        out[static_cast<size_t>(b)].add_coeff(e, v);
    }
    return out;
}

// Substitute u := F into a graph-ring element (Horner in u).
inline Series substitute_u(const Series& W, const Series& F) {
    auto Wb = u_slices(W);
    int t = std::min(W.trunc(), F.trunc());
    Series val = Wb.back().with_trunc(t);
    for (int b = static_cast<int>(Wb.size()) - 2; b >= 0; --b) {
        val = val * F.with_trunc(t);
        val += Wb[static_cast<size_t>(b)].with_trunc(t);
    }
    return val;
}

// Solve W(y, v) = 0 for v = G(y). Requires the v-coefficient at the origin
// to be a nonzero rational and the pure-x part to vanish to order >= 2.
inline Series solve_graph(const Series& W) {
    int n = W.nvars() - 1;
    int N = W.trunc();
    auto Wb = u_slices(W);
    if (Wb.size() < 2) throw std::domain_error("solve_graph: no v dependence");
    Expo zero(static_cast<size_t>(n), 0);
    Rational c1 = Wb[1].coeff(zero).rational_value();
    if (c1 == 0) throw std::domain_error("solve_graph: vanishing v-coefficient at origin");
    if (!Wb[0].coeff(zero).is_zero())
        throw std::domain_error("solve_graph: graph does not pass through the origin");
    Series W1rest = Wb[1];
    W1rest.set_coeff(zero, Coeff());

    Series G(n, 2); // current approximation, truncation grows by one per pass
    for (int t = 2; t <= N; ++t) {
        Series acc = Wb[0].with_trunc(t);
        Series Gt = G.with_trunc(t);
        acc += W1rest.with_trunc(t) * Gt;
        if (Wb.size() > 2) {
            Series p = Gt;
            for (size_t b = 2; b < Wb.size(); ++b) {
                p = p * Gt;
                acc += Wb[b].with_trunc(t) * p;
            }
        }
        G = acc * Rational(-1 / Rational(c1));
    }
    // One stabilization pass at full truncation.
    for (int pass = 0; pass < 2; ++pass) {
        Series acc = Wb[0].with_trunc(N);
        acc += W1rest.with_trunc(N) * G;
        if (Wb.size() > 2) {
            Series p = G;
            for (size_t b = 2; b < Wb.size(); ++b) {
                p = p * G;
                acc += Wb[b].with_trunc(N) * p;
            }
        }
        Series next = acc * Rational(-1 / Rational(c1));
        if (next == G) break;
        G = next;
        if (pass == 1) throw std::logic_error("solve_graph: fixed point did not stabilize");
    }
    return G;
}

} // namespace graphring

// New graphing function of the image surface: u = F(x) pushed through an
// elementary map.
inline Series apply_to_graph(const Series& F, const ElementaryMap& e) {
    int n = F.nvars();
    switch (e.kind) {
        case ElementaryMap::Kind::SwapVars: {
            Series G(n, F.trunc());
            std::vector<Series::Term> terms;
            for (auto& [k, v] : F.terms()) {
                Expo ex = mono::unpack(k, n);
                std::swap(ex[static_cast<size_t>(e.k)], ex[static_cast<size_t>(e.j)]);
                terms.push_back({mono::pack(ex.data(), n, 1), v});
            }
            std::sort(terms.begin(), terms.end(),
                      [](const Series::Term& a, const Series::Term& b) { return a.first < b.first; });
            return Series::from_sorted(n, F.trunc(), 1, std::move(terms));
        }
        case ElementaryMap::Kind::ScaleVar: {
            // y_k = c x_k  =>  x_k = y_k / c
            Rational c = e.c.rational_value();
            if (c == 0) throw std::domain_error("scale by zero");
            Series G(n, F.trunc());
            for (auto& [k, v] : F.terms()) {
                int ek = mono::exp_of(k, e.k);
                G.set_coeff(k, v * pow_rat(c, -ek));
            }
            return G;
        }
        case ElementaryMap::Kind::ScaleU: {
            Rational d = e.c.rational_value();
            if (d == 0) throw std::domain_error("scale by zero");
            return F * Coeff(d);
        }
        case ElementaryMap::Kind::ShearX: {
            // inverse: x_k = y_k - sum L_j y_j
            Series R = Series::variable(n, F.trunc(), e.k);
            for (int i = 0; i < n; ++i) {
                if (i == e.k || e.L[static_cast<size_t>(i)].is_zero()) continue;
                R += Series::variable(n, F.trunc(), i) * -e.L[static_cast<size_t>(i)];
            }
            return F.subst_single(e.k, R);
        }
        case ElementaryMap::Kind::ShearB: {
            // inverse in graph coordinates: x_k = y_k - t v
            Series W = graphring::graph_equation(F);
            Series R = Series::variable(n + 1, W.trunc(), e.k, 2);
            R += Series::variable(n + 1, W.trunc(), n, 2) * -e.c;
            Series Wp = W.subst_single(e.k, R);
            return graphring::solve_graph(Wp);
        }
    }
    throw std::logic_error("unreachable");
}

// The fundamental-equation residual of a single elementary stage: with
// v-row (c | d) of the stage matrix,
//   E(x) = -(c.x + d F(x)) + G(a.x + b F(x)),
// computed by direct forward substitution, independent of the inverse-map
// route used by apply_to_graph. Zero iff the stage maps {u=F} into {v=G}.
inline Series fundamental_equation_residual(const Series& F, const ElementaryMap& e, const Series& G) {
    int n = F.nvars();
    Series composed = Series::zero_like(G);
    switch (e.kind) {
        case ElementaryMap::Kind::SwapVars: {
            std::vector<Series::Term> terms;
            for (auto& [k, v] : G.terms()) {
                Expo ex = mono::unpack(k, n);
                std::swap(ex[static_cast<size_t>(e.k)], ex[static_cast<size_t>(e.j)]);
                terms.push_back({mono::pack(ex.data(), n, 1), v});
            }
            std::sort(terms.begin(), terms.end(),
                      [](const Series::Term& a, const Series::Term& b) { return a.first < b.first; });
            composed = Series::from_sorted(n, G.trunc(), 1, std::move(terms));
            return composed - F;
        }
        case ElementaryMap::Kind::ScaleVar: {
            Series R = Series::variable(n, G.trunc(), e.k) * e.c;
            composed = G.subst_single(e.k, R);
            return composed - F;
        }
        case ElementaryMap::Kind::ScaleU:
            return G - F * e.c;
        case ElementaryMap::Kind::ShearX: {
            Series R = Series::variable(n, G.trunc(), e.k);
            for (int i = 0; i < n; ++i)
                if (i != e.k && !e.L[static_cast<size_t>(i)].is_zero())
                    R += Series::variable(n, G.trunc(), i) * e.L[static_cast<size_t>(i)];
            composed = G.subst_single(e.k, R);
            return composed - F;
        }
        case ElementaryMap::Kind::ShearB: {
            Series R = Series::variable(n, G.trunc(), e.k) + F * e.c;
            composed = G.subst_single(e.k, R);
            return composed - F;
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace hr1
