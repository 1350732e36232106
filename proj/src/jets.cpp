#include "hr1/jets.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hr1 {

JetPolynomial total_derivative(JetRing& ring, const JetPolynomial& p, int i, int max_order) {
    int n = ring.n();
    if (i < 0 || i >= n) throw std::invalid_argument("total_derivative: index out of range");

    JetPolynomial out(&ring);
    // d/dx_i
    out += p.dvar(ring.var_x(i));
    // u_{e_i} d/du
    Expo ei(static_cast<size_t>(n), 0);
    ei[static_cast<size_t>(i)] = 1;
    JetPolynomial du = p.dvar(ring.var_u());
    if (!du.is_zero()) out += JetPolynomial::variable(&ring, ring.var_jet(ei)) * du;
    // sum over jet variables present in p
    // Collect ids first: p is immutable, but var_jet may extend the registry.
    std::vector<int> jet_ids;
    for (auto& [m, c] : p.terms())
        for (auto& [id, e] : m)
            if (ring.is_jet(id)) jet_ids.push_back(id);
    std::sort(jet_ids.begin(), jet_ids.end());
    jet_ids.erase(std::unique(jet_ids.begin(), jet_ids.end()), jet_ids.end());
    for (int id : jet_ids) {
        Expo nu = ring.jet_index(id);
        if (expo_degree(nu) + 1 > max_order)
            throw std::domain_error("total_derivative: jet order exceeds the representable bound");
        JetPolynomial dj = p.dvar(id);
        if (dj.is_zero()) continue;
        Expo nup = nu;
        nup[static_cast<size_t>(i)] += 1;
        out += JetPolynomial::variable(&ring, ring.var_jet(nup)) * dj;
    }
    return out;
}

ProlongedField prolong(const AffineVectorField& L, int kappa) {
    if (kappa < 1) throw std::invalid_argument("prolong: order must be >= 1");
    int n = L.n;
    ProlongedField P;
    P.n = n;
    P.order = kappa;
    P.ring = std::make_shared<JetRing>(n);
    JetRing& ring = *P.ring;

    auto affine_poly = [&](const Coeff& t, const std::vector<Coeff>& a, const Coeff& b) {
        JetPolynomial p = JetPolynomial::constant(&ring, t);
        for (int j = 0; j < n; ++j)
            if (!a[static_cast<size_t>(j)].is_zero())
                p += JetPolynomial::variable(&ring, ring.var_x(j), a[static_cast<size_t>(j)]);
        if (!b.is_zero()) p += JetPolynomial::variable(&ring, ring.var_u(), b);
        return p;
    };

    std::vector<JetPolynomial> X;
    for (int i = 0; i < n; ++i)
        X.push_back(affine_poly(L.T[static_cast<size_t>(i)], L.A[static_cast<size_t>(i)],
                                L.B[static_cast<size_t>(i)]));
    std::vector<Coeff> Crow(L.C);
    JetPolynomial U = affine_poly(L.T0, Crow, L.D);

    // Characteristic Q = U - sum X_i u_{e_i}.
    JetPolynomial Q = U;
    for (int i = 0; i < n; ++i) {
        Expo ei(static_cast<size_t>(n), 0);
        ei[static_cast<size_t>(i)] = 1;
        Q -= X[static_cast<size_t>(i)] * JetPolynomial::variable(&ring, ring.var_jet(ei));
    }

    // D^nu(Q) by memoized recursion on the first nonzero direction.
    std::map<Expo, JetPolynomial> dq;
    dq[Expo(static_cast<size_t>(n), 0)] = Q;
    std::function<const JetPolynomial&(const Expo&)> dpow = [&](const Expo& nu) -> const JetPolynomial& {
        auto it = dq.find(nu);
        if (it != dq.end()) return it->second;
        int dir = -1;
        for (int i = 0; i < n; ++i)
            if (nu[static_cast<size_t>(i)] > 0) {
                dir = i;
                break;
            }
        Expo prev = nu;
        prev[static_cast<size_t>(dir)] -= 1;
        JetPolynomial v = total_derivative(ring, dpow(prev), dir, kappa + 1);
        return dq.emplace(nu, std::move(v)).first->second;
    };

    // Enumerate multi-indices of order 1..kappa.
    std::vector<Expo> all;
    Expo cur(static_cast<size_t>(n), 0);
    std::function<void(int, int)> enumerate = [&](int pos, int left) {
        if (pos == n) {
            if (expo_degree(cur) >= 1) all.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[static_cast<size_t>(pos)] = e;
            enumerate(pos + 1, left - e);
        }
        cur[static_cast<size_t>(pos)] = 0;
    };
    enumerate(0, kappa);

    for (auto& nu : all) {
        JetPolynomial Unu = dpow(nu);
        for (int i = 0; i < n; ++i) {
            Expo nup = nu;
            nup[static_cast<size_t>(i)] += 1;
            Unu += X[static_cast<size_t>(i)] * JetPolynomial::variable(&ring, ring.var_jet(nup));
        }
        // Dependence bound: U_nu sees jets of order <= |nu| only.
        if (Unu.max_jet_order() > expo_degree(nu))
            throw std::logic_error("prolong: dependence bound violated");
        P.U.emplace(nu, std::move(Unu));
    }
    return P;
}

JetPolynomial origin_value(const ProlongedField& P, const Expo& nu, const Series& graph,
                           int substitute_to, int substitute_dependent_to) {
    JetRing& ring = *P.ring;
    int n = P.n;
    if (substitute_dependent_to < 0) substitute_dependent_to = substitute_to;
    std::map<int, Coeff> repl;
    repl[ring.var_u()] = Coeff();
    for (int i = 0; i < n; ++i) repl[ring.var_x(i)] = Coeff();
    const JetPolynomial& p = P.at(nu);
    // Substitute known jets of the graph (jet value = sigma! * plain coeff).
    for (auto& [m, c] : p.terms())
        for (auto& [id, e] : m) {
            if (!ring.is_jet(id)) continue;
            Expo idx = ring.jet_index(id);
            int d = expo_degree(idx);
            int bound = (d - idx[0] >= 2) ? substitute_dependent_to : substitute_to;
            if (d > bound || d > graph.trunc()) continue;
            repl[id] = graph.jet(idx);
        }
    return p.substitute_vars(repl);
}

} // namespace hr1
