#pragma once

#include "hr1/series.hpp"
#include "hr1/symmetry.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hr1 {

// Polynomial ring in x_1..x_n, u, and the jet coordinates u_nu (nu a
// multi-index with |nu| >= 1). Jet symbols are identified per multi-index;
// the symmetric-derivative identification is structural.
class JetRing {
  public:
    explicit JetRing(int n) : n_(n) {}

    int n() const { return n_; }
    // Variable ids: 0 = u, 1..n = x_i, n+1+k = registered jet k.
    int var_u() const { return 0; }
    int var_x(int i) const { return 1 + i; } // 0-based i
    int var_jet(const Expo& nu) {
        if (static_cast<int>(nu.size()) != n_) throw std::invalid_argument("jet arity mismatch");
        if (expo_degree(nu) < 1) throw std::invalid_argument("jet multi-index must be nonempty");
        uint64_t key = mono::pack(nu.data(), n_, 1);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        int id = n_ + 1 + static_cast<int>(keys_.size());
        keys_.push_back(key);
        ids_.emplace(key, id);
        return id;
    }
    bool is_jet(int id) const { return id > n_; }
    Expo jet_index(int id) const { return mono::unpack(keys_.at(static_cast<size_t>(id - n_ - 1)), n_); }
    int order_of(int id) const {
        if (id == 0) return 0;
        if (id <= n_) return 0;
        return mono::deg(keys_.at(static_cast<size_t>(id - n_ - 1)));
    }

    std::string var_name(int id) const {
        if (id == 0) return "u";
        if (id <= n_) return "x" + std::to_string(id);
        Expo nu = jet_index(id);
        std::string s = "u[";
        for (size_t i = 0; i < nu.size(); ++i) s += (i ? "," : "") + std::to_string(nu[i]);
        return s + "]";
    }

  private:
    int n_;
    std::map<uint64_t, int> ids_;
    std::vector<uint64_t> keys_;
};

// Sparse polynomial over the jet ring with CoefficientValue coefficients.
class JetPolynomial {
  public:
    using Mono = std::vector<std::pair<int, int>>; // (var id, exponent), sorted

    JetPolynomial() : ring_(nullptr) {}
    explicit JetPolynomial(JetRing* ring) : ring_(ring) {}

    static JetPolynomial constant(JetRing* r, const Coeff& c) {
        JetPolynomial p(r);
        if (!c.is_zero()) p.t_[{}] = c;
        return p;
    }
    static JetPolynomial variable(JetRing* r, int id, const Coeff& c = Coeff(1)) {
        JetPolynomial p(r);
        if (!c.is_zero()) p.t_[{{id, 1}}] = c;
        return p;
    }

    JetRing* ring() const { return ring_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Mono, Coeff>& terms() const { return t_; }

    bool operator==(const JetPolynomial& o) const { return t_ == o.t_; }

    JetPolynomial operator-() const {
        JetPolynomial r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    JetPolynomial& operator+=(const JetPolynomial& o) {
        for (auto& [m, c] : o.t_) {
            auto& slot = t_[m];
            slot += c;
            if (slot.is_zero()) t_.erase(m);
        }
        if (!ring_) ring_ = o.ring_;
        return *this;
    }
    JetPolynomial operator+(const JetPolynomial& o) const {
        JetPolynomial r = *this;
        r += o;
        return r;
    }
    JetPolynomial operator-(const JetPolynomial& o) const { return *this + (-o); }
    JetPolynomial& operator-=(const JetPolynomial& o) { return *this += -o; }
    JetPolynomial operator*(const JetPolynomial& o) const {
        JetPolynomial r(ring_ ? ring_ : o.ring_);
        for (auto& [ma, ca] : t_)
            for (auto& [mb, cb] : o.t_) {
                Mono m = mono_mul(ma, mb);
                auto& slot = r.t_[m];
                slot.add_mul(ca, cb);
                if (slot.is_zero()) r.t_.erase(m);
            }
        return r;
    }
    JetPolynomial operator*(const Coeff& c) const {
        JetPolynomial r(ring_);
        for (auto& [m, v] : t_) {
            Coeff p = v * c;
            if (!p.is_zero()) r.t_[m] = p;
        }
        return r;
    }

    JetPolynomial dvar(int id) const {
        JetPolynomial r(ring_);
        for (auto& [m, c] : t_) {
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i].first != id) continue;
                Mono nm = m;
                int e = nm[i].second;
                if (e == 1) nm.erase(nm.begin() + static_cast<long>(i));
                else nm[i].second = e - 1;
                auto& slot = r.t_[nm];
                slot += c * Rational(e);
                if (slot.is_zero()) r.t_.erase(nm);
            }
        }
        return r;
    }

    int max_jet_order() const {
        int d = 0;
        for (auto& [m, c] : t_)
            for (auto& [id, e] : m)
                if (ring_->is_jet(id)) d = std::max(d, ring_->order_of(id));
        return d;
    }

    // Substitute some variables by coefficient values (e.g. x = u = 0, or jet
    // values of a concrete graph).
    JetPolynomial substitute_vars(const std::map<int, Coeff>& repl) const {
        JetPolynomial r(ring_);
        for (auto& [m, c] : t_) {
            Coeff factor = c;
            Mono rest;
            bool dead = false;
            for (auto& [id, e] : m) {
                auto it = repl.find(id);
                if (it == repl.end()) {
                    rest.emplace_back(id, e);
                    continue;
                }
                Coeff p(Rational(1));
                for (int k = 0; k < e; ++k) p *= it->second;
                factor *= p;
                if (factor.is_zero()) {
                    dead = true;
                    break;
                }
            }
            if (dead || factor.is_zero()) continue;
            auto& slot = r.t_[rest];
            slot += factor;
            if (slot.is_zero()) r.t_.erase(rest);
        }
        return r;
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto& [m, c] : t_) {
            if (!s.empty()) s += "  +  ";
            s += "(" + c.to_string() + ")";
            for (auto& [id, e] : m) {
                s += "*" + ring_->var_name(id);
                if (e != 1) s += "^" + std::to_string(e);
            }
        }
        return s;
    }

  private:
    static Mono mono_mul(const Mono& a, const Mono& b) {
        Mono r;
        r.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first < b[j].first) r.push_back(a[i++]);
            else if (a[i].first > b[j].first) r.push_back(b[j++]);
            else {
                r.emplace_back(a[i].first, a[i].second + b[j].second);
                ++i, ++j;
            }
        }
        while (i < a.size()) r.push_back(a[i++]);
        while (j < b.size()) r.push_back(b[j++]);
        return r;
    }

    JetRing* ring_;
    std::map<Mono, Coeff> t_;
};

// Total differentiation operator D_{x_i}.
JetPolynomial total_derivative(JetRing& ring, const JetPolynomial& p, int i, int max_order);

struct ProlongedField {
    int n = 0;
    int order = 0;
    std::shared_ptr<JetRing> ring;
    std::map<Expo, JetPolynomial> U; // multi-index -> coefficient

    const JetPolynomial& at(const Expo& nu) const {
        auto it = U.find(nu);
        if (it == U.end()) throw std::out_of_range("prolongation coefficient not computed");
        return it->second;
    }
};

// Prolongation of an affine field to the jet space of order kappa:
// U_nu = D^nu (U - sum X_i u_{e_i}) + sum X_i u_{nu + e_i}.
ProlongedField prolong(const AffineVectorField& L, int kappa);

// Origin values of the prolongation coefficients on the jet locus of a graph:
// x = 0, u = 0, and every registered jet variable of order <= substitute_to
// replaced by the graph's jet value. Dependent jets (x'-degree >= 2) are
// additionally substituted up to substitute_dependent_to, so the independent
// top-order jets can stay symbolic while the locus stays on the graph.
JetPolynomial origin_value(const ProlongedField& P, const Expo& nu, const Series& graph,
                           int substitute_to, int substitute_dependent_to = -1);

} // namespace hr1
