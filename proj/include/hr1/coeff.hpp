#pragma once

#include "hr1/params.hpp"
#include "hr1/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hr1 {

// Power product of parameters. Factors sorted by symbol id, exponents nonzero.
// Exponents may be negative (Laurent): the stabilizer matrices of the source
// problem contain entries like 1/a[1,1] and these must stay exact.
struct PMono {
    std::vector<std::pair<int32_t, int32_t>> f; // (symbol id, exponent)

    bool operator==(const PMono& o) const { return f == o.f; }
    bool operator<(const PMono& o) const { return f < o.f; }
    bool empty() const { return f.empty(); }

    int degree_in(int32_t id) const {
        for (auto& [s, e] : f)
            if (s == id) return e;
        return 0;
    }
    int total_degree() const {
        int d = 0;
        for (auto& [s, e] : f) d += (e > 0 ? e : -e);
        return d;
    }

    static PMono one() { return PMono{}; }
    static PMono var(int32_t id, int32_t e = 1) {
        PMono m;
        if (e != 0) m.f.emplace_back(id, e);
        return m;
    }

    PMono operator*(const PMono& o) const {
        PMono r;
        r.f.reserve(f.size() + o.f.size());
        size_t i = 0, j = 0;
        while (i < f.size() && j < o.f.size()) {
            if (f[i].first < o.f[j].first) r.f.push_back(f[i++]);
            else if (f[i].first > o.f[j].first) r.f.push_back(o.f[j++]);
            else {
                int32_t e = f[i].second + o.f[j].second;
                if (e != 0) r.f.emplace_back(f[i].first, e);
                ++i, ++j;
            }
        }
        while (i < f.size()) r.f.push_back(f[i++]);
        while (j < o.f.size()) r.f.push_back(o.f[j++]);
        return r;
    }
};

// Element of the coefficient ring: exact rational in the parameter-free case,
// otherwise a (Laurent) polynomial in named parameters with rational
// coefficients. Canonical: terms sorted by PMono, no zero rational stored.
class Coeff {
  public:
    using Term = std::pair<PMono, Rational>;

    Coeff() = default;
    Coeff(const Rational& r) {
        if (r != 0) t_.emplace_back(PMono::one(), r);
    }
    Coeff(long n) : Coeff(Rational(n)) {}
    Coeff(int n) : Coeff(Rational(n)) {}
    static Coeff from_symbol(const ParameterSymbol& s, int32_t e = 1, const Rational& c = Rational(1)) {
        Coeff v;
        if (c != 0) v.t_.emplace_back(PMono::var(s.id(), e), c);
        return v;
    }

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_rational() const { return t_.empty() || (t_.size() == 1 && t_[0].first.empty()); }
    Rational rational_value() const {
        if (t_.empty()) return Rational(0);
        if (!is_rational()) throw std::domain_error("coefficient is not a plain rational: " + to_string());
        return t_[0].second;
    }

    bool operator==(const Coeff& o) const { return t_ == o.t_; }
    bool operator!=(const Coeff& o) const { return !(*this == o); }

    Coeff operator-() const {
        Coeff r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }

    Coeff& operator+=(const Coeff& o) {
        if (o.t_.empty()) return *this;
        if (t_.empty()) {
            t_ = o.t_;
            return *this;
        }
        std::vector<Term> out;
        out.reserve(t_.size() + o.t_.size());
        size_t i = 0, j = 0;
        while (i < t_.size() && j < o.t_.size()) {
            if (t_[i].first < o.t_[j].first) out.push_back(std::move(t_[i++]));
            else if (o.t_[j].first < t_[i].first) out.push_back(o.t_[j++]);
            else {
                Rational c = t_[i].second + o.t_[j].second;
                if (c != 0) out.emplace_back(std::move(t_[i].first), std::move(c));
                ++i, ++j;
            }
        }
        while (i < t_.size()) out.push_back(std::move(t_[i++]));
        while (j < o.t_.size()) out.push_back(o.t_[j++]);
        t_ = std::move(out);
        return *this;
    }
    Coeff& operator-=(const Coeff& o) { return *this += -o; }
    Coeff operator+(const Coeff& o) const {
        Coeff r = *this;
        r += o;
        return r;
    }
    Coeff operator-(const Coeff& o) const {
        Coeff r = *this;
        r -= o;
        return r;
    }

    Coeff operator*(const Coeff& o) const {
        Coeff r;
        r.add_mul(*this, o);
        return r;
    }
    Coeff& operator*=(const Coeff& o) {
        *this = *this * o;
        return *this;
    }

    // *this += a * b, the fused accumulation used by all series inner loops.
    void add_mul(const Coeff& a, const Coeff& b) {
        if (a.t_.empty() || b.t_.empty()) return;
        // Hot case: all three parameter-free.
        if (a.is_rational() && b.is_rational() && is_rational()) {
            Rational p = a.t_[0].second * b.t_[0].second;
            if (t_.empty()) {
                if (p != 0) t_.emplace_back(PMono::one(), std::move(p));
            } else {
                t_[0].second += p;
                if (t_[0].second == 0) t_.clear();
            }
            return;
        }
        if (a.t_.size() == 1) {
            add_scaled(b, a.t_[0].first, a.t_[0].second);
            return;
        }
        if (b.t_.size() == 1) {
            add_scaled(a, b.t_[0].first, b.t_[0].second);
            return;
        }
        std::map<PMono, Rational> acc;
        for (auto& [m, c] : t_) acc.emplace(m, c);
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) acc[ma * mb] += ca * cb;
        t_.clear();
        for (auto& [m, c] : acc)
            if (c != 0) t_.emplace_back(m, c);
    }

    // *this += x * mono * scale
    void add_scaled(const Coeff& x, const PMono& mono, const Rational& scale) {
        if (x.t_.empty() || scale == 0) return;
        Coeff tmp;
        tmp.t_.reserve(x.t_.size());
        if (mono.empty()) {
            for (auto& [m, c] : x.t_) tmp.t_.emplace_back(m, c * scale);
        } else {
            std::map<PMono, Rational> acc;
            for (auto& [m, c] : x.t_) acc[m * mono] += c * scale;
            for (auto& [m, c] : acc)
                if (c != 0) tmp.t_.emplace_back(m, c);
        }
        *this += tmp;
    }

    Coeff operator*(const Rational& r) const {
        Coeff out;
        if (r == 0) return out;
        out.t_.reserve(t_.size());
        for (auto& [m, c] : t_) out.t_.emplace_back(m, c * r);
        return out;
    }
    Coeff& operator*=(const Rational& r) {
        if (r == 0) {
            t_.clear();
            return *this;
        }
        for (auto& [m, c] : t_) c *= r;
        return *this;
    }
    Coeff operator/(const Rational& r) const {
        if (r == 0) throw std::domain_error("division by zero rational");
        return *this * (Rational(1) / r);
    }

    int degree_in(const ParameterSymbol& s) const {
        int d = 0;
        for (auto& [m, c] : t_) d = std::max(d, m.degree_in(s.id()));
        return d;
    }
    int total_degree() const {
        int d = 0;
        for (auto& [m, c] : t_) d = std::max(d, m.total_degree());
        return d;
    }

    // Drops every term whose degree in s exceeds maxdeg (the O(eps^2) calculus).
    Coeff truncate_degree_in(const ParameterSymbol& s, int maxdeg) const {
        Coeff r;
        for (auto& [m, c] : t_)
            if (m.degree_in(s.id()) <= maxdeg) r.t_.emplace_back(m, c);
        return r;
    }

    // Coefficient of s^e, as a polynomial in the other parameters.
    Coeff coefficient_of(const ParameterSymbol& s, int e) const {
        Coeff r;
        for (auto& [m, c] : t_) {
            if (m.degree_in(s.id()) != e) continue;
            PMono rest;
            for (auto& [id, ex] : m.f)
                if (id != s.id()) rest.f.emplace_back(id, ex);
            r += Coeff::monomial(rest, c);
        }
        return r;
    }

    bool contains(const ParameterSymbol& s) const {
        for (auto& [m, c] : t_)
            if (m.degree_in(s.id()) != 0) return true;
        return false;
    }

    // Simultaneous substitution of symbols by coefficient values.
    // Symbols substituted with negative exponents require the replacement to be
    // an invertible rational.
    Coeff substitute(const std::map<int32_t, Coeff>& repl) const {
        Coeff out;
        for (auto& [m, c] : t_) {
            Coeff term(c);
            PMono untouched;
            for (auto& [id, e] : m.f) {
                auto it = repl.find(id);
                if (it == repl.end()) {
                    untouched.f.emplace_back(id, e);
                    continue;
                }
                const Coeff& v = it->second;
                if (e >= 0) {
                    for (int k = 0; k < e; ++k) term *= v;
                } else {
                    Rational rv = v.rational_value();
                    if (rv == 0) throw std::domain_error("negative power of zero in substitution");
                    term *= pow_rat(rv, e);
                }
            }
            if (!untouched.empty()) {
                Coeff shifted;
                for (auto& [tm, tc] : term.t_) shifted.t_.emplace_back(tm * untouched, tc);
                std::sort(shifted.t_.begin(), shifted.t_.end(),
                          [](const Term& x, const Term& y) { return x.first < y.first; });
                term = Coeff();
                for (auto& tt : shifted.t_) term += Coeff::monomial(tt.first, tt.second);
            }
            out += term;
        }
        return out;
    }

    static Coeff monomial(const PMono& m, const Rational& c) {
        Coeff v;
        if (c != 0) v.t_.emplace_back(m, c);
        return v;
    }

    // Deterministic human-readable form; terms re-sorted by parameter names.
    std::string to_string() const {
        if (t_.empty()) return "0";
        std::vector<std::string> parts;
        parts.reserve(t_.size());
        std::vector<const Term*> ordered;
        for (auto& t : t_) ordered.push_back(&t);
        std::sort(ordered.begin(), ordered.end(), [](const Term* x, const Term* y) {
            return term_key(*x) < term_key(*y);
        });
        for (auto* t : ordered) {
            std::string s = rat_to_string(t->second);
            for (auto& [id, e] : t->first.f) {
                s += "*" + ParameterSymbol::name_of(id);
                if (e != 1) s += "^" + std::to_string(e);
            }
            parts.push_back(s);
        }
        std::string out = parts[0];
        for (size_t i = 1; i < parts.size(); ++i) {
            if (!parts[i].empty() && parts[i][0] == '-') out += " - " + parts[i].substr(1);
            else out += " + " + parts[i];
        }
        return out;
    }

  private:
    static std::vector<std::pair<std::string, int32_t>> term_key(const Term& t) {
        std::vector<std::pair<std::string, int32_t>> k;
        for (auto& [id, e] : t.first.f) k.emplace_back(ParameterSymbol::name_of(id), e);
        std::sort(k.begin(), k.end());
        return k;
    }

    std::vector<Term> t_;
};

inline Coeff operator*(const Rational& r, const Coeff& c) { return c * r; }

} // namespace hr1
