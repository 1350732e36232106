#pragma once

#include "hr1/coeff.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hr1 {

// Exponent vector sigma = (sigma_1, ..., sigma_n), nonnegative entries.
using Expo = std::vector<int>;

inline int expo_degree(const Expo& e) {
    int d = 0;
    for (int v : e) d += v;
    return d;
}

// Monomials are packed into a single 64-bit key: 6-bit lanes
// [weighted degree | e_0 | e_1 | ... | e_8], degree most significant, then
// e_0 (= x1). Comparing keys as integers is exactly graded-lex with x1
// heaviest. Monomial product is integer addition of keys.
namespace mono {

constexpr int kMaxVars = 9;
constexpr int kLaneBits = 6;
constexpr int kLaneMask = (1 << kLaneBits) - 1;
constexpr int kDegShift = kLaneBits * kMaxVars; // 54
constexpr int kMaxDegree = kLaneMask;           // 63

inline int var_shift(int i) { return kDegShift - kLaneBits * (i + 1); }

inline int deg(uint64_t m) { return static_cast<int>(m >> kDegShift); }
inline int exp_of(uint64_t m, int i) { return static_cast<int>((m >> var_shift(i)) & kLaneMask); }

// last_weight: weight of the last variable (2 for the graph coordinate u).
inline uint64_t pack(const int* e, int nvars, int last_weight) {
    uint64_t key = 0;
    int d = 0;
    for (int i = 0; i < nvars; ++i) {
        if (e[i] < 0) throw std::invalid_argument("negative exponent");
        if (e[i] > kMaxDegree) throw std::invalid_argument("exponent too large for packing");
        key |= static_cast<uint64_t>(e[i]) << var_shift(i);
        d += e[i] * (i == nvars - 1 ? last_weight : 1);
    }
    if (d > kMaxDegree) throw std::invalid_argument("degree too large for packing");
    return key | (static_cast<uint64_t>(d) << kDegShift);
}

inline Expo unpack(uint64_t m, int nvars) {
    Expo e(static_cast<size_t>(nvars));
    for (int i = 0; i < nvars; ++i) e[static_cast<size_t>(i)] = exp_of(m, i);
    return e;
}

inline std::string to_string(uint64_t m, int nvars, bool last_is_u) {
    std::string s;
    for (int i = 0; i < nvars; ++i) {
        int e = exp_of(m, i);
        if (!e) continue;
        if (!s.empty()) s += "*";
        s += (last_is_u && i == nvars - 1) ? "u" : ("x" + std::to_string(i + 1));
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

} // namespace mono

enum class Proj {
    TotalOrder,    // degree <= m
    IndependentTo, // independent monomials of degree <= m   (pi_ind^m)
    IndependentAt, // independent monomials of degree == m
    XPrimeMin,     // degree in (x2..xn) >= k
    XPrimeMax,     // degree in (x2..xn) <= k
    Homogeneous,   // degree == m
};

// Sparse truncated power series over the coefficient ring. Immutable in
// spirit: all operations return fresh values. Terms of total (weighted)
// degree > trunc are discarded; no zero coefficient is stored.
class Series {
  public:
    using Term = std::pair<uint64_t, Coeff>;

    Series() : nvars_(0), trunc_(0), last_weight_(1) {}
    Series(int nvars, int trunc, int last_weight = 1)
        : nvars_(nvars), trunc_(trunc), last_weight_(last_weight) {
        if (nvars < 1 || nvars > mono::kMaxVars) throw std::invalid_argument("unsupported variable count");
        if (trunc < 0 || trunc > mono::kMaxDegree) throw std::invalid_argument("unsupported truncation order");
    }

    int nvars() const { return nvars_; }
    int trunc() const { return trunc_; }
    int last_weight() const { return last_weight_; }
    bool poly_exact_only() const { return poly_exact_; }
    void set_poly_exact_only(bool b) { poly_exact_ = b; }
    const std::vector<Term>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    uint64_t key(const Expo& e) const {
        if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent arity mismatch");
        return mono::pack(e.data(), nvars_, last_weight_);
    }

    Coeff coeff(uint64_t k) const {
        auto it = std::lower_bound(c_.begin(), c_.end(), k,
                                   [](const Term& t, uint64_t v) { return t.first < v; });
        if (it != c_.end() && it->first == k) return it->second;
        return Coeff();
    }
    Coeff coeff(const Expo& e) const { return coeff(key(e)); }

    // Coefficient picking: the plain monomial coefficient F_sigma.
    // Degrees above the truncation are unknown, not zero.
    Coeff pick(const Expo& tau) const {
        if (expo_degree(tau) > trunc_)
            throw std::out_of_range("coefficient_pick above truncation order (value unknown)");
        return coeff(tau);
    }
    // Jet value F_{x^tau}(0) = tau! * F_tau.
    Coeff jet(const Expo& tau) const {
        Coeff v = pick(tau);
        Rational f(1);
        for (int e : tau) f *= factorial(e);
        return v * f;
    }

    void set_coeff(const Expo& e, const Coeff& v) { set_coeff(key(e), v); }
    void set_coeff(uint64_t k, const Coeff& v) {
        if (mono::deg(k) > trunc_)
            throw std::invalid_argument("coefficient above the truncation order");
        auto it = std::lower_bound(c_.begin(), c_.end(), k,
                                   [](const Term& t, uint64_t kk) { return t.first < kk; });
        if (it != c_.end() && it->first == k) {
            if (v.is_zero()) c_.erase(it);
            else it->second = v;
        } else if (!v.is_zero()) {
            c_.insert(it, {k, v});
        }
    }
    void add_coeff(const Expo& e, const Coeff& v) {
        uint64_t k = key(e);
        Coeff s = coeff(k);
        s += v;
        set_coeff(k, s);
    }

    static Series zero_like(const Series& s) { return Series(s.nvars_, s.trunc_, s.last_weight_); }
    static Series constant(int nvars, int trunc, const Coeff& v, int last_weight = 1) {
        Series s(nvars, trunc, last_weight);
        Expo e(static_cast<size_t>(nvars), 0);
        if (!v.is_zero()) s.c_.push_back({s.key(e), v});
        return s;
    }
    static Series variable(int nvars, int trunc, int i, int last_weight = 1) {
        Series s(nvars, trunc, last_weight);
        Expo e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(i)] = 1;
        s.c_.push_back({s.key(e), Coeff(1)});
        return s;
    }

    Series with_trunc(int t) const {
        Series r(nvars_, t, last_weight_);
        r.poly_exact_ = poly_exact_;
        for (auto& [k, v] : c_)
            if (mono::deg(k) <= t) r.c_.push_back({k, v});
        return r;
    }

    Series operator-() const {
        Series r = *this;
        for (auto& [k, v] : r.c_) v = -v;
        return r;
    }

    Series& operator+=(const Series& o) {
        check_compatible(o);
        std::vector<Term> out;
        out.reserve(c_.size() + o.c_.size());
        size_t i = 0, j = 0;
        int t = std::min(trunc_, o.trunc_);
        auto keep = [&](Term&& term) {
            if (mono::deg(term.first) <= t && !term.second.is_zero()) out.push_back(std::move(term));
        };
        while (i < c_.size() && j < o.c_.size()) {
            if (c_[i].first < o.c_[j].first) keep(std::move(c_[i++]));
            else if (o.c_[j].first < c_[i].first) keep(Term(o.c_[j].first, o.c_[j].second)), ++j;
            else {
                Coeff v = c_[i].second + o.c_[j].second;
                keep(Term(c_[i].first, std::move(v)));
                ++i, ++j;
            }
        }
        while (i < c_.size()) keep(std::move(c_[i++]));
        while (j < o.c_.size()) keep(Term(o.c_[j].first, o.c_[j].second)), ++j;
        c_ = std::move(out);
        trunc_ = t;
        poly_exact_ = poly_exact_ || o.poly_exact_;
        return *this;
    }
    Series operator+(const Series& o) const {
        Series r = *this;
        r += o;
        return r;
    }
    Series& operator-=(const Series& o) { return *this += -o; }
    Series operator-(const Series& o) const {
        Series r = *this;
        r -= o;
        return r;
    }
    bool operator==(const Series& o) const {
        return nvars_ == o.nvars_ && trunc_ == o.trunc_ && c_ == o.c_;
    }

    Series operator*(const Coeff& v) const {
        Series r(nvars_, trunc_, last_weight_);
        r.poly_exact_ = poly_exact_;
        if (v.is_zero()) return r;
        r.c_.reserve(c_.size());
        for (auto& [k, c] : c_) {
            Coeff p = c * v;
            if (!p.is_zero()) r.c_.push_back({k, std::move(p)});
        }
        return r;
    }
    Series operator*(const Rational& v) const { return *this * Coeff(v); }

    // Exact truncated product; result truncation = min of the operands'.
    Series operator*(const Series& o) const {
        check_compatible(o);
        int t = std::min(trunc_, o.trunc_);
        Series r(nvars_, t, last_weight_);
        r.poly_exact_ = poly_exact_ || o.poly_exact_;
        if (c_.empty() || o.c_.empty()) return r;
        // Iterate the smaller operand outside.
        const Series& A = c_.size() <= o.c_.size() ? *this : o;
        const Series& B = c_.size() <= o.c_.size() ? o : *this;
        std::unordered_map<uint64_t, Coeff> acc;
        acc.reserve(A.c_.size() * 2 + B.c_.size());
        for (auto& [ka, va] : A.c_) {
            int da = mono::deg(ka);
            if (da > t) break;
            uint64_t limit = (static_cast<uint64_t>(t - da + 1) << mono::kDegShift);
            auto end = std::lower_bound(B.c_.begin(), B.c_.end(), limit,
                                        [](const Term& x, uint64_t v) { return x.first < v; });
            for (auto it = B.c_.begin(); it != end; ++it) acc[ka + it->first].add_mul(va, it->second);
        }
        r.c_.reserve(acc.size());
        for (auto& [k, v] : acc)
            if (!v.is_zero()) r.c_.push_back({k, std::move(v)});
        std::sort(r.c_.begin(), r.c_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return r;
    }

    // d/dx_i; truncation order drops by one (floor at zero).
    Series deriv(int i) const {
        if (i < 0 || i >= nvars_) throw std::invalid_argument("derivative index out of range");
        if (i == nvars_ - 1 && last_weight_ != 1)
            throw std::invalid_argument("cannot differentiate in the weighted variable");
        Series r(nvars_, std::max(trunc_ - 1, 0), last_weight_);
        r.poly_exact_ = poly_exact_;
        int sh = mono::var_shift(i);
        for (auto& [k, v] : c_) {
            int e = mono::exp_of(k, i);
            if (!e) continue;
            uint64_t nk = k - (1ull << sh) - (1ull << mono::kDegShift);
            r.c_.push_back({nk, v * Rational(e)});
        }
        std::sort(r.c_.begin(), r.c_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return r;
    }

    Series project(Proj mode, int m) const {
        if (m < 0) throw std::invalid_argument("projection order must be nonnegative");
        if (last_weight_ != 1 && mode != Proj::TotalOrder && mode != Proj::Homogeneous)
            throw std::invalid_argument("x'-projections are defined on the plain ring only");
        Series r(nvars_, trunc_, last_weight_);
        r.poly_exact_ = poly_exact_;
        for (auto& [k, v] : c_) {
            int d = mono::deg(k);
            int xp = d - mono::exp_of(k, 0); // degree in x2..xn (x-ring only)
            bool keep = false;
            switch (mode) {
                case Proj::TotalOrder: keep = d <= m; break;
                case Proj::IndependentTo: keep = d <= m && xp <= 1; break;
                case Proj::IndependentAt: keep = d == m && xp <= 1; break;
                case Proj::XPrimeMin: keep = xp >= m; break;
                case Proj::XPrimeMax: keep = xp <= m; break;
                case Proj::Homogeneous: keep = d == m; break;
            }
            if (keep) r.c_.push_back({k, v});
        }
        return r;
    }

    // Substitute variable i by the series R (same ring). Exact; poly-exact
    // flag propagates when R has a constant term.
    Series subst_single(int i, const Series& R) const {
        check_compatible(R);
        if (i < 0 || i >= nvars_) throw std::invalid_argument("substitution index out of range");
        int t = std::min(trunc_, R.trunc_);
        Series result(nvars_, t, last_weight_);
        Expo zero(static_cast<size_t>(nvars_), 0);
        bool had_const = !R.coeff(zero).is_zero();
        int w = (i == nvars_ - 1) ? last_weight_ : 1;

        std::vector<Series> pw; // R^e
        pw.push_back(Series::constant(nvars_, t, Coeff(Rational(1)), last_weight_));
        std::unordered_map<uint64_t, Coeff> acc;
        int sh = mono::var_shift(i);
        for (auto& [k, v] : c_) {
            int e = mono::exp_of(k, i);
            uint64_t rest = k - (static_cast<uint64_t>(e) << sh) -
                            (static_cast<uint64_t>(e * w) << mono::kDegShift);
            int drest = mono::deg(rest);
            if (drest > t) continue;
            while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * R);
            const Series& re = pw[static_cast<size_t>(e)];
            for (auto& [kr, vr] : re.c_) {
                if (drest + mono::deg(kr) > t) break;
                acc[rest + kr].add_mul(v, vr);
            }
        }
        for (auto& [k, v] : acc)
            if (!v.is_zero()) result.c_.push_back({k, std::move(v)});
        std::sort(result.c_.begin(), result.c_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        result.poly_exact_ = poly_exact_ || R.poly_exact_ || had_const;
        return result;
    }

    // Simultaneous substitution of every variable. Replacements live in a
    // common ring of dimension m; suitable for sparse operands.
    Series substitute(const std::vector<Series>& repl) const {
        if (static_cast<int>(repl.size()) != nvars_)
            throw std::invalid_argument("substitute: arity mismatch");
        for (auto& r : repl) {
            if (r.nvars() != repl[0].nvars() || r.trunc() != repl[0].trunc() ||
                r.last_weight() != repl[0].last_weight())
                throw std::invalid_argument("substitute: replacement rings differ");
        }
        int t = std::min(trunc_, repl[0].trunc());
        int rn = repl[0].nvars();
        int rw = repl[0].last_weight();
        Series result(rn, t, rw);
        bool had_const = false;
        Expo zero(static_cast<size_t>(rn), 0);
        for (auto& r : repl)
            if (!r.coeff(zero).is_zero()) had_const = true;

        std::vector<std::vector<Series>> pw(static_cast<size_t>(nvars_));
        for (int i = 0; i < nvars_; ++i)
            pw[static_cast<size_t>(i)].push_back(Series::constant(rn, t, Coeff(Rational(1)), rw));

        for (auto& [k, v] : c_) {
            Series term = Series::constant(rn, t, v, rw);
            for (int i = 0; i < nvars_; ++i) {
                int e = mono::exp_of(k, i);
                if (!e) continue;
                auto& powers = pw[static_cast<size_t>(i)];
                while (static_cast<int>(powers.size()) <= e)
                    powers.push_back(powers.back() * repl[static_cast<size_t>(i)]);
                term = term * powers[static_cast<size_t>(e)];
                if (term.is_zero()) break;
            }
            result += term;
        }
        result.poly_exact_ = poly_exact_ || had_const;
        return result;
    }

    // Multiplies by a plain monomial given as exponent vector (no truncation
    // violations allowed above trunc; overflowing terms are dropped).
    Series mono_shift(const Expo& e) const {
        uint64_t k0 = key(e);
        Series r(nvars_, trunc_, last_weight_);
        r.poly_exact_ = poly_exact_;
        for (auto& [k, v] : c_) {
            if (mono::deg(k) + mono::deg(k0) > trunc_) break;
            r.c_.push_back({k + k0, v});
        }
        return r;
    }

    int min_order() const {
        if (c_.empty()) return trunc_ + 1;
        return mono::deg(c_.front().first);
    }
    int max_order() const {
        if (c_.empty()) return 0;
        return mono::deg(c_.back().first);
    }

    // Substitutes every parameter occurrence in every coefficient.
    Series substitute_params(const std::map<int32_t, Coeff>& repl) const {
        Series r(nvars_, trunc_, last_weight_);
        r.poly_exact_ = poly_exact_;
        for (auto& [k, v] : c_) {
            Coeff nv = v.substitute(repl);
            if (!nv.is_zero()) r.c_.push_back({k, std::move(nv)});
        }
        return r;
    }

    Series truncate_param_degree(const ParameterSymbol& s, int maxdeg) const {
        Series r(nvars_, trunc_, last_weight_);
        r.poly_exact_ = poly_exact_;
        for (auto& [k, v] : c_) {
            Coeff nv = v.truncate_degree_in(s, maxdeg);
            if (!nv.is_zero()) r.c_.push_back({k, std::move(nv)});
        }
        return r;
    }

    // Deterministic listing: ascending total order, descending graded-lex
    // within each order (x1-heavy terms first, the way displays read).
    std::vector<const Term*> display_order() const {
        std::vector<const Term*> out;
        out.reserve(c_.size());
        for (auto& t : c_) out.push_back(&t);
        std::sort(out.begin(), out.end(), [](const Term* a, const Term* b) {
            int da = mono::deg(a->first), db = mono::deg(b->first);
            if (da != db) return da < db;
            return a->first > b->first;
        });
        return out;
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (auto* t : display_order()) {
            if (!s.empty()) s += "  +  ";
            s += "(" + t->second.to_string() + ")*" +
                 mono::to_string(t->first, nvars_, last_weight_ != 1);
        }
        return s;
    }

    void check_compatible(const Series& o) const {
        if (nvars_ != o.nvars_ || last_weight_ != o.last_weight_)
            throw std::invalid_argument("series dimension mismatch");
    }

    // Direct access for bulk construction (keys must be sorted, nonzero).
    static Series from_sorted(int nvars, int trunc, int last_weight, std::vector<Term>&& terms) {
        Series s(nvars, trunc, last_weight);
        s.c_ = std::move(terms);
        return s;
    }

  private:
    int nvars_;
    int trunc_;
    int last_weight_;
    bool poly_exact_ = false;
    std::vector<Term> c_;
};

// Builds a series from entries: validates exponents, sums duplicates.
inline Series make_series(int dimension, int truncation,
                          const std::vector<std::pair<Expo, Coeff>>& entries) {
    Series s(dimension, truncation);
    for (auto& [e, v] : entries) {
        if (static_cast<int>(e.size()) != dimension)
            throw std::invalid_argument("make_series: exponent arity mismatch");
        for (int x : e)
            if (x < 0) throw std::invalid_argument("make_series: negative exponent");
        if (expo_degree(e) > truncation) {
            std::string where;
            for (size_t i = 0; i < e.size(); ++i) where += (i ? "," : "(") + std::to_string(e[i]);
            throw std::invalid_argument("make_series: degree above truncation at exponent " + where + ")");
        }
        s.add_coeff(e, v);
    }
    return s;
}

} // namespace hr1
