#pragma once

#include "hr1/coeff.hpp"
#include "hr1/series.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hr1 {

// A linear form in designated unknowns; coefficients and the constant part
// may involve any other parameters.
struct LinearForm {
    std::map<int32_t, Coeff> lin; // unknown id -> coefficient
    Coeff constant;

    bool is_zero() const { return lin.empty() && constant.is_zero(); }

    std::string to_string(const std::string& label = "") const {
        std::string s = label.empty() ? "" : label + ": ";
        s += "0 = ";
        bool first = true;
        for (auto& [id, c] : lin) {
            if (!first) s += " + ";
            s += "(" + c.to_string() + ")*" + ParameterSymbol::name_of(id);
            first = false;
        }
        if (!constant.is_zero() || first) {
            if (!first) s += " + ";
            s += constant.to_string();
        }
        return s;
    }
};

// Splits a coefficient value into a linear form over the given unknowns.
// Throws if any term has total degree >= 2 in the unknown set.
inline LinearForm linearize(const Coeff& value, const std::set<int32_t>& unknowns) {
    LinearForm f;
    for (auto& [m, c] : value.terms()) {
        int32_t seen = -1;
        int du = 0;
        PMono rest;
        for (auto& [id, e] : m.f) {
            if (unknowns.count(id)) {
                du += (e > 0 ? e : -e);
                seen = id;
                if (e != 1) du = 2; // negative or higher powers are nonlinear
            } else {
                rest.f.emplace_back(id, e);
            }
        }
        if (du > 1) throw std::domain_error("expression is not linear in the declared unknowns: " + value.to_string());
        if (du == 0) f.constant += Coeff::monomial(m, c);
        else f.lin[seen] += Coeff::monomial(rest, c);
    }
    for (auto it = f.lin.begin(); it != f.lin.end();) {
        if (it->second.is_zero()) it = f.lin.erase(it);
        else ++it;
    }
    return f;
}

struct LinearSystem {
    std::vector<Coeff> equations;
    std::vector<std::string> labels; // parallel to equations (e.g. "E[2,0,0]")
    std::vector<ParameterSymbol> unknowns;
};

// One equation per monomial of the residual, ordered graded-lex (ascending
// order, x1-heaviest first within an order).
inline LinearSystem extract_system(const Series& residual, const std::vector<ParameterSymbol>& unknowns) {
    LinearSystem sys;
    sys.unknowns = unknowns;
    std::set<int32_t> ids;
    for (auto& u : unknowns) ids.insert(u.id());
    for (auto* t : residual.display_order()) {
        linearize(t->second, ids); // validates linearity, result unused here
        sys.equations.push_back(t->second);
        Expo e = mono::unpack(t->first, residual.nvars());
        std::string lbl = "E[";
        for (size_t i = 0; i < e.size(); ++i) lbl += (i ? "," : "") + std::to_string(e[i]);
        lbl += "]";
        sys.labels.push_back(lbl);
    }
    return sys;
}

// Result of the exact symbolic elimination. Substituting `solved` into the
// source system annihilates it; `free_unknowns` carry no constraint.
struct TriangularSolution {
    std::map<std::string, Coeff> solved; // unknown name -> value in remaining parameters
    std::vector<ParameterSymbol> free_unknowns;

    const Coeff& value_of(const std::string& name) const {
        auto it = solved.find(name);
        if (it == solved.end()) throw std::out_of_range("unknown was not solved: " + name);
        return it->second;
    }
    bool is_solved(const std::string& name) const { return solved.count(name) != 0; }
};

// Exact elimination in the given unknown order. Every pivot must be a nonzero
// plain rational; a parameter-dependent pivot candidate fails loudly with the
// offending equation. Coefficients of non-pivot entries may be symbolic.
inline TriangularSolution solve_triangular_symbolic(const LinearSystem& sys,
                                                    const std::vector<ParameterSymbol>& order) {
    std::set<int32_t> ids;
    for (auto& u : order) ids.insert(u.id());
    struct Row {
        LinearForm f;
        std::string label;
        bool used = false;
    };
    std::vector<Row> rows;
    for (size_t i = 0; i < sys.equations.size(); ++i) {
        Row r;
        r.f = linearize(sys.equations[i], ids);
        r.label = i < sys.labels.size() ? sys.labels[i] : ("eq" + std::to_string(i));
        if (!r.f.is_zero()) rows.push_back(std::move(r));
    }

    std::map<int32_t, LinearForm> pivot_rows; // unknown id -> normalized row
    std::vector<int32_t> pivot_order;
    for (auto& u : order) {
        int32_t col = u.id();
        Row* chosen = nullptr;
        for (auto& r : rows) {
            if (r.used) continue;
            auto it = r.f.lin.find(col);
            if (it == r.f.lin.end() || it->second.is_zero()) continue;
            if (it->second.is_rational()) {
                chosen = &r;
                break;
            }
        }
        if (!chosen) {
            // A symbolic-only pivot candidate is a hard error; a fully absent
            // column is simply free.
            for (auto& r : rows) {
                if (r.used) continue;
                auto it = r.f.lin.find(col);
                if (it != r.f.lin.end() && !it->second.is_zero())
                    throw std::domain_error("not triangular over constants at unknown " + u.name() +
                                            " in equation " + r.f.to_string(r.label));
            }
            continue;
        }
        chosen->used = true;
        Rational p = chosen->f.lin[col].rational_value();
        LinearForm norm;
        norm.constant = chosen->f.constant / p;
        for (auto& [id, c] : chosen->f.lin)
            if (id != col) norm.lin[id] = c / p;
        // Eliminate col everywhere (rows and previously found pivots).
        auto eliminate = [&](LinearForm& f) {
            auto it = f.lin.find(col);
            if (it == f.lin.end()) return;
            Coeff w = it->second;
            f.lin.erase(it);
            f.constant += -(w * norm.constant);
            for (auto& [id, c] : norm.lin) {
                f.lin[id] += -(w * c);
                if (f.lin[id].is_zero()) f.lin.erase(id);
            }
        };
        for (auto& r : rows)
            if (!r.used) eliminate(r.f);
        for (auto& [id, f] : pivot_rows) eliminate(f);
        pivot_rows[col] = std::move(norm);
        pivot_order.push_back(col);
    }

    for (auto& r : rows) {
        if (r.used || r.f.is_zero()) continue;
        if (r.f.lin.empty())
            throw std::domain_error("inconsistent equation after elimination: " + r.f.to_string(r.label));
        throw std::domain_error("unsolved unknowns remain in equation " + r.f.to_string(r.label));
    }

    TriangularSolution out;
    for (auto& u : order) {
        auto it = pivot_rows.find(u.id());
        if (it == pivot_rows.end()) {
            out.free_unknowns.push_back(u);
            continue;
        }
        // pivot + rest = 0  =>  pivot = -(rest)
        Coeff v = -it->second.constant;
        for (auto& [id, c] : it->second.lin)
            v += -(c * Coeff::from_symbol(ParameterSymbol(ParameterSymbol::name_of(id))));
        out.solved[u.name()] = v;
    }
    return out;
}

// Streaming exact RREF for plain-rational systems: dimension of the solution
// space, a basis of it, and ranks of coordinate projections.
class NumericSolver {
  public:
    explicit NumericSolver(const std::vector<ParameterSymbol>& unknowns) : unknowns_(unknowns) {
        for (size_t i = 0; i < unknowns.size(); ++i) index_[unknowns[i].id()] = i;
    }

    // Adds equation sum_i c_i u_i + c = 0; coefficients must be rational.
    void add_equation(const Coeff& eq) {
        std::set<int32_t> ids;
        for (auto& [id, i] : index_) ids.insert(id);
        LinearForm f = linearize(eq, ids);
        size_t w = unknowns_.size();
        std::vector<Rational> row(w + 1, Rational(0));
        for (auto& [id, c] : f.lin) row[index_.at(id)] = c.rational_value();
        row[w] = f.constant.rational_value();
        reduce_and_insert(std::move(row));
    }
    void add_equations(const LinearSystem& sys) {
        for (auto& e : sys.equations) add_equation(e);
    }

    bool consistent() const { return consistent_; }
    size_t num_pivots() const { return pivots_.size(); }
    size_t solution_dimension() const { return unknowns_.size() - pivots_.size(); }

    // Basis of the homogeneous solution space as symbol->value maps.
    std::vector<std::map<std::string, Rational>> solution_basis() const {
        std::vector<std::map<std::string, Rational>> basis;
        size_t w = unknowns_.size();
        std::vector<bool> is_pivot(w, false);
        for (auto& [c, r] : pivots_) is_pivot[c] = true;
        for (size_t fcol = 0; fcol < w; ++fcol) {
            if (is_pivot[fcol]) continue;
            std::map<std::string, Rational> v;
            v[unknowns_[fcol].name()] = 1;
            for (auto& [c, row] : pivots_) {
                Rational val = -row[fcol];
                if (val != 0) v[unknowns_[c].name()] = val;
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Rank of the projection of the solution space onto the given coordinates.
    size_t projection_rank(const std::vector<ParameterSymbol>& coords) const {
        auto basis = solution_basis();
        std::vector<std::vector<Rational>> mat;
        for (auto& b : basis) {
            std::vector<Rational> row;
            row.reserve(coords.size());
            bool any = false;
            for (auto& s : coords) {
                auto it = b.find(s.name());
                Rational v = it == b.end() ? Rational(0) : it->second;
                if (v != 0) any = true;
                row.push_back(v);
            }
            if (any) mat.push_back(std::move(row));
        }
        // Small dense rank computation.
        size_t rank = 0;
        size_t cols = coords.size();
        for (size_t c = 0; c < cols && rank < mat.size(); ++c) {
            size_t sel = rank;
            while (sel < mat.size() && mat[sel][c] == 0) ++sel;
            if (sel == mat.size()) continue;
            std::swap(mat[rank], mat[sel]);
            for (size_t r = 0; r < mat.size(); ++r) {
                if (r == rank || mat[r][c] == 0) continue;
                Rational f = mat[r][c] / mat[rank][c];
                for (size_t j = c; j < cols; ++j) mat[r][j] -= f * mat[rank][j];
            }
            ++rank;
        }
        return rank;
    }

  private:
    void reduce_and_insert(std::vector<Rational>&& row) {
        size_t w = unknowns_.size();
        for (auto& [c, prow] : pivots_) {
            if (row[c] == 0) continue;
            Rational f = row[c];
            for (size_t j = 0; j <= w; ++j)
                if (prow[j] != 0) row[j] -= f * prow[j];
        }
        size_t lead = w + 1;
        for (size_t j = 0; j < w; ++j)
            if (row[j] != 0) {
                lead = j;
                break;
            }
        if (lead == w + 1) {
            if (row[w] != 0) consistent_ = false;
            return;
        }
        Rational p = row[lead];
        for (size_t j = 0; j <= w; ++j)
            if (row[j] != 0) row[j] /= p;
        for (auto& [c, prow] : pivots_) {
            if (prow[lead] == 0) continue;
            Rational f = prow[lead];
            for (size_t j = 0; j <= w; ++j)
                if (row[j] != 0) prow[j] -= f * row[j];
        }
        pivots_[lead] = std::move(row);
    }

    std::vector<ParameterSymbol> unknowns_;
    std::map<int32_t, size_t> index_;
    std::map<size_t, std::vector<Rational>> pivots_; // pivot col -> row
    bool consistent_ = true;
};

} // namespace hr1
