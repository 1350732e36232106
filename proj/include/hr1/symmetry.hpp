#pragma once

#include "hr1/linsys.hpp"
#include "hr1/rank1.hpp"
#include "hr1/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace hr1 {

// Infinitesimal affine field
//   L = sum_i (T_i + sum_j A_{i,j} x_j + B_i u) d/dx_i
//       + (T_0 + sum_j C_j x_j + D u) d/du.
struct AffineVectorField {
    int n = 0;
    Coeff T0, D;
    std::vector<Coeff> T, B, C;        // size n
    std::vector<std::vector<Coeff>> A; // n x n

    static AffineVectorField zero(int n);
    // Fresh symbols named T[0], T[i], A[i,j], B[i], C[j], D.
    static AffineVectorField symbolic(int n);
    // Isotropy field: symbolic with T0 = T = 0.
    static AffineVectorField symbolic_isotropy(int n);

    AffineVectorField substituted(const std::map<int32_t, Coeff>& repl) const;
};

// Fixed unknown ordering for all field symbols:
// T[0], T[1..n], A[1,1..n,n] row-major, B[1..n], C[1..n], D.
std::vector<ParameterSymbol> field_symbols(int n);
std::vector<ParameterSymbol> t_symbols(int n); // T[1..n]

// L(-u + F)|_{u=F} truncated at `order`; coefficients linear in the field's
// entries. Requires order <= trunc(F) - 1 unless the field has no constant
// part (T = 0), in which case order = trunc(F) is allowed.
Series tangency_residual(const AffineVectorField& L, const Series& F, int order);

// The independent part pi_ind^m of the tangency residual, computed on the
// border projection of F (exact, by the product-projection identities).
Series tangency_residual_independent(const AffineVectorField& L, const Series& F, int m);

// Exact numeric solution of a tangency system.
struct SymmetrySolution {
    std::vector<std::map<std::string, Rational>> basis; // symbol name -> value
    size_t dimension = 0;     // dim of the solution space
    size_t realizable_t = 0;  // dim of the projection onto (T1..Tn)
};
SymmetrySolution solve_numeric(const LinearSystem& sys, int n);

// Stabilizer of the model normal form at a given tangency order.
struct StabilizerDescription {
    int n = 0;
    TriangularSolution sol;
    std::vector<std::vector<Coeff>> matrix_view; // (n+1)x(n+1), rows X_1..X_n, U
    std::string to_string() const;
};
StabilizerDescription stabilizer_at_order(int n, int order);
inline StabilizerDescription stabilizer_at_order(int n) { return stabilizer_at_order(n, n + 1); }

// Same, for an arbitrary (numeric-coefficient) graph.
StabilizerDescription stabilizer_of(const Series& F, int order);

// Templates of the normal form.
namespace templates {

// Chain jet data: x1^2/2 + x1^2 x2/2 + sum_{m=3..n} x1^m x_m/m!.
IndependentJetData chain_data(int n, int trunc);

// Chain + fully symbolic independent slots at order n+2 (prefix "F" or "G").
IndependentJetData order_n2_symbolic_data(int n, const std::string& prefix);

// The normalized template through order min(trunc, n+5): chain, the
// surviving symbolic invariants, zeros on the killed slots.
IndependentJetData normalized_template_data(int n, int trunc, const std::string& prefix);

// Parameter symbol for the jet-normalized coefficient F_sigma (value =
// sigma! * plain coefficient).
ParameterSymbol coeff_symbol(const std::string& prefix, const Expo& sigma);

// Convenience: completed series (grade_cap as in complete_rank1).
Series chain_surface(int n, int trunc, int grade_cap = -1);
Series order_n2_symbolic(int n, const std::string& prefix, int grade_cap = 2);
Series normalized_template(int n, int trunc, const std::string& prefix, int grade_cap = 2);

} // namespace templates

// The order-(n+2) action of the stabilizer on independent coefficients: the
// bracketed equations, one per independent monomial of order n+2. Monomial
// label together with the bracket value ((n+2)! or (n+1)! times the plain
// residual coefficient).
struct ActionBracket {
    Expo monomial;
    std::string label;
    Coeff bracket;
};
std::vector<ActionBracket> order_n2_action_brackets(int n);

// The two reduced tangency equations at orders n+2, n+3 in the last slot,
// after the triangular elimination of the auxiliary field parameters.
struct ObstructionResult {
    int n = 0;
    Coeff eqI, eqII;                 // linear in T1..T5, A[1,1]; coefficients in the template symbols
    TriangularSolution solved;       // the eliminated parameters with their closed forms
    std::vector<std::string> solved_log;
};
ObstructionResult obstruction_equations(int n);

// Numeric variant on a concrete normalized instance.
ObstructionResult obstruction_equations_for(const Series& instance);

// Final nonexistence verdict for one instance.
struct VerdictReport {
    int n = 0;
    bool in_range = true;            // n >= 5
    std::string branch;              // which case of the proof applied
    std::string relation;            // the exhibited nontrivial T-relation
    bool relation_nontrivial = false;
    size_t dim_symmetry_bound = 0;   // solution dim of the order-(n+4) system
    size_t realizable_t = 0;
    bool transitivity_contradicted = false; // realizable_t < n
    bool dim_at_most_4 = false;
    bool paths_agree = false;        // obstruction relation annihilates the brute basis
    std::vector<std::string> notes;
};
VerdictReport nonexistence_verdict(const Series& instance);

} // namespace hr1
