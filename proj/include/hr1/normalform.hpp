#pragma once

#include "hr1/rank1.hpp"
#include "hr1/transform.hpp"

#include <map>
#include <string>
#include <vector>

namespace hr1 {

struct StageRecord {
    ElementaryMap map;
    AffineTransform matrix; // same map as an (n+1)x(n+1) matrix
    Series output;          // graph after the stage
};

struct PipelineOptions {
    bool verify_stages = true;  // run the fundamental-equation oracle per stage
    bool check_rank1 = true;    // verify rank-1 residuals of the input
};

struct NormalFormResult {
    int n_H = 0;
    Series normalized;
    std::vector<StageRecord> stages;
    std::vector<std::string> notes;

    AffineTransform composite() const {
        if (stages.empty()) return AffineTransform::identity(normalized.nvars(), "identity");
        AffineTransform t = stages.front().matrix;
        for (size_t i = 1; i < stages.size(); ++i) t = stages[i].matrix.after(t);
        return t;
    }
};

// Full report of the normalization pipeline per the engine's public contract.
struct NormalFormReport {
    int n_H = 0;
    Series normalized;
    std::vector<StageRecord> stages;
    std::map<std::string, Coeff> residual_invariants; // label -> jet value
    bool template_ok = false;
    std::vector<std::string> template_mismatches;
    std::vector<std::string> notes;

    AffineTransform composite() const {
        if (stages.empty()) return AffineTransform::identity(normalized.nvars(), "identity");
        AffineTransform t = stages.front().matrix;
        for (size_t i = 1; i < stages.size(); ++i) t = stages[i].matrix.after(t);
        return t;
    }
};

// Order-2 normalization: pivot (renaming), square completion, unit dilation.
// Output graph has exactly x1^2/2 at order 2 (rank-1 kills the x'-block).
NormalFormResult normalize_order2(const Series& F, const PipelineOptions& opt = {});

// The order-nu induction: absorbs order-(nu+1) independent slices into the
// chain monomials x1^nu x_nu / nu!; stops with the product rank n_H when a
// slice degenerates.
NormalFormResult chain_induction(const Series& F, const PipelineOptions& opt = {});

// Kills the affinely removable order-(n+2) and order-(n+3) coefficients in
// the triangular order; leaves the relative invariants. Requires a
// nondegenerate chain (n_H = n).
NormalFormResult normalize_top_orders(const Series& F, const PipelineOptions& opt = {});

// The full pipeline plus template verification and invariant extraction.
NormalFormReport full_normal_form(const Series& F, const PipelineOptions& opt = {});

// Weight of a monomial under the residual one-parameter dilation group:
// -2 + sigma_1 - sigma_3 - 2 sigma_4 - ... - (n-2) sigma_n.
int dilation_weight(const Expo& sigma);

// Exact check that the residual dilation with parameter a acts on every
// coefficient by F_sigma = a^{weight(sigma)} G_sigma.
bool check_dilation_action(const Series& F, const Rational& a);

// The weighted dilation as a list of elementary maps.
std::vector<ElementaryMap> residual_dilation(int n, const Rational& a);

// Independent-slice reader: phi_k = nu! * [x1^nu x_k], k = 2..n, and
// phi_1 = nu! * [x1^{nu+1}].
std::vector<Coeff> independent_slice(const Series& F, int nu);

// Restores the chain normalization at orders <= n+1 after an elementary
// perturbation (used by the top-order kills). Fails if the chain degenerates.
NormalFormResult restore_chain(const Series& F, const PipelineOptions& opt = {});

} // namespace hr1
