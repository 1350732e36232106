#pragma once

#include "hr1/rank1.hpp"
#include "hr1/series.hpp"

#include <map>
#include <string>

namespace hr1 {

// On-disk hypersurface description. Coefficient values serialize as exact
// "p/q" strings in numeric mode, or as parameter expressions in the
// documented sum-of-products grammar in symbolic mode.
struct HypersurfaceSpec {
    int dimension = 0;
    int truncation_order = 0;
    std::string mode = "numeric"; // "numeric" | "symbolic"
    std::vector<std::pair<Expo, Coeff>> coefficients;
    std::map<std::string, std::string> metadata;

    static HypersurfaceSpec from_series(const Series& s, std::map<std::string, std::string> meta = {});
    Series to_series() const;
    IndependentJetData to_independent_data() const;
};

// Expression grammar for coefficient values:
//   expr   := term (('+'|'-') term)*
//   term   := rational ('*' factor)* | factor ('*' factor)*
//   factor := name ('^' integer)?
//   name   := ident ('[' integer (',' integer)* ']')?
// Rationals are "p" or "p/q"; exponents may be negative.
Coeff parse_coeff(const std::string& text);
std::string coeff_to_expr(const Coeff& c);

std::string serialize_spec(const HypersurfaceSpec& spec);
HypersurfaceSpec parse_spec(const std::string& text);

} // namespace hr1
