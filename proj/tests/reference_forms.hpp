#pragma once

// Reference closed forms used as golden data by the acceptance suite: the
// finite stabilizer matrices and their action equations in dimensions
// n = 2..5, and the bracket equations in dimensions n = 2..6. Entries are
// written in the coefficient-expression grammar and parsed exactly.

#include "hr1/io.hpp"

#include <string>
#include <vector>

namespace hr1::refforms {

struct FiniteStabilizer {
    int n;
    std::vector<std::vector<std::string>> matrix; // (n+1)x(n+1), expression strings
};

// Group parameters: a[1,1], a[2,1], ..., a[n,1], b[n]; the u-row is
// (0..0, a[1,1]^2).
inline FiniteStabilizer finite_stabilizer(int n) {
    switch (n) {
        case 2:
            return {2,
                    {{"a[1,1]", "0", "-1*a[1,1]*a[2,1]"},
                     {"a[2,1]", "1", "b[2]"},
                     {"0", "0", "a[1,1]^2"}}};
        case 3:
            return {3,
                    {{"a[1,1]", "0", "0", "-1*a[1,1]*a[2,1]"},
                     {"a[2,1]", "1", "0", "-1/2*a[2,1]^2 - 2/3*a[1,1]*a[3,1]"},
                     {"a[3,1]", "0", "a[1,1]^-1", "b[3]"},
                     {"0", "0", "0", "a[1,1]^2"}}};
        case 4:
            return {4,
                    {{"a[1,1]", "0", "0", "0", "-1*a[1,1]*a[2,1]"},
                     {"a[2,1]", "1", "0", "0", "-1/2*a[2,1]^2 - 2/3*a[1,1]*a[3,1]"},
                     {"a[3,1]", "0", "a[1,1]^-1", "0", "-1/2*a[1,1]*a[4,1] - a[2,1]*a[3,1]"},
                     {"a[4,1]", "0", "-2*a[2,1]*a[1,1]^-2", "a[1,1]^-2", "b[4]"},
                     {"0", "0", "0", "0", "a[1,1]^2"}}};
        case 5:
            return {5,
                    {{"a[1,1]", "0", "0", "0", "0", "-1*a[1,1]*a[2,1]"},
                     {"a[2,1]", "1", "0", "0", "0", "-1/2*a[2,1]^2 - 2/3*a[1,1]*a[3,1]"},
                     {"a[3,1]", "0", "a[1,1]^-1", "0", "0", "-1*a[2,1]*a[3,1] - 1/2*a[1,1]*a[4,1]"},
                     {"a[4,1]", "0", "-2*a[2,1]*a[1,1]^-2", "a[1,1]^-2", "0",
                      "-1*a[2,1]*a[4,1] - 2/3*a[3,1]^2 - 2/5*a[1,1]*a[5,1]"},
                     {"a[5,1]", "0", "5*a[2,1]^2*a[1,1]^-3 - 10/3*a[3,1]*a[1,1]^-2",
                      "-5*a[2,1]*a[1,1]^-3", "a[1,1]^-3", "b[5]"},
                     {"0", "0", "0", "0", "0", "a[1,1]^2"}}};
        default:
            throw std::invalid_argument("finite stabilizer reference available for n = 2..5 only");
    }
}

struct ReferenceEquation {
    std::vector<int> sigma; // monomial exponents
    std::string expr;       // right-hand side
};

// The action equations of the finite stabilizer on the order-(n+2)
// coefficients. In the n=4 equation at x1^5 x3 the a21-linear term carries
// the factor G[5,0,0,1] (the n=5 analogue carries G[6,0,0,0,1] in the same
// position; the exact computation confirms the form).
inline std::vector<ReferenceEquation> reference_equations(int n) {
    switch (n) {
        case 2:
            return {{{4, 0},
                     "-1/24*a[1,1]^2*F[4,0] + 1/24*a[1,1]^4*G[4,0] + 1/6*a[1,1]^3*a[2,1]*G[3,1] + "
                     "1/8*a[1,1]^2*a[2,1]^2 + 1/4*a[1,1]^2*b[2]"},
                    {{3, 1}, "-1/6*a[1,1]^2*F[3,1] + 1/6*a[1,1]^3*G[3,1]"}};
        case 3:
            return {{{5, 0, 0},
                     "-1/120*a[1,1]^2*F[5,0,0] + 1/120*a[1,1]^5*G[5,0,0] + "
                     "1/24*a[1,1]^4*a[2,1]*G[4,1,0] + 1/12*a[1,1]^3*a[2,1]*a[3,1] + "
                     "1/24*a[1,1]^4*a[3,1]*G[4,0,1] + 1/12*a[1,1]^3*b[3]"},
                    {{4, 1, 0}, "-1/24*a[1,1]^2*F[4,1,0] + 1/24*a[1,1]^4*G[4,1,0]"},
                    {{4, 0, 1},
                     "-1/24*a[1,1]^2*F[4,0,1] + 1/24*a[1,1]^3*G[4,0,1] + 1/12*a[1,1]^2*a[2,1]"}};
        case 4:
            return {{{6, 0, 0, 0},
                     "-1/720*a[1,1]^2*F[6,0,0,0] + 1/720*a[1,1]^6*G[6,0,0,0] + "
                     "1/72*a[1,1]^4*a[3,1]^2 + 1/48*a[1,1]^4*a[2,1]*a[4,1] + "
                     "1/120*G[5,1,0,0]*a[1,1]^5*a[2,1] + 1/120*G[5,0,1,0]*a[1,1]^5*a[3,1] + "
                     "1/120*G[5,0,0,1]*a[1,1]^5*a[4,1] + 1/48*a[1,1]^4*b[4]"},
                    {{5, 1, 0, 0}, "-1/120*a[1,1]^2*F[5,1,0,0] + 1/120*a[1,1]^5*G[5,1,0,0]"},
                    {{5, 0, 1, 0},
                     "-1/120*a[1,1]^2*F[5,0,1,0] + 1/120*a[1,1]^4*G[5,0,1,0] - "
                     "1/24*a[1,1]^2*a[2,1]^2 - 1/60*a[1,1]^3*a[2,1]*G[5,0,0,1] + "
                     "1/36*a[1,1]^3*a[3,1]"},
                    {{5, 0, 0, 1},
                     "-1/120*a[1,1]^2*F[5,0,0,1] + 1/120*a[1,1]^3*G[5,0,0,1] + "
                     "1/24*a[1,1]^2*a[2,1]"}};
        case 5:
            return {{{7, 0, 0, 0, 0},
                     "-1/5040*a[1,1]^2*F[7,0,0,0,0] + 1/5040*a[1,1]^7*G[7,0,0,0,0] + "
                     "1/144*a[1,1]^5*a[3,1]*a[4,1] + 1/240*a[1,1]^5*a[2,1]*a[5,1] + "
                     "1/720*G[6,1,0,0,0]*a[1,1]^6*a[2,1] + 1/720*G[6,0,1,0,0]*a[1,1]^6*a[3,1] + "
                     "1/720*G[6,0,0,1,0]*a[1,1]^6*a[4,1] + 1/720*G[6,0,0,0,1]*a[1,1]^6*a[5,1] + "
                     "1/240*a[1,1]^5*b[5]"},
                    {{6, 1, 0, 0, 0}, "-1/720*a[1,1]^2*F[6,1,0,0,0] + 1/720*a[1,1]^6*G[6,1,0,0,0]"},
                    {{6, 0, 1, 0, 0},
                     "-1/720*a[1,1]^2*F[6,0,1,0,0] + 1/720*a[1,1]^5*G[6,0,1,0,0] - "
                     "1/36*a[1,1]^3*a[2,1]*a[3,1] + 1/48*a[1,1]^2*a[2,1]^3 + "
                     "1/144*a[1,1]^3*a[2,1]^2*G[6,0,0,0,1] - 1/216*a[1,1]^4*a[3,1]*G[6,0,0,0,1] - "
                     "1/360*a[1,1]^4*a[2,1]*G[6,0,0,1,0] + 1/144*a[1,1]^4*a[4,1]"},
                    {{6, 0, 0, 1, 0},
                     "-1/720*a[1,1]^2*F[6,0,0,1,0] + 1/720*a[1,1]^4*G[6,0,0,1,0] - "
                     "1/32*a[1,1]^2*a[2,1]^2 - 1/144*a[1,1]^3*a[2,1]*G[6,0,0,0,1] + "
                     "1/72*a[1,1]^3*a[3,1]"},
                    {{6, 0, 0, 0, 1},
                     "-1/720*a[1,1]^2*F[6,0,0,0,1] + 1/720*a[1,1]^3*G[6,0,0,0,1] + "
                     "1/80*a[1,1]^2*a[2,1]"}};
        default:
            throw std::invalid_argument("reference equations available for n = 2..5 only");
    }
}

struct ReferenceBracket {
    std::vector<int> sigma;
    std::string expr;
};

// Bracket lists for dimensions 2..6, fractional coefficients 10/3 and 35/2
// included.
inline std::vector<ReferenceBracket> reference_brackets(int n) {
    switch (n) {
        case 2:
            return {{{4, 0}, "2*F[4,0]*A[1,1] + 4*F[3,1]*A[2,1] + 6*B[2]"},
                    {{3, 1}, "1*F[3,1]*A[1,1]"}};
        case 3:
            return {{{5, 0, 0}, "3*F[5,0,0]*A[1,1] + 5*F[4,1,0]*A[2,1] + 5*F[4,0,1]*A[3,1] + 10*B[3]"},
                    {{4, 1, 0}, "2*F[4,1,0]*A[1,1]"},
                    {{4, 0, 1}, "1*F[4,0,1]*A[1,1] + 2*A[2,1]"}};
        case 4:
            return {{{6, 0, 0, 0},
                     "4*F[6,0,0,0]*A[1,1] + 6*F[5,1,0,0]*A[2,1] + 6*F[5,0,1,0]*A[3,1] + "
                     "6*F[5,0,0,1]*A[4,1] + 15*B[4]"},
                    {{5, 1, 0, 0}, "3*F[5,1,0,0]*A[1,1]"},
                    {{5, 0, 1, 0}, "2*F[5,0,1,0]*A[1,1] - 2*F[5,0,0,1]*A[2,1] + 10/3*A[3,1]"},
                    {{5, 0, 0, 1}, "1*F[5,0,0,1]*A[1,1] + 5*A[2,1]"}};
        case 5:
            return {{{7, 0, 0, 0, 0},
                     "5*F[7,0,0,0,0]*A[1,1] + 7*F[6,1,0,0,0]*A[2,1] + 7*F[6,0,1,0,0]*A[3,1] + "
                     "7*F[6,0,0,1,0]*A[4,1] + 7*F[6,0,0,0,1]*A[5,1] + 21*B[5]"},
                    {{6, 1, 0, 0, 0}, "4*F[6,1,0,0,0]*A[1,1]"},
                    {{6, 0, 1, 0, 0},
                     "3*F[6,0,1,0,0]*A[1,1] - 2*F[6,0,0,1,0]*A[2,1] - 10/3*F[6,0,0,0,1]*A[3,1] + "
                     "5*A[4,1]"},
                    {{6, 0, 0, 1, 0}, "2*F[6,0,0,1,0]*A[1,1] - 5*F[6,0,0,0,1]*A[2,1] + 10*A[3,1]"},
                    {{6, 0, 0, 0, 1}, "1*F[6,0,0,0,1]*A[1,1] + 9*A[2,1]"}};
        case 6:
            return {{{8, 0, 0, 0, 0, 0},
                     "6*F[8,0,0,0,0,0]*A[1,1] + 8*F[7,1,0,0,0,0]*A[2,1] + 8*F[7,0,1,0,0,0]*A[3,1] + "
                     "8*F[7,0,0,1,0,0]*A[4,1] + 8*F[7,0,0,0,1,0]*A[5,1] + 8*F[7,0,0,0,0,1]*A[6,1] + "
                     "28*B[6]"},
                    {{7, 1, 0, 0, 0, 0}, "5*F[7,1,0,0,0,0]*A[1,1]"},
                    {{7, 0, 1, 0, 0, 0},
                     "4*F[7,0,1,0,0,0]*A[1,1] - 2*F[7,0,0,1,0,0]*A[2,1] - "
                     "10/3*F[7,0,0,0,1,0]*A[3,1] - 5*F[7,0,0,0,0,1]*A[4,1] + 7*A[5,1]"},
                    {{7, 0, 0, 1, 0, 0},
                     "3*F[7,0,0,1,0,0]*A[1,1] - 5*F[7,0,0,0,1,0]*A[2,1] - 10*F[7,0,0,0,0,1]*A[3,1] + "
                     "35/2*A[4,1]"},
                    {{7, 0, 0, 0, 1, 0},
                     "2*F[7,0,0,0,1,0]*A[1,1] - 9*F[7,0,0,0,0,1]*A[2,1] + 21*A[3,1]"},
                    {{7, 0, 0, 0, 0, 1}, "1*F[7,0,0,0,0,1]*A[1,1] + 14*A[2,1]"}};
        default:
            throw std::invalid_argument("reference brackets available for n = 2..6 only");
    }
}

} // namespace hr1::refforms
