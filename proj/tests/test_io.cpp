#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hr1/instances.hpp"
#include "hr1/io.hpp"
#include "hr1/symmetry.hpp"
#include "test_util.hpp"

using namespace hr1;
using namespace hr1::testutil;

TEST_CASE("coefficient expression grammar round-trips") {
    for (const char* text : {"0", "1/2", "-3", "7/3", "2*A[1,1]", "-1/6*F[5,0,0,1]*B[2]^2",
                             "1*a[1,1]^-2*b[2] + 1/3*eps", "1 + -2*D"}) {
        Coeff c = parse_coeff(text);
        Coeff back = parse_coeff(coeff_to_expr(c));
        CHECK(back == c);
    }
    CHECK(parse_coeff("3/4*A[1,1] + 1/4*A[1,1]") == Coeff::from_symbol(sym("A[1,1]")));
    CHECK(parse_coeff("A[1,1] - A[1,1]").is_zero());
    CHECK_THROWS_AS(parse_coeff("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coeff("3*"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coeff("A[1,"), std::invalid_argument);
}

TEST_CASE("hypersurface spec round-trips byte-identically on canonical input") {
    SeededRng rng(3);
    Series F = complete_rank1(random_independent_data(3, 6, rng));
    HypersurfaceSpec spec = HypersurfaceSpec::from_series(F, {{"seed", "3"}});
    std::string text = serialize_spec(spec);
    HypersurfaceSpec parsed = parse_spec(text);
    CHECK(serialize_spec(parsed) == text);
    CHECK(parsed.to_series() == F);
    CHECK(parsed.mode == "numeric");

    // symbolic mode
    Series T = templates::normalized_template(3, 8, "F", 2);
    HypersurfaceSpec sp2 = HypersurfaceSpec::from_series(T);
    CHECK(sp2.mode == "symbolic");
    std::string t2 = serialize_spec(sp2);
    CHECK(serialize_spec(parse_spec(t2)) == t2);
    CHECK(parse_spec(t2).to_series() == T);
}

TEST_CASE("spec parse diagnostics") {
    CHECK_THROWS_WITH_AS(parse_spec("{ not json"), doctest::Contains("malformed"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_spec("{\"dimension\": 2}"), doctest::Contains("misses field"),
                         std::invalid_argument);
    std::string bad_entry = R"({"dimension":2,"truncation_order":4,"mode":"numeric",
      "coefficients":[{"exponents":[2,0],"value":"1//2"}]})";
    CHECK_THROWS_WITH_AS(parse_spec(bad_entry), doctest::Contains("entry 1"), std::invalid_argument);
    std::string bad_mode = R"({"dimension":2,"truncation_order":4,"mode":"float","coefficients":[]})";
    CHECK_THROWS_AS(parse_spec(bad_mode), std::invalid_argument);
}

TEST_CASE("independent data extraction rejects dependent exponents") {
    HypersurfaceSpec spec;
    spec.dimension = 2;
    spec.truncation_order = 4;
    spec.coefficients.emplace_back(ex({1, 2}), Coeff(1));
    CHECK_THROWS_AS(spec.to_independent_data(), std::invalid_argument);
}

TEST_CASE("seeded generation is deterministic") {
    Series a = random_normalized_instance(5, 10, 99, false, 2);
    Series b = random_normalized_instance(5, 10, 99, false, 2);
    CHECK(a == b);
    Series c = random_normalized_instance(5, 10, 100, false, 2);
    CHECK_FALSE(a == c);
}
