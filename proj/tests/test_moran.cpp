#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracdim/errors.hpp"
#include "fracdim/moran.hpp"
#include "fracdim/systems.hpp"

using namespace fracdim;

TEST_CASE("similarity dimension of textbook systems") {
    auto cantor = make_similarity_ifs({{parse_num("1/3"), parse_num("0")},
                                       {parse_num("1/3"), parse_num("2/3")}});
    CHECK(similarity_dimension(cantor) ==
          doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));

    auto full = make_similarity_ifs({{parse_num("1/2"), parse_num("0")},
                                     {parse_num("1/2"), parse_num("1/2")}});
    CHECK(similarity_dimension(full) == doctest::Approx(1.0).epsilon(1e-12));

    auto uneven = make_similarity_ifs({{parse_num("1/2"), parse_num("0")},
                                       {parse_num("1/4"), parse_num("3/4")}});
    // s solves (1/2)^s + (1/4)^s = 1, so 2^-s is the golden ratio conjugate.
    double expected = std::log((1.0 + std::sqrt(5.0)) / 2.0) / std::log(2.0);
    CHECK(similarity_dimension(uneven) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("algebraic roots come out exact to solver tolerance") {
    auto eq = make_moran({{2.0, 0.25}});
    MoranRoot root = solve_moran(eq);
    CHECK_FALSE(root.degenerate);
    CHECK(root.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::fabs(eq.evaluate(root.value) - 1.0) <= 1e-10);

    auto three = make_moran({{1.0, 0.2}, {1.0, 0.2}, {1.0, 0.2}});
    CHECK(solve_moran(three).value ==
          doctest::Approx(std::log(3.0) / std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("weight sum below one at s=0 is degenerate") {
    auto eq = make_moran({{0.5, 0.5}});
    MoranRoot root = solve_moran(eq);
    CHECK(root.degenerate);
    CHECK(root.value == 0.0);

    // weight sum exactly one: the root is 0 but not degenerate
    auto unit = make_moran({{0.5, 0.5}, {0.5, 0.25}});
    MoranRoot zero = solve_moran(unit);
    CHECK_FALSE(zero.degenerate);
    CHECK(zero.value == doctest::Approx(0.0));
}

TEST_CASE("large roots are bracketed automatically") {
    // root ~ 40.3: the default bracket has to reach it
    auto eq = make_moran({{1.5, 0.99}});
    double expected = std::log(1.5) / std::log(1.0 / 0.99);
    CHECK(solve_moran(eq).value == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("explicit brackets are honored or rejected") {
    auto eq = make_moran({{2.0, 0.25}});
    eq.lowerBracket = 0.0;
    eq.upperBracket = 1.0;
    CHECK(solve_moran(eq).value == doctest::Approx(0.5).epsilon(1e-12));

    eq.lowerBracket = 0.6;
    eq.upperBracket = 1.0;
    CHECK_THROWS_AS(solve_moran(eq), numeric_error);
}

TEST_CASE("equation terms are guarded") {
    CHECK_THROWS_AS(make_moran({}), invariant_error);
    CHECK_THROWS_AS(make_moran({{1.0, 0.0}}), invariant_error);
    CHECK_THROWS_AS(make_moran({{1.0, 1.0}}), invariant_error);
    CHECK_THROWS_AS(make_moran({{-1.0, 0.5}}), invariant_error);
}

TEST_CASE("term order does not change the computed root") {
    auto a = make_moran({{2.0, 0.2}, {1.0, 0.5}, {0.5, 0.1}});
    auto b = make_moran({{0.5, 0.1}, {2.0, 0.2}, {1.0, 0.5}});
    CHECK(solve_moran(a).value == solve_moran(b).value);
}

TEST_CASE("single map similarity dimension is zero") {
    SimilarityIFS1D one;
    one.maps = {{parse_num("1/2"), parse_num("0")}};
    one.osc = true;
    CHECK(similarity_dimension(one) == 0.0);
}
