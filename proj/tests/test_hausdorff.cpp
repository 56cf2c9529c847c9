#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "fracdim/dimensions.hpp"
#include "fracdim/errors.hpp"
#include "fracdim/hausdorff.hpp"
#include "fracdim/systems.hpp"
#include "oracles.hpp"

using namespace fracdim;

namespace {

LGCarpet two_column_carpet() {
    LGColumn left;
    left.width = parse_num("1/2");
    left.cells = {LGCell{parse_num("1/3"), parse_num("0")},
                  LGCell{parse_num("1/3"), parse_num("2/3")}};
    LGColumn right;
    right.width = parse_num("1/2");
    right.cells = {LGCell{parse_num("1/3"), parse_num("0")}};
    return make_lg({left, right});
}

// Uniform m x n grid carpet in column form with the given per-column counts.
LGCarpet grid_carpet(int m, int n, const std::vector<int>& occupancy) {
    std::vector<LGColumn> columns(m);
    for (int c = 0; c < m; ++c) {
        columns[c].width = num_of(1, m);
        for (int r = 0; r < occupancy[c]; ++r)
            columns[c].cells.push_back(LGCell{num_of(1, n), num_of(r, n)});
    }
    return make_lg(columns);
}

std::vector<int> random_occupancy(std::mt19937_64& rng, int m, int n) {
    std::vector<int> occ(m, 0);
    int total = 0;
    for (int c = 0; c < m; ++c) {
        occ[c] = static_cast<int>(rng() % static_cast<unsigned long long>(n + 1));
        total += occ[c];
    }
    if (total < 2) {
        occ[0] = 1;
        occ[m - 1] = 1;
    }
    return occ;
}

}  // namespace

TEST_CASE("two-column fixture hits the closed-form value") {
    double dim = hausdorff_dimension_lg(two_column_carpet());
    CHECK(dim == doctest::Approx(oracles::mcmullen_hausdorff(2, 3, {2, 1})).epsilon(1e-10));
}

TEST_CASE("random uniform grids agree with the closed form") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        int m = 2 + static_cast<int>(rng() % 4);
        int n = m + static_cast<int>(rng() % (6 - m)) + (m == 5 ? 0 : 0);
        if (n < m) n = m;
        auto occ = random_occupancy(rng, m, n);
        CAPTURE(trial);
        CAPTURE(m);
        CAPTURE(n);
        double expected = oracles::mcmullen_hausdorff(m, n, occ);
        double got = hausdorff_dimension_lg(grid_carpet(m, n, occ));
        CHECK(got == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("uniform fibres collapse the dimension onto box") {
    // every occupied column holds the same number of cells
    LGCarpet carpet = grid_carpet(3, 4, {2, 0, 2});
    double h = hausdorff_dimension_lg(carpet);
    double b = box_dimension(Carpet{carpet});
    CHECK(h == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("single cell carpet has dimension zero") {
    LGColumn only;
    only.width = parse_num("1");
    only.cells = {LGCell{parse_num("1/3"), parse_num("0")}};
    LGCarpet carpet;
    carpet.columns = {only};  // bypasses the two-cell minimum on purpose
    CHECK(hausdorff_dimension_lg(carpet) == doctest::Approx(0.0));
}

TEST_CASE("maximizer is a distribution and a stationary point") {
    LGCarpet carpet = two_column_carpet();
    std::vector<double> p = lg_maximizer(carpet);
    REQUIRE(p.size() == 3);

    double mass = std::accumulate(p.begin(), p.end(), 0.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    for (double v : p) CHECK(v >= 0.0);

    double value = lg_objective(carpet, p);
    CHECK(value == doctest::Approx(hausdorff_dimension_lg(carpet)).epsilon(1e-10));

    // central finite differences projected onto the simplex tangent space
    const double step = 1e-6;
    std::vector<double> grad(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<double> hi = p;
        std::vector<double> lo = p;
        hi[i] += step;
        lo[i] -= step;
        grad[i] = (lg_objective(carpet, hi) - lg_objective(carpet, lo)) / (2.0 * step);
    }
    double mean = std::accumulate(grad.begin(), grad.end(), 0.0) / static_cast<double>(grad.size());
    double norm = 0.0;
    for (double g : grad) norm += (g - mean) * (g - mean);
    norm = std::sqrt(norm);
    CHECK(norm <= 1e-6);
}

TEST_CASE("objective validates its input distribution") {
    LGCarpet carpet = two_column_carpet();
    CHECK_THROWS_AS(lg_objective(carpet, {0.5, 0.5}), input_error);
    CHECK_THROWS_AS(lg_objective(carpet, {0.5, 0.4, -0.1}), input_error);
    CHECK_THROWS_AS(lg_objective(carpet, {0.2, 0.2, 0.2}), input_error);
}

TEST_CASE("settings control the search") {
    LGCarpet carpet = two_column_carpet();
    HausdorffSettings fast;
    fast.restarts = 1;
    double oneShot = hausdorff_dimension_lg(carpet, fast);
    CHECK(oneShot == doctest::Approx(oracles::mcmullen_hausdorff(2, 3, {2, 1})).epsilon(1e-8));

    HausdorffSettings seeded;
    seeded.seed = 99;
    CHECK(hausdorff_dimension_lg(carpet, seeded) == doctest::Approx(oneShot).epsilon(1e-10));
}

TEST_CASE("hausdorff value sits between lower and box dimension") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        int m = 2 + static_cast<int>(rng() % 3);
        int n = m + 1 + static_cast<int>(rng() % 3);
        auto occ = random_occupancy(rng, m, n);
        CAPTURE(trial);
        LGCarpet carpet = grid_carpet(m, n, occ);
        Carpet c{carpet};
        double h = hausdorff_dimension_lg(carpet);
        CHECK(h >= lower_dimension(c) - 1e-9);
        CHECK(h <= box_dimension(c) + 1e-9);
    }
}
