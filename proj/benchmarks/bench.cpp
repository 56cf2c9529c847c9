#include <benchmark/benchmark.h>

#include "fracdim/cloud.hpp"
#include "fracdim/dimensions.hpp"
#include "fracdim/estimate.hpp"
#include "fracdim/hausdorff.hpp"
#include "fracdim/moran.hpp"
#include "fracdim/symbolic.hpp"
#include "fracdim/systems.hpp"

namespace {

using namespace fracdim;

LGCarpet sample_lg() {
    LGColumn left;
    left.width = num_of(1, 2);
    left.cells = {LGCell{num_of(1, 3), num_of(0, 1)}, LGCell{num_of(1, 3), num_of(2, 3)}};
    LGColumn right;
    right.width = num_of(1, 2);
    right.cells = {LGCell{num_of(1, 3), num_of(0, 1)}};
    return make_lg({left, right});
}

BaranskiCarpet sample_baranski() {
    return make_baranski({num_of(1, 5), num_of(4, 5)},
                         {num_of(1, 4), num_of(1, 4), num_of(1, 4), num_of(1, 4)},
                         {{0, 0}, {0, 2}, {1, 1}, {1, 3}});
}

SimilarityIFS1D cantor_ifs() {
    return make_similarity_ifs({SimilarityMap1D{num_of(1, 3), num_of(0, 1)},
                                SimilarityMap1D{num_of(1, 3), num_of(2, 3)}});
}

void BM_MoranSolve(benchmark::State& state) {
    const auto eq = make_moran({{2.0, 0.2}, {1.0, 0.5}, {0.5, 0.1}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_moran(eq).value);
    }
}
BENCHMARK(BM_MoranSolve);

void BM_CarpetQuantities(benchmark::State& state) {
    const Carpet carpet = sample_baranski();
    for (auto _ : state) {
        benchmark::DoNotOptimize(carpet_quantities(carpet).horizontal.D);
    }
}
BENCHMARK(BM_CarpetQuantities);

void BM_HausdorffOptimizer(benchmark::State& state) {
    const auto carpet = sample_lg();
    HausdorffSettings settings;
    settings.restarts = 8;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hausdorff_dimension_lg(carpet, settings));
    }
}
BENCHMARK(BM_HausdorffOptimizer);

void BM_CoveringCount(benchmark::State& state) {
    const auto cloud = point_cloud(System{cantor_ifs()}, static_cast<int>(state.range(0)),
                                   Sampling::Corners);
    const double r = 1.0 / static_cast<double>(1 << state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(covering_count(cloud, r));
    }
}
BENCHMARK(BM_CoveringCount)->Arg(8)->Arg(12);

void BM_BallStats(benchmark::State& state) {
    const auto cloud = point_cloud(System{cantor_ifs()}, 12, Sampling::Corners);
    const std::vector<ScalePair> pairs = {{0.25, 1.0 / 128.0}, {0.125, 1.0 / 256.0}};
    CenterPolicy policy;
    policy.maxCenters = 1024;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scale_pair_stats(cloud, pairs, true, policy));
    }
}
BENCHMARK(BM_BallStats);

void BM_RStopping(benchmark::State& state) {
    const auto carpet = sample_lg();
    const Num r = num_of(1, 1 << state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(r_stopping(Carpet{carpet}, r).size());
    }
}
BENCHMARK(BM_RStopping)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
