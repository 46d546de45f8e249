#include <benchmark/benchmark.h>

#include "cara/colorful.hpp"
#include "cara/generators.hpp"
#include "cara/geometry.hpp"
#include "cara/tverberg.hpp"

using namespace cara;

namespace {

std::vector<Point> centered(std::vector<Point> pts) {
    Point c(pts.front().dim());
    for (const auto& p : pts) c = c + p;
    c = c / Rational(static_cast<long>(pts.size()));
    for (auto& p : pts) p = p - c;
    return pts;
}

}  // namespace

static void BM_MinNormPoint(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto pts = random_points(n, 4 * n, 20, 7);
    for (auto _ : state) benchmark::DoNotOptimize(min_norm_point(pts));
}
BENCHMARK(BM_MinNormPoint)->DenseRange(2, 6, 2);

static void BM_ColorfulCaratheodory(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<CompactumRep> colors;
    for (std::size_t i = 0; i <= n; ++i) colors.push_back(CompactumRep::cloud(centered(random_points(n, 5, 9, 11 + i))));
    const auto sys = ColorSystem::of(std::move(colors));
    for (auto _ : state) benchmark::DoNotOptimize(colorful_caratheodory(sys));
}
BENCHMARK(BM_ColorfulCaratheodory)->DenseRange(1, 4, 1);

static void BM_KConvColorfulCurves(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<CompactumRep> colors;
    for (std::size_t i = 0; i < n; ++i) colors.push_back(CompactumRep::pl_curve(centered(random_walk(n, 12, 4, 5 + i))));
    const auto sys = ColorSystem::of(std::move(colors));
    for (auto _ : state) benchmark::DoNotOptimize(kconv_colorful(sys, n - 1));
}
BENCHMARK(BM_KConvColorfulCurves)->Arg(2)->Arg(3);

static void BM_TverbergSevenPoints(benchmark::State& state) {
    const Family f = singleton_family(2, 7, 10, 3);
    TverbergConfig cfg;
    cfg.kappa = 3;
    for (auto _ : state) benchmark::DoNotOptimize(tverberg_partition(f, 2, cfg));
}
BENCHMARK(BM_TverbergSevenPoints);

static void BM_TverbergThreeParts(benchmark::State& state) {
    const Family f = singleton_family(2, 10, 10, 4);
    TverbergConfig cfg;
    cfg.kappa = 3;
    for (auto _ : state) benchmark::DoNotOptimize(tverberg_partition(f, 3, cfg));
}
BENCHMARK(BM_TverbergThreeParts);

static void BM_TverbergSquareEdges(benchmark::State& state) {
    Family f = square_edges_family();
    f.members.push_back({{Point{ratio(1, 2), ratio(1, 2)}}});
    TverbergConfig cfg;
    cfg.kappa = 2;
    for (auto _ : state) benchmark::DoNotOptimize(tverberg_partition(f, 2, cfg));
}
BENCHMARK(BM_TverbergSquareEdges);
BENCHMARK_MAIN();
