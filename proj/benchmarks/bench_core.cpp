#include <benchmark/benchmark.h>

#include "finsler/finsler.hpp"

using namespace finsler;

namespace {

const FinslerMetric& funk2() {
    static FinslerMetric m = make_funk(2);
    return m;
}
const FinslerMetric& fish3() {
    static FinslerMetric m = make_fish_tank();
    return m;
}

void FundamentalTensorFunk(benchmark::State& state) {
    VecD x{0.2, 0.1}, y{0.6, 0.8};
    for (auto _ : state) {
        auto ft = fundamental_tensor(funk2(), x, y);
        benchmark::DoNotOptimize(ft.det_g);
    }
}
BENCHMARK(FundamentalTensorFunk);

void SprayWithConnection(benchmark::State& state) {
    VecD x{0.2, 0.1}, y{0.6, 0.8};
    for (auto _ : state) {
        auto sp = spray_coefficients(funk2(), x, y);
        benchmark::DoNotOptimize(sp.N(0, 0));
    }
}
BENCHMARK(SprayWithConnection);

void SigmaBH(benchmark::State& state) {
    FinslerMetric m = state.range(0) == 2 ? funk2() : fish3();
    VecD x = VecD::zero(m.dim());
    x[0] = 0.3;
    for (auto _ : state) {
        double s = sigma_bh(m, x);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(SigmaBH)->Arg(2)->Arg(3);

void GeodesicToR5(benchmark::State& state) {
    VecD p{0.0, 0.0}, y{1.0, 0.0};
    for (auto _ : state) {
        GeodesicState s = flow_geodesic(funk2(), p, y, 5.0);
        benchmark::DoNotOptimize(s.x[0]);
    }
}
BENCHMARK(GeodesicToR5);

void JacobiFrameToR2(benchmark::State& state) {
    VecD p{0.0, 0.0}, y{1.0, 0.0};
    std::vector<double> radii = {0.5, 1.0, 1.5, 2.0};
    for (auto _ : state) {
        JacobiTrace tr = propagate_jacobi_frame(funk2(), p, y, radii);
        benchmark::DoNotOptimize(tr.frames.back().signed_det);
    }
}
BENCHMARK(JacobiFrameToR2);

void DensityProfileFunk(benchmark::State& state) {
    VecD p{0.0, 0.0};
    auto dirs = indicatrix_directions(funk2(), p, 8);
    std::vector<double> radii;
    for (int i = 1; i <= 10; ++i) radii.push_back(0.2 * i);
    for (auto _ : state) {
        DensityProfile prof =
            density_profile(funk2(), VolumeFormKind::BH, p, dirs, radii, {});
        benchmark::DoNotOptimize(prof.sigma_bar[0][0]);
    }
}
BENCHMARK(DensityProfileFunk);

}  // namespace

BENCHMARK_MAIN();
