#include <benchmark/benchmark.h>

#include "cdce/baselines.hpp"
#include "cdce/cdce_estimator.hpp"
#include "cdce/experiment.hpp"
#include "cdce/grid_transforms.hpp"
#include "cdce/pilot_frames.hpp"

using namespace cdce;

namespace {

const Dims kDims;

struct Fixture {
    Frame frame;
    ChannelRealization channel;
    TFGrid y;
    double n0 = 0.1;

    Fixture() {
        Rng rng(11);
        frame = assemble_frame(FrameSpec{}, rng);
        channel = sample_channel(ChannelStats{}, kDims, false, rng);
        const auto tx = tf_to_time(frame.tf, kDims, true);
        const auto rx = apply_channel(tx, time_channel_matrix(channel, Pulse{}), n0, rng);
        y = time_to_tf(remove_cp(rx, kDims), kDims);
    }
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

void BM_TwistedConvolution(benchmark::State& state) {
    const auto& f = fixture();
    const auto y = tf_to_dd(f.y, kDims);
    const auto x = tf_to_dd(f.frame.pilot_only_tf, kDims);
    for (auto _ : state) benchmark::DoNotOptimize(twisted_convolution(y, x));
}
BENCHMARK(BM_TwistedConvolution);

void BM_BuildDictionary(benchmark::State& state) {
    const auto& f = fixture();
    const auto region = target_region(ChannelStats{});
    for (auto _ : state) benchmark::DoNotOptimize(build_dictionary(f.frame.pilot_only_tf, region, Pulse{}, kDims));
}
BENCHMARK(BM_BuildDictionary);

void BM_SolveLasso(benchmark::State& state) {
    const auto& f = fixture();
    const auto dict = build_dictionary(f.frame.pilot_only_tf, target_region(ChannelStats{}), Pulse{}, kDims);
    const CVector y = vec(f.y.values);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lasso(y, dict.D, LassoConfig{}));
}
BENCHMARK(BM_SolveLasso);

void BM_CdceEstimate(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cdce_estimate(f.y, f.frame, kDims, ChannelStats{}, CdceConfig{}, f.n0));
    }
}
BENCHMARK(BM_CdceEstimate);

void BM_FsLmmse(benchmark::State& state) {
    const auto& f = fixture();
    const auto cov = fit_covariance(ChannelStats{}, kDims, Pulse{}, false, 1000, 5, 1);
    for (auto _ : state) benchmark::DoNotOptimize(fs_lmmse(f.y, f.frame.pilot_only_tf, cov, f.n0));
}
BENCHMARK(BM_FsLmmse);

void BM_Trial(benchmark::State& state) {
    SimConfig cfg;
    cfg.threads = 1;
    const Experiment exp(cfg);
    int trial = 0;
    for (auto _ : state) benchmark::DoNotOptimize(exp.run_trial(2, trial++));
}
BENCHMARK(BM_Trial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
