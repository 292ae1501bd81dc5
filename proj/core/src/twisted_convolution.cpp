#include "cdce/twisted_convolution.hpp"

#include <algorithm>
#include <cmath>

namespace cdce {

CMatrix twisted_convolution(const DDGrid& y, const DDGrid& x) {
    const auto& Y = y.values;
    const auto& X = x.values;
    if (Y.rows() != X.rows() || Y.cols() != X.cols()) {
        throw DimensionError("twisted_convolution: grid shapes differ");
    }
    const int M = static_cast<int>(X.rows());
    const int N = static_cast<int>(X.cols());
    const double mn = static_cast<double>(M) * N;

    // alpha only depends on the Doppler difference, tabulate it once
    std::vector<Complex> wrap_phase(static_cast<std::size_t>(2 * N));
    for (int d = -N; d < N; ++d) {
        wrap_phase[static_cast<std::size_t>(d + N)] = std::polar(1.0, -2.0 * kPi * d / N);
    }
    const CMatrix Yc = Y.conjugate();

    CMatrix v = CMatrix::Zero(M, N);
    for (int l = 0; l < M; ++l) {
        for (int k = 0; k < N; ++k) {
            const double ks = signed_doppler(k, N);
            Complex acc{0.0, 0.0};
            for (int m = 0; m < M; ++m) {
                const int dl = m - l;
                const int src_row = wrap_index(dl, M);
                const Complex delay_phase = std::polar(1.0, 2.0 * kPi * ks * dl / mn);
                Complex row_acc{0.0, 0.0};
                for (int n = 0; n < N; ++n) {
                    Complex term = Yc(m, n) * X(src_row, wrap_index(n - k, N));
                    if (dl < 0) term *= wrap_phase[static_cast<std::size_t>(n - k + N)];
                    row_acc += term;
                }
                acc += row_acc * delay_phase;
            }
            v(l, k) = acc;
        }
    }
    return v;
}

std::vector<DelayDoppler> target_region(const ChannelStats& stats) {
    std::vector<DelayDoppler> r;
    r.reserve(static_cast<std::size_t>(stats.region_size()));
    for (int l = 0; l <= stats.l_max; ++l) {
        for (int k = -stats.k_max; k <= stats.k_max; ++k) r.push_back({l, k});
    }
    return r;
}

CoarseEstimate threshold_select(const CMatrix& v, const ChannelStats& stats, double gamma) {
    if (gamma < 0.0) throw ParameterError("threshold_select: gamma must be non-negative");
    const int M = static_cast<int>(v.rows());
    const int N = static_cast<int>(v.cols());
    if (stats.l_max >= M || 2 * stats.k_max + 1 > N) {
        throw DimensionError("threshold_select: target region exceeds the DD grid");
    }
    struct Entry {
        DelayDoppler pair;
        Complex score;
    };
    std::vector<Entry> kept;
    for (const auto& p : target_region(stats)) {
        const Complex s = v(p.delay, wrap_index(p.doppler, N));
        if (std::abs(s) >= gamma) kept.push_back({p, s});
    }
    std::stable_sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) {
        const double ma = std::abs(a.score);
        const double mb = std::abs(b.score);
        if (ma != mb) return ma > mb;
        return a.pair < b.pair;
    });
    CoarseEstimate out;
    for (const auto& e : kept) {
        out.pairs.push_back(e.pair);
        out.scores.push_back(e.score);
    }
    return out;
}

double default_gamma(EstimationMode mode, double noise_psd, const CMatrix& v,
                     const ChannelStats& stats) {
    if (mode == EstimationMode::pilot_only) {
        if (noise_psd < 0.0) throw ParameterError("default_gamma: N0 must be non-negative");
        return std::sqrt(noise_psd) / 3.0;
    }
    const int N = static_cast<int>(v.cols());
    double power = 0.0;
    for (const auto& p : target_region(stats)) power += std::norm(v(p.delay, wrap_index(p.doppler, N)));
    return std::sqrt(power / stats.region_size());
}

}  // namespace cdce
