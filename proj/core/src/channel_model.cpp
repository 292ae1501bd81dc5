#include "cdce/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "cdce/grid_transforms.hpp"

namespace cdce {
namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

// Doppler in cycles per sample: nu * T_s = (k + kappa) / (M N).
double doppler_per_sample(const PathParams& p, const Dims& d) {
    return p.doppler() / static_cast<double>(d.M * d.N);
}

// Receive offsets m - n at which a path can have a nonzero tap.
std::pair<int, int> tap_span(const PathParams& p, const Pulse& pulse) {
    const double tau = p.delay();
    if (pulse.kind == PulseKind::ideal) {
        const int l = static_cast<int>(std::lround(tau));
        return {l, l};
    }
    const int lo = static_cast<int>(std::floor(tau));
    return {lo, lo + 1};
}

void check_cp_coverage(const std::vector<PathParams>& paths, const Pulse& pulse, const Dims& d) {
    for (const auto& p : paths) {
        if (p.delay() < 0.0) throw ConfigurationError("channel: negative path delay");
        if (pulse.kind == PulseKind::ideal && std::abs(p.delay_frac) > 0.0) {
            throw ConfigurationError(
                "channel: the ideal pulse is defined on integer delays only; use the "
                "rectangular pulse for fractional delays");
        }
        const double spread = pulse.kind == PulseKind::ideal ? p.delay() : std::ceil(p.delay());
        if (spread > d.cp) {
            throw ConfigurationError("channel: delay spread " + std::to_string(p.delay()) +
                                     " exceeds the cyclic prefix " + std::to_string(d.cp));
        }
    }
}

}  // namespace

void ChannelStats::validate(const Dims& d) const {
    if (paths < 1) throw ConfigurationError("ChannelStats: need at least one path");
    if (l_max < 0 || k_max < 0) throw ConfigurationError("ChannelStats: negative index bound");
    if (l_max > d.cp) throw ConfigurationError("ChannelStats: l_max must not exceed L_cp");
    // 2 k_max + 1 distinct Doppler bins must fit in N columns
    if (2 * k_max + 1 > d.N) throw ConfigurationError("ChannelStats: need 2 k_max + 1 <= N");
    if (l_max >= d.M) throw ConfigurationError("ChannelStats: l_max must be below M");
}

Complex complex_gaussian(Rng& rng, double variance) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

ChannelRealization sample_channel(const ChannelStats& stats, const Dims& d, bool fractional,
                                  Rng& rng) {
    d.validate();
    stats.validate(d);
    if (stats.paths > stats.region_size()) {
        throw ConfigurationError("sample_channel: cannot draw " + std::to_string(stats.paths) +
                                 " distinct (l, k) pairs from a region of " +
                                 std::to_string(stats.region_size()));
    }
    std::uniform_int_distribution<int> delay(0, stats.l_max);
    std::uniform_int_distribution<int> doppler(-stats.k_max, stats.k_max);
    std::uniform_real_distribution<double> frac(-0.5, 0.5);

    ChannelRealization ch{{}, d};
    std::set<std::pair<int, int>> used;
    while (static_cast<int>(ch.paths.size()) < stats.paths) {
        const int l = delay(rng);
        const int k = doppler(rng);
        if (!used.emplace(l, k).second) continue;
        PathParams p;
        p.delay_int = l;
        p.doppler_int = k;
        ch.paths.push_back(p);
    }
    for (auto& p : ch.paths) {
        if (fractional) {
            p.delay_frac = frac(rng);
            // keep the total delay non-negative and the Doppler within N/2
            if (p.delay() < 0.0) p.delay_frac = -p.delay_frac;
            p.doppler_frac = frac(rng);
            if (std::abs(p.doppler()) > d.N / 2.0) p.doppler_frac = -p.doppler_frac;
        }
        p.gain = complex_gaussian(rng, stats.gain_variance());
    }
    return ch;
}

Complex pulse_af(double tau, double nu, const Pulse& pulse, double sample_period) {
    if (pulse.kind == PulseKind::ideal) {
        return std::abs(tau) < 1e-12 * sample_period ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    }
    const double overlap = sample_period - std::abs(tau);
    if (overlap <= 0.0) return {0.0, 0.0};
    Complex a = std::polar(overlap / sample_period * sinc(nu * overlap), -kPi * nu * overlap);
    // for tau < 0 the overlap starts at t = 0 rather than t = tau
    if (tau < 0.0) a *= std::polar(1.0, 2.0 * kPi * nu * tau);
    return a;
}

double doppler_clock(int n, const Dims& d) {
    const int sym = n / d.block_len();
    const int j = n % d.block_len();
    return static_cast<double>(sym) * d.M + j - d.cp;
}

Complex channel_tap(const PathParams& path, const Pulse& pulse, const Dims& d, int m, int n) {
    const double nu = doppler_per_sample(path, d);
    const Complex af = pulse_af(static_cast<double>(n - m) + path.delay(), nu, pulse, 1.0);
    if (af == Complex(0.0, 0.0)) return {0.0, 0.0};
    return path.gain * std::polar(1.0, 2.0 * kPi * doppler_clock(n, d) * nu) * std::conj(af);
}

CMatrix time_channel_matrix(const ChannelRealization& ch, const Pulse& pulse,
                            bool require_cp_coverage) {
    const Dims& d = ch.dims;
    d.validate();
    if (require_cp_coverage) check_cp_coverage(ch.paths, pulse, d);
    const int len = d.frame_len(true);
    CMatrix g = CMatrix::Zero(len, len);
    for (const auto& p : ch.paths) {
        const auto [lo, hi] = tap_span(p, pulse);
        for (int n = 0; n < len; ++n) {
            for (int off = lo; off <= hi; ++off) {
                const int m = n + off;
                if (m < 0 || m >= len) continue;
                g(m, n) += channel_tap(p, pulse, d, m, n);
            }
        }
    }
    return g;
}

TimeSignal propagate(const std::vector<PathParams>& paths, const Pulse& pulse, const Dims& d,
                     const TimeSignal& s) {
    const int len = d.frame_len(true);
    if (!s.has_cp || s.values.size() != len) {
        throw DimensionError("propagate: expected a CP-extended frame");
    }
    TimeSignal r{CVector::Zero(len), true};
    for (const auto& p : paths) {
        const auto [lo, hi] = tap_span(p, pulse);
        for (int n = 0; n < len; ++n) {
            for (int off = lo; off <= hi; ++off) {
                const int m = n + off;
                if (m < 0 || m >= len) continue;
                r.values[m] += channel_tap(p, pulse, d, m, n) * s.values[n];
            }
        }
    }
    return r;
}

TimeSignal apply_channel(const TimeSignal& s, const CMatrix& G, double noise_psd, Rng& rng) {
    if (noise_psd < 0.0) throw ParameterError("apply_channel: N0 must be non-negative");
    if (G.cols() != s.values.size() || G.rows() != G.cols()) {
        throw DimensionError("apply_channel: signal length does not match G");
    }
    TimeSignal r{G * s.values, s.has_cp};
    if (noise_psd > 0.0) {
        for (auto& v : r.values) v += complex_gaussian(rng, noise_psd);
    }
    return r;
}

CMatrix effective_tf_channel(const CMatrix& G, const Dims& d) {
    d.validate();
    const int len = d.frame_len(true);
    if (G.rows() != len || G.cols() != len) {
        throw DimensionError("effective_tf_channel: G is not shaped for these dims");
    }
    const CMatrix f = dft_matrix(d.M);
    const CMatrix fh = f.adjoint();
    const int b = d.block_len();
    CMatrix h = CMatrix::Zero(d.grid_size(), d.grid_size());
    for (int row = 0; row < d.N; ++row) {
        for (int col = 0; col < d.N; ++col) {
            // R_CP selects the last M rows of the receive block.
            const auto blk = G.block(static_cast<Eigen::Index>(row) * b + d.cp,
                                     static_cast<Eigen::Index>(col) * b, d.M, b);
            if (blk.isZero(0.0)) continue;
            // blk * A_CP: CP columns fold onto the last L_cp data columns.
            CMatrix folded = blk.rightCols(d.M);
            folded.rightCols(d.cp) += blk.leftCols(d.cp);
            h.block(static_cast<Eigen::Index>(row) * d.M, static_cast<Eigen::Index>(col) * d.M,
                    d.M, d.M) = f * folded * fh;
        }
    }
    return h;
}

CMatrix effective_tf_channel(const ChannelRealization& ch, const Pulse& pulse,
                             bool require_cp_coverage) {
    return effective_tf_channel(time_channel_matrix(ch, pulse, require_cp_coverage), ch.dims);
}

TFGrid path_tf_response(const TFGrid& x, const PathParams& path, const Pulse& pulse,
                        const Dims& d) {
    const TimeSignal tx = tf_to_time(x, d, true);
    const TimeSignal rx = propagate({path}, pulse, d, tx);
    return time_to_tf(remove_cp(rx, d), d);
}

}  // namespace cdce
