#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cdce/types.hpp"

namespace cdce {

using Rng = std::mt19937_64;

enum class PulseKind { ideal, rectangular };

/// Transmit pulse. `ideal` has a Kronecker ambiguity function on the sample
/// grid; `rectangular` is 1/sqrt(T_s) on [0, T_s).
struct Pulse {
    PulseKind kind = PulseKind::ideal;
};

/// One resolvable path. Delay in samples is delay_int + delay_frac; Doppler in
/// bins (multiples of 1/(N*T)) is doppler_int + doppler_frac.
struct PathParams {
    Complex gain{1.0, 0.0};
    int delay_int = 0;
    double delay_frac = 0.0;
    int doppler_int = 0;
    double doppler_frac = 0.0;

    [[nodiscard]] double delay() const { return delay_int + delay_frac; }
    [[nodiscard]] double doppler() const { return doppler_int + doppler_frac; }
};

struct ChannelStats {
    int paths = 3;
    int l_max = 2;
    int k_max = 3;

    [[nodiscard]] double gain_variance() const { return 1.0 / paths; }
    /// |R| = (l_max + 1)(2 k_max + 1).
    [[nodiscard]] int region_size() const { return (l_max + 1) * (2 * k_max + 1); }
    void validate(const Dims& d) const;
};

struct ChannelRealization {
    std::vector<PathParams> paths;
    Dims dims;
};

/// Draws P paths with distinct (l, k) pairs, uniform integer indices and
/// CN(0, 1/P) gains. Fractions are uniform on [-1/2, 1/2] when `fractional`.
ChannelRealization sample_channel(const ChannelStats& stats, const Dims& d, bool fractional,
                                  Rng& rng);

/// Ambiguity function A(tau, nu) = int p(t) p*(t - tau) exp(-j2 pi nu (t - tau)) dt.
Complex pulse_af(double tau, double nu, const Pulse& pulse, double sample_period);

/// Time (in samples) used for the Doppler phase of CP-extended sample n.
/// Data samples of symbol s run on a CP-free clock s*M + i, and the CP of
/// symbol s occupies s*M - L_cp ... s*M - 1, so the first CP is at negative time.
double doppler_clock(int n, const Dims& d);

/// Element G[m, n] contributed by one path (m = receive index, n = transmit index).
Complex channel_tap(const PathParams& path, const Pulse& pulse, const Dims& d, int m, int n);

/// Dense time-domain channel matrix over the CP-extended frame. Throws
/// ConfigurationError when the delay spread is not covered by the CP, unless
/// `require_cp_coverage` is false (used for dictionaries spanning all delays).
CMatrix time_channel_matrix(const ChannelRealization& ch, const Pulse& pulse,
                            bool require_cp_coverage = true);

/// G * s computed tap by tap, without materializing G.
TimeSignal propagate(const std::vector<PathParams>& paths, const Pulse& pulse, const Dims& d,
                     const TimeSignal& s);

/// r = G s + w with w ~ CN(0, N0) per sample.
TimeSignal apply_channel(const TimeSignal& s, const CMatrix& G, double noise_psd, Rng& rng);

/// H_TF = (I_N kron F_M R_CP) G (I_N kron A_CP F_M^H), evaluated block by block.
CMatrix effective_tf_channel(const CMatrix& G, const Dims& d);

/// Convenience: effective TF channel of a realization.
CMatrix effective_tf_channel(const ChannelRealization& ch, const Pulse& pulse,
                             bool require_cp_coverage = true);

/// Noiseless TF output of a single path applied to the frame x through the full
/// chain tf_to_time(CP) -> channel -> remove_cp -> time_to_tf.
TFGrid path_tf_response(const TFGrid& x, const PathParams& path, const Pulse& pulse,
                        const Dims& d);

/// Circular complex Gaussian sample with E|z|^2 = variance.
Complex complex_gaussian(Rng& rng, double variance);

}  // namespace cdce
