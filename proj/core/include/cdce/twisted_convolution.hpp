#pragma once

#include <vector>

#include "cdce/channel_model.hpp"
#include "cdce/types.hpp"

namespace cdce {

/// An on-grid delay-Doppler hypothesis. `doppler` is signed.
struct DelayDoppler {
    int delay = 0;
    int doppler = 0;

    friend bool operator==(const DelayDoppler&, const DelayDoppler&) = default;
    friend auto operator<=>(const DelayDoppler&, const DelayDoppler&) = default;
};

struct CoarseEstimate {
    std::vector<DelayDoppler> pairs;
    std::vector<Complex> scores;

    [[nodiscard]] int size() const { return static_cast<int>(pairs.size()); }
};

enum class EstimationMode { pilot_only, with_data };

/// V[l, k] = sum_{m,n} Y*[m,n] X[[m-l]_M, [n-k]_N] alpha[m-l, n-k] e^{j2pi k(m-l)/(MN)},
/// alpha = e^{-j2pi(n-k)/N} when m - l < 0. Column k holds signed Doppler
/// signed_doppler(k, N), which is also the k used in the phase term.
CMatrix twisted_convolution(const DDGrid& y, const DDGrid& x);

/// All (l, k) in R = [0, l_max] x [-k_max, k_max], lexicographic.
std::vector<DelayDoppler> target_region(const ChannelStats& stats);

/// Keeps entries of R with |V| >= gamma, sorted by descending magnitude and then (l, k).
CoarseEstimate threshold_select(const CMatrix& v, const ChannelStats& stats, double gamma);

/// pilot_only: sqrt(N0) / 3. with_data: sqrt(sum_{R} |V|^2 / |R|).
double default_gamma(EstimationMode mode, double noise_psd, const CMatrix& v,
                     const ChannelStats& stats);

}  // namespace cdce
