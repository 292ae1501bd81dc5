#pragma once

#include <optional>
#include <vector>

#include "cdce/channel_model.hpp"
#include "cdce/pilot_frames.hpp"
#include "cdce/sparse_solvers.hpp"
#include "cdce/twisted_convolution.hpp"
#include "cdce/types.hpp"

namespace cdce {

/// Column j is the vectorized TF response of a unit-gain path at pairs[j]
/// to the pilot-only frame.
struct Dictionary {
    CMatrix D;
    std::vector<DelayDoppler> pairs;
};

enum class SolverKind { none, least_squares, lasso };

struct ChannelEstimate {
    CVector h_hat;
    std::vector<DelayDoppler> pairs;
    CMatrix H_tf;
    bool empty_support = false;
    SolverKind solver = SolverKind::none;
};

struct CdceConfig {
    LassoConfig lasso;
    Pulse pulse;
    EstimationMode mode = EstimationMode::pilot_only;
    /// Replaces default_gamma when set. Compared against V_DD / ||x_DD||^2.
    std::optional<double> gamma;
};

/// Single unit-gain path at an on-grid (delay, signed Doppler) pair.
PathParams unit_path(const DelayDoppler& p);

/// Throws ContractError on an empty pair list. Delays beyond the cyclic prefix
/// are allowed here since hypotheses may lie outside the physical spread.
Dictionary build_dictionary(const TFGrid& pilot_only_tf, const std::vector<DelayDoppler>& pairs,
                            const Pulse& pulse, const Dims& d);

/// H_TF of the channel sum_j h[j] * path(pairs[j]); zero entries of h are skipped.
CMatrix reconstruct_tf_channel(const std::vector<DelayDoppler>& pairs, const CVector& h,
                               const Pulse& pulse, const Dims& d);

/// Coarse DD search followed by TF-domain fading recovery.
///
/// `noise_psd` only feeds the pilot-only threshold. If thresholding leaves no
/// candidate the estimate is all-zero with `empty_support` set.
ChannelEstimate cdce_estimate(const TFGrid& y_tf, const Frame& frame, const Dims& d,
                              const ChannelStats& stats, const CdceConfig& cfg, double noise_psd);

/// Coarse stage on its own: V_DD normalized by the pilot DD energy, then thresholded.
CoarseEstimate cdce_coarse(const TFGrid& y_tf, const Frame& frame, const Dims& d,
                           const ChannelStats& stats, const CdceConfig& cfg, double noise_psd);

}  // namespace cdce
