#pragma once

#include <cstdint>
#include <functional>

#include "cdce/cdce_estimator.hpp"
#include "cdce/channel_model.hpp"
#include "cdce/pilot_frames.hpp"
#include "cdce/sparse_solvers.hpp"
#include "cdce/types.hpp"

namespace cdce {

/// Fills a full M x N grid from values known on `mask`. Each column that
/// holds at least one known entry is interpolated linearly along frequency;
/// rows are then interpolated along time between those columns. Positions
/// outside the outermost known entries take the nearest known value.
CMatrix interpolate_grid(const CMatrix& known, const BoolMatrix& mask);

/// Single-tap LS: y / x at pilots, interpolated, returned as diag(vec(h)).
CMatrix st_ls(const TFGrid& y_tf, const Frame& frame);

/// st_ls scaled by 1 / (1 + 1/snr), snr linear.
CMatrix st_lmmse(const TFGrid& y_tf, const Frame& frame, double snr);

/// Sample covariance of vec(H_TF) in factored form C = U U^H.
struct CovarianceModel {
    CVector mean;
    CMatrix factor;
    int samples = 0;
    Dims dims;

    [[nodiscard]] Eigen::Index rank() const { return factor.cols(); }
};

/// Sample covariance of K vectors produced by `sampler(i)`, i = 0..K-1.
///
/// The samples are projected onto a growing orthonormal basis as they arrive,
/// so memory scales with the rank of the ensemble rather than with K. Sampling
/// runs on `threads` workers (0 picks the hardware concurrency); `sampler`
/// must therefore be safe to call concurrently with distinct indices.
CovarianceModel fit_covariance(const std::function<CVector(int)>& sampler, int samples,
                               const Dims& d, unsigned threads = 0);

/// Covariance of the TF channel ensemble described by `stats`. Sample i uses
/// its own generator seeded from (seed, i), so the result does not depend on
/// the thread count.
CovarianceModel fit_covariance(const ChannelStats& stats, const Dims& d, const Pulse& pulse,
                               bool fractional, int samples, std::uint64_t seed,
                               unsigned threads = 0);

/// LMMSE estimate of H_TF from y = X h + w with X v = unvec(v) x_tf.
///
/// Evaluated through the factor U: only an MN x MN system is solved. N0 = 0
/// falls back to a pseudo-inverse.
CMatrix fs_lmmse(const TFGrid& y_tf, const TFGrid& x_tf, const CovarianceModel& cov,
                 double noise_psd);

/// Dictionary over every on-grid pair of the DD frame: delays 0..M-1 and all
/// N Doppler bins (signed), delay index fastest.
Dictionary full_grid_dictionary(const TFGrid& pilot_only_tf, const Pulse& pulse, const Dims& d);

/// LASSO over the full-grid dictionary, i.e. without a DD support prior.
CMatrix tf_lasso(const TFGrid& y_tf, const Dictionary& full_dict, const LassoConfig& cfg,
                 const Pulse& pulse, const Dims& d);

}  // namespace cdce
