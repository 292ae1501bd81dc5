#include "cdce/cdce_estimator.hpp"

#include "cdce/grid_transforms.hpp"

namespace cdce {

PathParams unit_path(const DelayDoppler& p) {
    PathParams path;
    path.delay_int = p.delay;
    path.doppler_int = p.doppler;
    return path;
}

Dictionary build_dictionary(const TFGrid& pilot_only_tf, const std::vector<DelayDoppler>& pairs,
                            const Pulse& pulse, const Dims& d) {
    if (pairs.empty()) throw ContractError("build_dictionary: no delay-Doppler pairs");
    require_shape(pilot_only_tf.values, d, "build_dictionary");
    Dictionary dict{CMatrix(d.grid_size(), static_cast<Eigen::Index>(pairs.size())), pairs};
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const TFGrid col = path_tf_response(pilot_only_tf, unit_path(pairs[j]), pulse, d);
        dict.D.col(static_cast<Eigen::Index>(j)) = vec(col.values);
    }
    return dict;
}

CMatrix reconstruct_tf_channel(const std::vector<DelayDoppler>& pairs, const CVector& h,
                               const Pulse& pulse, const Dims& d) {
    if (h.size() != static_cast<Eigen::Index>(pairs.size())) {
        throw DimensionError("reconstruct_tf_channel: one gain per pair required");
    }
    ChannelRealization ch{{}, d};
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const Complex g = h[static_cast<Eigen::Index>(j)];
        if (g == Complex(0.0, 0.0)) continue;
        PathParams p = unit_path(pairs[j]);
        p.gain = g;
        ch.paths.push_back(p);
    }
    if (ch.paths.empty()) return CMatrix::Zero(d.grid_size(), d.grid_size());
    return effective_tf_channel(ch, pulse, false);
}

CoarseEstimate cdce_coarse(const TFGrid& y_tf, const Frame& frame, const Dims& d,
                           const ChannelStats& stats, const CdceConfig& cfg, double noise_psd) {
    const DDGrid x_dd = tf_to_dd(frame.pilot_only_tf, d);
    const double energy = x_dd.values.squaredNorm();
    if (!(energy > 0.0)) throw ContractError("cdce_coarse: frame carries no pilot energy");
    const CMatrix v = twisted_convolution(tf_to_dd(y_tf, d), x_dd) / energy;
    const double gamma = cfg.gamma ? *cfg.gamma : default_gamma(cfg.mode, noise_psd, v, stats);
    return threshold_select(v, stats, gamma);
}

ChannelEstimate cdce_estimate(const TFGrid& y_tf, const Frame& frame, const Dims& d,
                              const ChannelStats& stats, const CdceConfig& cfg, double noise_psd) {
    require_shape(y_tf.values, d, "cdce_estimate");
    const CoarseEstimate coarse = cdce_coarse(y_tf, frame, d, stats, cfg, noise_psd);

    ChannelEstimate est;
    if (coarse.size() == 0) {
        est.empty_support = true;
        est.H_tf = CMatrix::Zero(d.grid_size(), d.grid_size());
        return est;
    }

    const Dictionary dict = build_dictionary(frame.pilot_only_tf, coarse.pairs, cfg.pulse, d);
    const CVector y = vec(y_tf.values);
    CVector h;
    if (ls_applicable(dict.D)) {
        h = solve_ls(y, dict.D);
        est.solver = SolverKind::least_squares;
    } else {
        h = solve_lasso(y, dict.D, cfg.lasso).h;
        est.solver = SolverKind::lasso;
    }

    // LASSO zeros mark false alarms of the coarse stage
    std::vector<Complex> kept;
    for (Eigen::Index j = 0; j < h.size(); ++j) {
        if (h[j] == Complex(0.0, 0.0)) continue;
        est.pairs.push_back(dict.pairs[static_cast<std::size_t>(j)]);
        kept.push_back(h[j]);
    }
    est.h_hat = Eigen::Map<const CVector>(kept.data(), static_cast<Eigen::Index>(kept.size()));
    est.empty_support = est.pairs.empty();
    est.H_tf = reconstruct_tf_channel(est.pairs, est.h_hat, cfg.pulse, d);
    return est;
}

}  // namespace cdce
