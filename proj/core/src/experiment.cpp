#include "cdce/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "cdce/grid_transforms.hpp"
#include "cdce/seeding.hpp"
#include "parallel.hpp"

namespace cdce {
namespace {

// Domain tag keeping the covariance stream apart from trial streams.
constexpr std::uint64_t kCovarianceStream = 0xc0fa1a9ceULL;

}  // namespace

std::string to_string(EstimatorId id) {
    switch (id) {
        case EstimatorId::cdce: return "cdce";
        case EstimatorId::st_ls: return "st_ls";
        case EstimatorId::st_lmmse: return "st_lmmse";
        case EstimatorId::fs_lmmse: return "fs_lmmse";
        case EstimatorId::tf_lasso: return "tf_lasso";
    }
    return "unknown";
}

EstimatorId parse_estimator(const std::string& name) {
    for (const auto id : all_estimators()) {
        if (to_string(id) == name) return id;
    }
    throw ConfigurationError("unknown estimator '" + name + "'");
}

std::vector<EstimatorId> all_estimators() {
    return {EstimatorId::cdce, EstimatorId::st_ls, EstimatorId::st_lmmse, EstimatorId::fs_lmmse,
            EstimatorId::tf_lasso};
}

void SimConfig::validate() const {
    dims.validate();
    stats.validate(dims);
    FrameSpec f = frame;
    f.dims = dims;
    f.validate();
    lasso.validate();
    if (trials < 1) throw ConfigurationError("SimConfig: trials must be >= 1");
    if (snr_grid_db.empty()) throw ConfigurationError("SimConfig: empty SNR grid");
    for (double s : snr_grid_db) {
        if (!std::isfinite(s)) throw ConfigurationError("SimConfig: SNR values must be finite");
    }
    if (wants(EstimatorId::fs_lmmse) && covariance_samples < 2) {
        throw ConfigurationError("SimConfig: covariance needs at least two samples");
    }
    if (mode == EstimationMode::with_data && frame.data == DataMode::none) {
        throw ConfigurationError("SimConfig: with_data mode needs a data-bearing frame");
    }
    if (fractional && pulse.kind == PulseKind::ideal) {
        throw ConfigurationError("SimConfig: fractional channels need the rectangular pulse");
    }
}

bool SimConfig::wants(EstimatorId id) const {
    return std::find(estimators.begin(), estimators.end(), id) != estimators.end();
}

double nmse_linear(const CMatrix& h_hat, const CMatrix& h_true) {
    if (h_hat.rows() != h_true.rows() || h_hat.cols() != h_true.cols()) {
        throw DimensionError("nmse: shape mismatch");
    }
    const double ref = h_true.squaredNorm();
    if (!(ref > 0.0)) throw DomainError("nmse: reference channel is zero");
    return (h_hat - h_true).squaredNorm() / ref;
}

double nmse_db(const CMatrix& h_hat, const CMatrix& h_true) {
    const double r = nmse_linear(h_hat, h_true);
    if (r <= 0.0) return kNmseFloorDb;
    return std::max(kNmseFloorDb, 10.0 * std::log10(r));
}

ResultRow summarize(const std::string& estimator, double snr_db, const std::vector<double>& nmse_lin) {
    ResultRow row;
    row.estimator = estimator;
    row.snr_db = snr_db;
    row.trials = static_cast<int>(nmse_lin.size());
    if (nmse_lin.empty()) throw ContractError("summarize: no trials");
    const double n = static_cast<double>(nmse_lin.size());
    const double mean = std::accumulate(nmse_lin.begin(), nmse_lin.end(), 0.0) / n;
    row.nmse_db = mean > 0.0 ? std::max(kNmseFloorDb, 10.0 * std::log10(mean)) : kNmseFloorDb;
    if (nmse_lin.size() > 1 && mean > 0.0) {
        double ss = 0.0;
        for (double v : nmse_lin) ss += (v - mean) * (v - mean);
        const double se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        row.stderr_db = 10.0 / std::log(10.0) * se / mean;
    }
    return row;
}

Experiment::Experiment(SimConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.frame.dims = cfg_.dims;
    cfg_.validate();
    if (cfg_.wants(EstimatorId::fs_lmmse)) {
        covariance_ = fit_covariance(cfg_.stats, cfg_.dims, cfg_.pulse, cfg_.fractional,
                                     cfg_.covariance_samples,
                                     derive_seed(cfg_.base_seed, {kCovarianceStream}), cfg_.threads);
    }
    if (cfg_.wants(EstimatorId::tf_lasso) && cfg_.frame.placement == Placement::lattice) {
        Rng rng(0);  // lattice pilots do not consume randomness
        FrameSpec pilots = cfg_.frame;
        pilots.data = DataMode::none;
        const Frame f = assemble_frame(pilots, rng);
        full_dictionary_ = full_grid_dictionary(f.pilot_only_tf, cfg_.pulse, cfg_.dims);
    }
}

std::uint64_t Experiment::trial_seed(std::uint64_t snr_index, int trial) const {
    return derive_seed(cfg_.base_seed, {snr_index, static_cast<std::uint64_t>(trial)});
}

TrialResult Experiment::run_trial(int snr_index, int trial) const {
    if (snr_index < 0 || snr_index >= static_cast<int>(cfg_.snr_grid_db.size())) {
        throw ParameterError("run_trial: SNR index out of range");
    }
    return run_seeded(cfg_.snr_grid_db[static_cast<std::size_t>(snr_index)],
                      trial_seed(static_cast<std::uint64_t>(snr_index), trial));
}

TrialResult Experiment::run_trial_at(double snr_db, int trial) const {
    const auto& grid = cfg_.snr_grid_db;
    const auto it = std::find(grid.begin(), grid.end(), snr_db);
    if (it != grid.end()) return run_trial(static_cast<int>(it - grid.begin()), trial);
    return run_seeded(snr_db, trial_seed(std::bit_cast<std::uint64_t>(snr_db), trial));
}

TrialResult Experiment::run_seeded(double snr_db, std::uint64_t seed) const {
    const Dims& d = cfg_.dims;
    Rng rng(seed);
    const ChannelRealization ch = sample_channel(cfg_.stats, d, cfg_.fractional, rng);
    const Frame frame = assemble_frame(cfg_.frame, rng);
    const double noise_psd = cfg_.frame.pilot_power / std::pow(10.0, snr_db / 10.0);

    const CMatrix g = time_channel_matrix(ch, cfg_.pulse);
    const CMatrix h_true = effective_tf_channel(g, d);
    const TimeSignal rx = apply_channel(tf_to_time(frame.tf, d, true), g, noise_psd, rng);
    const TFGrid y = time_to_tf(remove_cp(rx, d), d);

    TrialResult out;
    for (const auto id : cfg_.estimators) {
        CMatrix h_hat;
        switch (id) {
            case EstimatorId::cdce: {
                CdceConfig c;
                c.lasso = cfg_.lasso;
                c.pulse = cfg_.pulse;
                c.mode = cfg_.mode;
                h_hat = cdce_estimate(y, frame, d, cfg_.stats, c, noise_psd).H_tf;
                break;
            }
            case EstimatorId::st_ls:
                h_hat = st_ls(y, frame);
                break;
            case EstimatorId::st_lmmse:
                h_hat = st_lmmse(y, frame, cfg_.frame.pilot_power / noise_psd);
                break;
            case EstimatorId::fs_lmmse:
                h_hat = fs_lmmse(y, cfg_.fs_pilot_only_observation ? frame.pilot_only_tf : frame.tf,
                                 *covariance_, noise_psd);
                break;
            case EstimatorId::tf_lasso:
                if (full_dictionary_) {
                    h_hat = tf_lasso(y, *full_dictionary_, cfg_.lasso, cfg_.pulse, d);
                } else {
                    const Dictionary dict = full_grid_dictionary(frame.pilot_only_tf, cfg_.pulse, d);
                    h_hat = tf_lasso(y, dict, cfg_.lasso, cfg_.pulse, d);
                }
                break;
        }
        out[id] = nmse_linear(h_hat, h_true);
    }
    return out;
}

std::vector<ResultRow> Experiment::run_sweep() const {
    const int snrs = static_cast<int>(cfg_.snr_grid_db.size());
    const int jobs = snrs * cfg_.trials;
    std::vector<TrialResult> results(static_cast<std::size_t>(jobs));
    detail::parallel_for(jobs, cfg_.threads, [&](int j) {
        results[static_cast<std::size_t>(j)] = run_trial(j / cfg_.trials, j % cfg_.trials);
    });

    std::vector<ResultRow> rows;
    auto ids = cfg_.estimators;
    std::sort(ids.begin(), ids.end(), [](EstimatorId a, EstimatorId b) { return to_string(a) < to_string(b); });
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (const auto id : ids) {
        for (int s = 0; s < snrs; ++s) {
            std::vector<double> samples;
            samples.reserve(static_cast<std::size_t>(cfg_.trials));
            for (int t = 0; t < cfg_.trials; ++t) {
                samples.push_back(results[static_cast<std::size_t>(s * cfg_.trials + t)].at(id));
            }
            rows.push_back(summarize(to_string(id), cfg_.snr_grid_db[static_cast<std::size_t>(s)], samples));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.estimator != b.estimator) return a.estimator < b.estimator;
        return a.snr_db < b.snr_db;
    });
    return rows;
}

std::vector<ResultRow> run_sweep(const SimConfig& cfg) { return Experiment(cfg).run_sweep(); }

}  // namespace cdce
