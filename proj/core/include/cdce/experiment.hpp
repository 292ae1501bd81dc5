#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdce/baselines.hpp"
#include "cdce/cdce_estimator.hpp"
#include "cdce/channel_model.hpp"
#include "cdce/pilot_frames.hpp"
#include "cdce/sparse_solvers.hpp"
#include "cdce/types.hpp"

namespace cdce {

enum class EstimatorId { cdce, st_ls, st_lmmse, fs_lmmse, tf_lasso };

std::string to_string(EstimatorId id);
EstimatorId parse_estimator(const std::string& name);
std::vector<EstimatorId> all_estimators();

struct SimConfig {
    Dims dims;
    ChannelStats stats;
    FrameSpec frame;  ///< frame.dims is overwritten with dims
    Pulse pulse;
    bool fractional = false;
    std::vector<double> snr_grid_db{0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0};
    int trials = 500;
    EstimationMode mode = EstimationMode::pilot_only;
    std::vector<EstimatorId> estimators = all_estimators();
    LassoConfig lasso;
    int covariance_samples = 1000;
    /// FS-LMMSE observes through the pilot-only frame (data acts as interference).
    bool fs_pilot_only_observation = true;
    std::uint64_t base_seed = 20240521;
    unsigned threads = 0;  ///< 0 = hardware concurrency

    /// Throws ConfigurationError/ParameterError on inconsistent settings.
    void validate() const;
    [[nodiscard]] bool wants(EstimatorId id) const;
};

struct ResultRow {
    std::string estimator;
    double snr_db = 0.0;
    int trials = 0;
    double nmse_db = 0.0;
    double stderr_db = 0.0;
};

inline constexpr double kNmseFloorDb = -200.0;

/// ||H_hat - H||_F^2 / ||H||_F^2. Throws DomainError for an all-zero H.
double nmse_linear(const CMatrix& h_hat, const CMatrix& h_true);

/// 10 log10 of nmse_linear, clamped below at kNmseFloorDb.
double nmse_db(const CMatrix& h_hat, const CMatrix& h_true);

/// Linear NMSE per estimator for one paired trial.
using TrialResult = std::map<EstimatorId, double>;

/// Monte Carlo driver. Construction validates the config and performs the
/// per-configuration setup: the FS-LMMSE covariance fit (seeded apart from
/// the trials) and, for lattice placement, the full-grid TF-LASSO dictionary.
class Experiment {
public:
    explicit Experiment(SimConfig cfg);

    [[nodiscard]] const SimConfig& config() const { return cfg_; }
    [[nodiscard]] const CovarianceModel* covariance() const {
        return covariance_ ? &*covariance_ : nullptr;
    }

    /// Seed of trial `trial` at grid point `snr_index`.
    [[nodiscard]] std::uint64_t trial_seed(std::uint64_t snr_index, int trial) const;

    /// One trial at snr_grid_db[snr_index]; every requested estimator sees the
    /// same channel, frame and noise.
    [[nodiscard]] TrialResult run_trial(int snr_index, int trial) const;

    /// One trial at an arbitrary SNR. Grid values reuse their grid seed;
    /// off-grid values are seeded from the bit pattern of snr_db.
    [[nodiscard]] TrialResult run_trial_at(double snr_db, int trial) const;

    /// All (estimator, SNR) rows, averaged in the linear domain, sorted by
    /// estimator then SNR.
    [[nodiscard]] std::vector<ResultRow> run_sweep() const;

private:
    [[nodiscard]] TrialResult run_seeded(double snr_db, std::uint64_t seed) const;

    SimConfig cfg_;
    std::optional<CovarianceModel> covariance_;
    std::optional<Dictionary> full_dictionary_;
};

/// Convenience: Experiment(cfg).run_sweep().
std::vector<ResultRow> run_sweep(const SimConfig& cfg);

/// Aggregates linear NMSE samples into a row (mean in dB and delta-method
/// standard error).
ResultRow summarize(const std::string& estimator, double snr_db, const std::vector<double>& nmse_lin);

}  // namespace cdce
