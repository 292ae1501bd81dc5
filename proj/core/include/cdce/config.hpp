#pragma once

#include <string>

#include "cdce/experiment.hpp"

namespace cdce {

/// Environment variable that, when set, replaces sweep.base_seed.
inline constexpr const char* kSeedEnvVar = "CDCE_BASE_SEED";

/// Parses a YAML document into a SimConfig. Missing keys keep their defaults;
/// unknown keys and malformed values raise ConfigurationError.
///
///   dims:       { M, N, cp }
///   channel:    { paths, l_max, k_max, fractional, pulse: ideal|rectangular }
///   frame:      { freq_spacing, time_spacing, freq_offset, time_offset,
///                 sequence: all_ones|walsh|zadoff_chu, sequence_param,
///                 pilot_power, data: none|qpsk, placement: lattice|uniform_random }
///   sweep:      { snr_db: [...], trials, mode: pilot_only|with_data,
///                 estimators: [...], base_seed, threads }
///   lasso:      { lambda, tol, max_iter }
///   covariance: { samples, pilot_only_observation }
SimConfig parse_config(const std::string& yaml_text);

/// Reads and parses a config file, then applies the seed override.
SimConfig load_config(const std::string& path);

/// Applies kSeedEnvVar to cfg if the variable is set.
void apply_env_overrides(SimConfig& cfg);

/// Serializes a config back to YAML (round-trips through parse_config).
std::string dump_config(const SimConfig& cfg);

}  // namespace cdce
