#include "cdce/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace cdce {
namespace {

void reject_unknown(const YAML::Node& node, const std::string& where,
                    const std::set<std::string>& allowed) {
    if (!node.IsMap()) throw ConfigurationError("config: '" + where + "' must be a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.contains(key)) {
            throw ConfigurationError("config: unknown key '" + where + "." + key + "'");
        }
    }
}

template <class T>
void read(const YAML::Node& node, const char* key, T& out, const std::string& where) {
    const YAML::Node v = node[key];
    if (!v) return;
    try {
        out = v.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigurationError("config: bad value for '" + where + "." + key + "'");
    }
}

template <class E>
E pick(const std::string& value, std::initializer_list<std::pair<const char*, E>> options,
       const std::string& what) {
    for (const auto& [name, e] : options) {
        if (value == name) return e;
    }
    throw ConfigurationError("config: invalid " + what + " '" + value + "'");
}

const char* name_of(PulseKind k) { return k == PulseKind::ideal ? "ideal" : "rectangular"; }

const char* name_of(SequenceKind k) {
    switch (k) {
        case SequenceKind::all_ones: return "all_ones";
        case SequenceKind::walsh: return "walsh";
        case SequenceKind::zadoff_chu: return "zadoff_chu";
    }
    return "";
}

const char* name_of(EstimationMode m) {
    return m == EstimationMode::pilot_only ? "pilot_only" : "with_data";
}

}  // namespace

SimConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigurationError(std::string("config: YAML parse error: ") + e.what());
    }
    SimConfig cfg;
    if (!root || root.IsNull()) return cfg;
    reject_unknown(root, "<root>", {"dims", "channel", "frame", "sweep", "lasso", "covariance"});

    if (const auto n = root["dims"]) {
        reject_unknown(n, "dims", {"M", "N", "cp"});
        read(n, "M", cfg.dims.M, "dims");
        read(n, "N", cfg.dims.N, "dims");
        read(n, "cp", cfg.dims.cp, "dims");
    }
    if (const auto n = root["channel"]) {
        reject_unknown(n, "channel", {"paths", "l_max", "k_max", "fractional", "pulse"});
        read(n, "paths", cfg.stats.paths, "channel");
        read(n, "l_max", cfg.stats.l_max, "channel");
        read(n, "k_max", cfg.stats.k_max, "channel");
        read(n, "fractional", cfg.fractional, "channel");
        std::string pulse = name_of(cfg.pulse.kind);
        read(n, "pulse", pulse, "channel");
        cfg.pulse.kind = pick<PulseKind>(
            pulse, {{"ideal", PulseKind::ideal}, {"rectangular", PulseKind::rectangular}}, "pulse");
    }
    if (const auto n = root["frame"]) {
        reject_unknown(n, "frame",
                       {"freq_spacing", "time_spacing", "freq_offset", "time_offset", "sequence",
                        "sequence_param", "pilot_power", "data", "placement"});
        auto& f = cfg.frame;
        read(n, "freq_spacing", f.lattice.freq_spacing, "frame");
        read(n, "time_spacing", f.lattice.time_spacing, "frame");
        read(n, "freq_offset", f.lattice.freq_offset, "frame");
        read(n, "time_offset", f.lattice.time_offset, "frame");
        read(n, "sequence_param", f.sequence_param, "frame");
        read(n, "pilot_power", f.pilot_power, "frame");
        std::string seq = name_of(f.sequence);
        read(n, "sequence", seq, "frame");
        f.sequence = pick<SequenceKind>(seq,
                                        {{"all_ones", SequenceKind::all_ones},
                                         {"walsh", SequenceKind::walsh},
                                         {"zadoff_chu", SequenceKind::zadoff_chu}},
                                        "sequence");
        std::string data = f.data == DataMode::none ? "none" : "qpsk";
        read(n, "data", data, "frame");
        f.data = pick<DataMode>(data, {{"none", DataMode::none}, {"qpsk", DataMode::qpsk}}, "data mode");
        std::string placement = f.placement == Placement::lattice ? "lattice" : "uniform_random";
        read(n, "placement", placement, "frame");
        f.placement = pick<Placement>(
            placement, {{"lattice", Placement::lattice}, {"uniform_random", Placement::uniform_random}},
            "placement");
    }
    if (const auto n = root["sweep"]) {
        reject_unknown(n, "sweep", {"snr_db", "trials", "mode", "estimators", "base_seed", "threads"});
        read(n, "snr_db", cfg.snr_grid_db, "sweep");
        read(n, "trials", cfg.trials, "sweep");
        read(n, "base_seed", cfg.base_seed, "sweep");
        read(n, "threads", cfg.threads, "sweep");
        std::string mode = name_of(cfg.mode);
        read(n, "mode", mode, "sweep");
        cfg.mode = pick<EstimationMode>(
            mode, {{"pilot_only", EstimationMode::pilot_only}, {"with_data", EstimationMode::with_data}},
            "mode");
        if (n["estimators"]) {
            std::vector<std::string> names;
            read(n, "estimators", names, "sweep");
            cfg.estimators.clear();
            for (const auto& s : names) cfg.estimators.push_back(parse_estimator(s));
        }
    }
    if (const auto n = root["lasso"]) {
        reject_unknown(n, "lasso", {"lambda", "tol", "max_iter"});
        read(n, "lambda", cfg.lasso.lambda, "lasso");
        read(n, "tol", cfg.lasso.tol, "lasso");
        read(n, "max_iter", cfg.lasso.max_iter, "lasso");
    }
    if (const auto n = root["covariance"]) {
        reject_unknown(n, "covariance", {"samples", "pilot_only_observation"});
        read(n, "samples", cfg.covariance_samples, "covariance");
        read(n, "pilot_only_observation", cfg.fs_pilot_only_observation, "covariance");
    }
    cfg.frame.dims = cfg.dims;
    return cfg;
}

void apply_env_overrides(SimConfig& cfg) {
    const char* v = std::getenv(kSeedEnvVar);
    if (v == nullptr || *v == '\0') return;
    try {
        std::size_t used = 0;
        const unsigned long long seed = std::stoull(v, &used, 0);
        if (used != std::char_traits<char>::length(v)) throw std::invalid_argument("trailing");
        cfg.base_seed = seed;
    } catch (const std::exception&) {
        throw ConfigurationError(std::string(kSeedEnvVar) + " is not an unsigned integer: " + v);
    }
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    SimConfig cfg;
    try {
        cfg = parse_config(ss.str());
    } catch (const ConfigurationError& e) {
        throw ConfigurationError(path + ": " + e.what());
    }
    apply_env_overrides(cfg);
    return cfg;
}

std::string dump_config(const SimConfig& cfg) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "dims" << YAML::Value << YAML::Flow << YAML::BeginMap
        << YAML::Key << "M" << YAML::Value << cfg.dims.M << YAML::Key << "N" << YAML::Value
        << cfg.dims.N << YAML::Key << "cp" << YAML::Value << cfg.dims.cp << YAML::EndMap;
    out << YAML::Key << "channel" << YAML::Value << YAML::BeginMap
        << YAML::Key << "paths" << YAML::Value << cfg.stats.paths
        << YAML::Key << "l_max" << YAML::Value << cfg.stats.l_max
        << YAML::Key << "k_max" << YAML::Value << cfg.stats.k_max
        << YAML::Key << "fractional" << YAML::Value << cfg.fractional
        << YAML::Key << "pulse" << YAML::Value << name_of(cfg.pulse.kind) << YAML::EndMap;
    const auto& f = cfg.frame;
    out << YAML::Key << "frame" << YAML::Value << YAML::BeginMap
        << YAML::Key << "freq_spacing" << YAML::Value << f.lattice.freq_spacing
        << YAML::Key << "time_spacing" << YAML::Value << f.lattice.time_spacing
        << YAML::Key << "freq_offset" << YAML::Value << f.lattice.freq_offset
        << YAML::Key << "time_offset" << YAML::Value << f.lattice.time_offset
        << YAML::Key << "sequence" << YAML::Value << name_of(f.sequence)
        << YAML::Key << "sequence_param" << YAML::Value << f.sequence_param
        << YAML::Key << "pilot_power" << YAML::Value << f.pilot_power
        << YAML::Key << "data" << YAML::Value << (f.data == DataMode::none ? "none" : "qpsk")
        << YAML::Key << "placement" << YAML::Value
        << (f.placement == Placement::lattice ? "lattice" : "uniform_random") << YAML::EndMap;
    std::vector<std::string> names;
    for (const auto id : cfg.estimators) names.push_back(to_string(id));
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap
        << YAML::Key << "snr_db" << YAML::Value << YAML::Flow << cfg.snr_grid_db
        << YAML::Key << "trials" << YAML::Value << cfg.trials
        << YAML::Key << "mode" << YAML::Value << name_of(cfg.mode)
        << YAML::Key << "estimators" << YAML::Value << YAML::Flow << names
        << YAML::Key << "base_seed" << YAML::Value << cfg.base_seed
        << YAML::Key << "threads" << YAML::Value << cfg.threads << YAML::EndMap;
    out << YAML::Key << "lasso" << YAML::Value << YAML::BeginMap
        << YAML::Key << "lambda" << YAML::Value << cfg.lasso.lambda
        << YAML::Key << "tol" << YAML::Value << cfg.lasso.tol
        << YAML::Key << "max_iter" << YAML::Value << cfg.lasso.max_iter << YAML::EndMap;
    out << YAML::Key << "covariance" << YAML::Value << YAML::BeginMap
        << YAML::Key << "samples" << YAML::Value << cfg.covariance_samples
        << YAML::Key << "pilot_only_observation" << YAML::Value << cfg.fs_pilot_only_observation
        << YAML::EndMap;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace cdce
