#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cdce/config.hpp"
#include "cdce/result_io.hpp"

using namespace cdce;

TEST_CASE("an empty document gives the defaults") {
    const SimConfig cfg = parse_config("");
    CHECK(cfg.dims == Dims{8, 14, 2});
    CHECK(cfg.stats.paths == 3);
    CHECK(cfg.trials == 500);
    CHECK(cfg.lasso.lambda == 0.01);
    CHECK(cfg.lasso.tol == 1e-6);
    CHECK(cfg.lasso.max_iter == 1000);
    CHECK(cfg.covariance_samples == 1000);
    CHECK(cfg.snr_grid_db.size() == 9);
    CHECK(cfg.estimators.size() == 5);
}

TEST_CASE("nested keys map onto the config") {
    const SimConfig cfg = parse_config(R"(
dims: {M: 16, N: 16, cp: 3}
channel: {paths: 2, l_max: 3, k_max: 4, pulse: rectangular, fractional: true}
frame: {freq_spacing: 2, time_spacing: 2, sequence: zadoff_chu, sequence_param: 3, data: qpsk, placement: uniform_random, pilot_power: 2}
sweep: {snr_db: [1, 2], trials: 7, mode: with_data, estimators: [cdce, fs_lmmse], base_seed: 99, threads: 3}
lasso: {lambda: 0.1, tol: 1.0e-8, max_iter: 50}
covariance: {samples: 10, pilot_only_observation: false}
)");
    CHECK(cfg.dims == Dims{16, 16, 3});
    CHECK(cfg.frame.dims == cfg.dims);
    CHECK(cfg.stats.k_max == 4);
    CHECK(cfg.pulse.kind == PulseKind::rectangular);
    CHECK(cfg.fractional);
    CHECK(cfg.frame.sequence == SequenceKind::zadoff_chu);
    CHECK(cfg.frame.sequence_param == 3);
    CHECK(cfg.frame.data == DataMode::qpsk);
    CHECK(cfg.frame.placement == Placement::uniform_random);
    CHECK(cfg.frame.pilot_power == 2.0);
    CHECK(cfg.snr_grid_db == std::vector<double>{1.0, 2.0});
    CHECK(cfg.mode == EstimationMode::with_data);
    CHECK(cfg.estimators == std::vector<EstimatorId>{EstimatorId::cdce, EstimatorId::fs_lmmse});
    CHECK(cfg.base_seed == 99);
    CHECK(cfg.threads == 3);
    CHECK(cfg.lasso.max_iter == 50);
    CHECK_FALSE(cfg.fs_pilot_only_observation);

    const SimConfig again = parse_config(dump_config(cfg));
    CHECK(again.dims == cfg.dims);
    CHECK(again.snr_grid_db == cfg.snr_grid_db);
    CHECK(again.estimators == cfg.estimators);
    CHECK(again.lasso.tol == cfg.lasso.tol);
    CHECK(again.frame.sequence == cfg.frame.sequence);
}

TEST_CASE("unknown keys and bad values are rejected") {
    CHECK_THROWS_AS(parse_config("sweep: {trails: 3}"), ConfigurationError);
    CHECK_THROWS_AS(parse_config("extra: 1"), ConfigurationError);
    CHECK_THROWS_AS(parse_config("dims: {M: eight}"), ConfigurationError);
    CHECK_THROWS_AS(parse_config("frame: {sequence: gold}"), ConfigurationError);
    CHECK_THROWS_AS(parse_config("sweep: {estimators: [cdce, oracle]}"), ConfigurationError);
    CHECK_THROWS_AS(parse_config("dims: [1, 2]"), ConfigurationError);
    CHECK_THROWS_AS(parse_config("dims: {M: 8"), ConfigurationError);
    CHECK_THROWS_AS(load_config("/nonexistent/cfg.yaml"), ConfigurationError);
}

TEST_CASE("the seed can be overridden from the environment") {
    SimConfig cfg;
    ::setenv(kSeedEnvVar, "12345", 1);
    apply_env_overrides(cfg);
    CHECK(cfg.base_seed == 12345);
    ::setenv(kSeedEnvVar, "12x", 1);
    CHECK_THROWS_AS(apply_env_overrides(cfg), ConfigurationError);
    ::unsetenv(kSeedEnvVar);
    cfg.base_seed = 5;
    apply_env_overrides(cfg);
    CHECK(cfg.base_seed == 5);
}

TEST_CASE("CSV and JSON output") {
    CHECK(rows_to_csv({}) == "estimator,snr_db,trials,nmse_db,stderr_db\n");
    const std::vector<ResultRow> rows{{"cdce", 2.5, 500, -12.25, 0.125}, {"st_ls", 5.0, 500, -3.5, 0.25}};
    const std::string csv = rows_to_csv(rows);
    CHECK(csv == "estimator,snr_db,trials,nmse_db,stderr_db\ncdce,2.5,500,-12.25,0.125\nst_ls,5,500,-3.5,0.25\n");
    const auto back = rows_from_json(rows_to_json(rows));
    REQUIRE(back.size() == 2);
    CHECK(back[0].estimator == "cdce");
    CHECK(back[0].snr_db == 2.5);
    CHECK(back[0].trials == 500);
    CHECK(back[0].nmse_db == -12.25);
    CHECK(back[0].stderr_db == 0.125);
    CHECK(parse_format("json") == OutputFormat::json);
    CHECK_THROWS_AS(parse_format("xml"), ConfigurationError);
}

TEST_CASE("grid JSON is column-major and round trips") {
    CMatrix m(2, 3);
    m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8), Complex(9, 10), Complex(11, 12);
    const std::string js = grid_to_json(m);
    CHECK(js.find("\"re\":[1.0,7.0,3.0,9.0,5.0,11.0]") != std::string::npos);
    CHECK(grid_from_json(js) == m);
    CHECK_THROWS_AS(grid_from_json(R"({"rows":2,"cols":2,"re":[1],"im":[1]})"), DimensionError);
}

TEST_CASE("writing reports the failing path") {
    const auto dir = std::filesystem::temp_directory_path() / "cdce_io_test";
    std::filesystem::create_directories(dir);
    const auto file = (dir / "rows.csv").string();
    emit({}, OutputFormat::csv, file);
    std::ifstream in(file);
    std::string header;
    std::getline(in, header);
    CHECK(header == kCsvHeader);
    try {
        write_text_file("/nonexistent_dir/x.csv", "x");
        FAIL("expected an exception");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("/nonexistent_dir/x.csv") != std::string::npos);
    }
}
