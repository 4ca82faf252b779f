// SPDX-License-Identifier: Apache-2.0
//
// lsasc - single-carrier uplink simulation for large-scale antenna arrays
// Copyright (C) 2026 The lsasc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "catch_amalgamated.hpp"

#include "lsasc/cli.hpp"
#include "lsasc/config.hpp"
#include "lsasc/errors.hpp"
#include "lsasc/experiment.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace lsasc;
using Catch::Approx;

// Covered tests:
// - config text parsing, list values, comments, error reporting
// - validation of swept axes, counts and seeds
// - profile names
// - number formatting round trip and CSV layout
// - SER experiments: noiseless runs, paired seeds, thread-count invariance
// - ISI validation rows
// - CLI exit codes and outputs

namespace
{
    ExperimentConfig small_config(ExperimentKind kind)
    {
        ExperimentConfig cfg;
        cfg.experiment = kind;
        cfg.m = {16};
        cfg.snr_db = {0.0};
        cfg.symbols_per_trial = 200;
        cfg.trials = 6;
        cfg.seed = 2026;
        return cfg;
    }

    struct CliResult
    {
        int code;
        std::string out, err;
    };

    CliResult run_cli(std::vector<std::string> args)
    {
        args.insert(args.begin(), "lsasc");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    std::string read_file(const std::filesystem::path &p)
    {
        std::ifstream f(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }

    std::filesystem::path temp_path(const std::string &name)
    {
        return std::filesystem::temp_directory_path() / ("lsasc_test_" + name);
    }
} // namespace

TEST_CASE("harness - config text parsing")
{
    ExperimentConfig cfg;
    apply_config_text(cfg, "# sweep\n"
                           "experiment = ser-vs-length\n"
                           "m = 64\n"
                           "d_over_lambda = 5, 10, independent   # trailing comment\n"
                           "\n"
                           "snr_db = -8\n"
                           "seed = 18446744073709551615\n"
                           "threads = 3\n");
    CHECK(cfg.experiment == ExperimentKind::ser_vs_length);
    CHECK(cfg.m == std::vector<std::size_t>{64});
    REQUIRE(cfg.d_over_lambda.size() == 3);
    CHECK(!cfg.d_over_lambda[0].independent);
    CHECK(cfg.d_over_lambda[1].d_over_lambda == 10.0);
    CHECK(cfg.d_over_lambda[2].independent);
    CHECK(std::isinf(cfg.d_over_lambda[2].axis_value()));
    CHECK(cfg.snr_db == std::vector<double>{-8.0});
    CHECK(*cfg.seed == 18446744073709551615ULL);
    CHECK(cfg.threads == 3);
    CHECK_NOTHROW(validate(cfg));

    apply_setting(cfg, "snr_db", "inf");
    CHECK(noise_density(cfg.snr_db.front()) == 0.0);
    CHECK(noise_density(-10.0) == Approx(10.0));
    CHECK(noise_density(0.0) == 1.0);

    CHECK_THROWS_AS(apply_setting(cfg, "colour", "blue"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "m", "sixty"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "experiment", "ser-vs-moon"), ConfigError);
    try
    {
        apply_config_text(cfg, "m = 4\nno equals sign here\n", "sweep.cfg");
        FAIL("expected ConfigError");
    }
    catch (const ConfigError &e)
    {
        CHECK(std::string(e.what()).find("sweep.cfg:2") != std::string::npos);
    }
    CHECK_THROWS_AS(load_config_file(cfg, "/nonexistent/lsasc.cfg"), ConfigError);
}

TEST_CASE("harness - validation")
{
    auto cfg = small_config(ExperimentKind::ser_vs_snr);
    cfg.snr_db = {-10, -5, 0};
    CHECK_NOTHROW(validate(cfg));
    cfg.m = {16, 32};
    CHECK_THROWS_AS(validate(cfg), ConfigError); // two swept axes

    cfg = small_config(ExperimentKind::ser_vs_antennas);
    cfg.m = {16, 32, 64};
    CHECK_NOTHROW(validate(cfg));
    cfg.seed.reset();
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.experiment = ExperimentKind::analyze;
    CHECK_NOTHROW(validate(cfg));

    cfg = small_config(ExperimentKind::ser_vs_snr);
    cfg.trials = 0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = small_config(ExperimentKind::ser_vs_snr);
    cfg.profile = "rural";
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = small_config(ExperimentKind::ser_vs_snr);
    cfg.m = {1};
    cfg.d_over_lambda = {ArraySetting{false, 5.0}};
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("harness - profile names")
{
    CHECK(resolve_profile("etu", 0.2e-6) == etu_profile());
    CHECK(resolve_profile("uniform-9", 0.2e-6) == uniform_profile(9, 0.2e-6));
    const auto inline_p = resolve_profile("0:0, 300:-3", 0.2e-6);
    REQUIRE(inline_p.tap_count() == 2);
    CHECK(inline_p.delay(1) == Approx(300e-9));
    CHECK(inline_p.power(0) / inline_p.power(1) == Approx(std::pow(10.0, 0.3)));
    CHECK_THROWS_AS(resolve_profile("uniform-0", 0.2e-6), ConfigError);
    CHECK_THROWS_AS(resolve_profile("300:0, 0:-3", 0.2e-6), ConfigError);
}

TEST_CASE("harness - number formatting round trips")
{
    Catch::SimplePcg32 gen(5);
    for (int i = 0; i < 1000; ++i)
    {
        const double v = std::ldexp(static_cast<double>(gen()), -static_cast<int>(gen() % 60)) / 3.0;
        const std::string s = format_number(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(back == v);
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(100.0) == "100");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("harness - CSV layout")
{
    std::vector<SerPoint> pts{{-10.0, 0.25, 50, 200, 0.06}, {std::numeric_limits<double>::infinity(), 0.0, 0, 200, 0.0}};
    CHECK(format_csv(pts) == "x,ser,errors,symbols,ci95\n-10,0.25,50,200,0.06\ninf,0,0,200,0\n");
    const auto path = temp_path("layout.csv");
    emit_csv(pts, path.string());
    CHECK(read_file(path) == format_csv(pts));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(emit_csv(pts, "/nonexistent/dir/out.csv"), std::runtime_error);
}

TEST_CASE("harness - noiseless SER at large M is zero")
{
    auto cfg = small_config(ExperimentKind::ser_vs_snr);
    cfg.m = {256};
    cfg.snr_db = {std::numeric_limits<double>::infinity()};
    cfg.trials = 2;
    const auto pts = run_ser_experiment(cfg);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].errors == 0);
    CHECK(pts[0].symbols == 400);
    CHECK(pts[0].unreliable());
}

TEST_CASE("harness - SER sweep over SNR with paired seeds")
{
    auto cfg = small_config(ExperimentKind::ser_vs_snr);
    cfg.snr_db = {-12.0, -9.0, -6.0};
    cfg.trials = 10;
    const auto pts = run_ser_experiment(cfg);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].x == -12.0);
    // same channels, symbols and unit noise at every point: only the noise scale differs
    CHECK(pts[0].errors > pts[1].errors);
    CHECK(pts[1].errors > pts[2].errors);
    for (const auto &p : pts)
    {
        CHECK(p.symbols == 2000);
        CHECK(p.ser == Approx(static_cast<double>(p.errors) / 2000.0));
        CHECK(p.ci95_halfwidth == Approx(1.96 * std::sqrt(p.ser * (1.0 - p.ser) / 2000.0)));
    }

    // re-running a single point reproduces it exactly
    auto one = cfg;
    one.snr_db = {-9.0};
    CHECK(run_ser_experiment(one)[0].errors == pts[1].errors);
}

TEST_CASE("harness - results do not depend on thread count")
{
    auto cfg = small_config(ExperimentKind::ser_vs_antennas);
    cfg.m = {8, 16, 32};
    cfg.snr_db = {-6.0};
    cfg.trials = 7;
    cfg.threads = 1;
    const std::string one = format_csv(run_ser_experiment(cfg));
    cfg.threads = 3;
    const std::string three = format_csv(run_ser_experiment(cfg));
    CHECK(one == three);
}

TEST_CASE("harness - ISI validation rows")
{
    auto cfg = small_config(ExperimentKind::isi_validate);
    cfg.m = {16, 64};
    cfg.trials = 300;
    const auto rep = run_isi_validation(cfg);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.lag_window == 41);
    for (const auto &r : rep.rows)
    {
        CHECK(r.p0 == Approx(1.0 / static_cast<double>(r.m)));
        CHECK(std::abs(r.empirical - r.closed_form) < 5.0 * r.standard_error);
        CHECK(r.relative_error == Approx(std::abs(r.empirical - r.closed_form) / r.closed_form));
    }
    const std::string csv = format_isi_csv(rep);
    CHECK(csv.rfind("m,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("harness - CLI exit codes")
{
    SECTION("no arguments prints usage")
    {
        const auto r = run_cli({});
        CHECK(r.code == 1);
        CHECK(r.err.find("ser-vs-snr") != std::string::npos);
    }
    SECTION("unknown subcommand or option")
    {
        CHECK(run_cli({"ser-vs-moon"}).code == 1);
        CHECK(run_cli({"analyze", "--bogus"}).code == 1);
    }
    SECTION("config errors")
    {
        CHECK(run_cli({"ser-vs-snr", "--m", "16"}).code == 1); // no seed
        CHECK(run_cli({"analyze", "--beta", "2"}).code == 1);
        CHECK(run_cli({"analyze", "--config", "/nonexistent/x.cfg"}).code == 1);
    }
    SECTION("runtime error on an unwritable output")
    {
        const auto r = run_cli({"ser-vs-snr", "--seed", "1", "--m", "8", "--trials", "1", "--symbols", "20",
                                "--out", "/nonexistent/dir/out.csv"});
        CHECK(r.code == 2);
        CHECK(r.err.find("/nonexistent/dir/out.csv") != std::string::npos);
    }
    SECTION("help")
    {
        CHECK(run_cli({"--help"}).code == 0);
    }
}

TEST_CASE("harness - CLI analyze and simulations")
{
    {
        const auto r = run_cli({"analyze", "--m", "100", "--independent"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("P0 = 0.01") != std::string::npos);
        CHECK(r.out.find("9 taps") != std::string::npos);
    }
    {
        const auto r = run_cli({"analyze", "--m", "64", "--d-over-lambda", "10", "--on-grid"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("7 taps") != std::string::npos);
        CHECK(r.out.find("P0 limit") != std::string::npos);
    }

    const auto cfg_path = temp_path("run.cfg");
    const auto csv_a = temp_path("a.csv"), csv_b = temp_path("b.csv");
    {
        std::ofstream f(cfg_path);
        f << "m = 8, 16\nsnr_db = -6\nsymbols_per_trial = 100\ntrials = 4\nseed = 77\n";
    }
    const auto a = run_cli({"ser-vs-antennas", "--config", cfg_path.string(), "--out", csv_a.string()});
    const auto b = run_cli({"ser-vs-antennas", "--config", cfg_path.string(), "--out", csv_b.string(),
                            "--threads", "2"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    const std::string text = read_file(csv_a);
    CHECK(text.rfind("x,ser,errors,symbols,ci95\n8,", 0) == 0);
    CHECK(text == read_file(csv_b));

    // command-line values override the file
    const auto c = run_cli({"ser-vs-antennas", "--config", cfg_path.string(), "--m", "8", "--out", csv_b.string()});
    REQUIRE(c.code == 0);
    const std::string single = read_file(csv_b);
    CHECK(std::count(single.begin(), single.end(), '\n') == 2);

    const auto v = run_cli({"isi-validate", "--m", "16", "--trials", "50", "--seed", "3"});
    CHECK(v.code == 0);
    CHECK(v.out.find("isi-validate") != std::string::npos);

    for (const auto &p : {cfg_path, csv_a, csv_b})
        std::filesystem::remove(p);
}
