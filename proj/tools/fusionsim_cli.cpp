// Copyright 2026 The fusionsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fusionsim/commands.hpp"
#include "fusionsim/error.hpp"

namespace {

using namespace fusionsim;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;

struct Options {
    std::string tau = "0";
    std::string delta;
    std::string bandwidth;
    std::string limit;
    int grid_size = 64;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string config;
};

// Finite detectors are implied when a window is given without an explicit limit.
DetectorLimit resolve_limit(const Options &opt) {
    if (!opt.limit.empty()) {
        return parse_detector_limit(opt.limit);
    }
    return opt.delta.empty() && opt.bandwidth.empty() ? DetectorLimit::IdealLimit : DetectorLimit::Finite;
}

// Output is staged in memory so a failed run never leaves a partial file.
void emit(const std::string &text, const std::string &path) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error("cannot open '" + path + "' for writing");
    }
    file << text;
    file.close();
    if (!file) {
        throw Error("failed writing '" + path + "'");
    }
}

int run_sweep(const Options &opt) {
    cli::SweepSpec spec;
    spec.limit = resolve_limit(opt);
    spec.tau = cli::Range::parse(opt.tau);
    if (!opt.delta.empty()) {
        spec.delta = cli::Range::parse(opt.delta);
    }
    if (!opt.bandwidth.empty()) {
        spec.bandwidth = cli::Range::parse(opt.bandwidth);
    }
    std::ostringstream csv;
    cli::write_sweep(spec, csv);
    emit(csv.str(), opt.out);
    return 0;
}

int run_verify(const Options &opt) {
    cli::VerifySpec spec;
    spec.grid_size = opt.grid_size;
    spec.limit = resolve_limit(opt);
    spec.tau = cli::Range::parse(opt.tau).start;
    if (!opt.delta.empty()) {
        spec.delta = cli::Range::parse(opt.delta).start;
    }
    if (!opt.bandwidth.empty()) {
        spec.bandwidth = cli::Range::parse(opt.bandwidth).start;
    }
    if (opt.seed) {
        spec.seed = *opt.seed;
    }
    std::ostringstream report;
    const bool ok = cli::run_verify(spec, report);
    emit(report.str(), opt.out);
    return ok ? 0 : kExitVerifyFailed;
}

int run_grow(const Options &opt) {
    std::ifstream file(opt.config);
    if (!file) {
        throw Error("cannot read config '" + opt.config + "'");
    }
    auto configs = cli::parse_grow_config(file);
    for (auto &c : configs) {
        if (opt.trials) {
            c.trials = *opt.trials;
        }
        if (opt.seed) {
            c.seed = *opt.seed;
        }
        c.validate();
    }
    const auto rows = sweep_growth(configs);
    std::ostringstream csv;
    const bool ok = cli::write_growth(rows, csv, std::cerr);
    emit(csv.str(), opt.out);
    return ok ? 0 : kExitConfig;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Mode-mismatch error model for the linear-optics parity gate"};
    app.require_subcommand(1);
    Options opt;

    const auto range_help = "start:stop:steps or a single value";
    auto *sweep = app.add_subcommand("sweep", "gamma, p_error and p_success over a parameter grid");
    sweep->add_option("--tau", opt.tau, std::string("temporal offset, ") + range_help);
    sweep->add_option("--delta", opt.delta, std::string("spectral resolution, ") + range_help);
    sweep->add_option("--bandwidth", opt.bandwidth, std::string("detector bandwidth, ") + range_help);
    sweep->add_option("--limit", opt.limit, "finite|ideal|freq-integrated|time-integrated");
    sweep->add_option("--out", opt.out, "output CSV (default stdout)");

    auto *verify = app.add_subcommand("verify", "compare the dense simulation with the analytic model");
    verify->add_option("--grid-size", opt.grid_size, "frequency bins")->capture_default_str();
    verify->add_option("--tau", opt.tau, "temporal offset");
    verify->add_option("--delta", opt.delta, "spectral resolution");
    verify->add_option("--bandwidth", opt.bandwidth, "detector bandwidth");
    verify->add_option("--limit", opt.limit, "finite|ideal|freq-integrated|time-integrated");
    verify->add_option("--seed", opt.seed, "seed for the randomized inputs");
    verify->add_option("--out", opt.out, "report file (default stdout)");

    auto *grow = app.add_subcommand("grow", "Monte Carlo cluster growth from a config file");
    grow->add_option("--config", opt.config, "key = value config file")->required();
    grow->add_option("--trials", opt.trials, "override trials");
    grow->add_option("--seed", opt.seed, "override seed");
    grow->add_option("--out", opt.out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (opt.trials && *opt.trials < 1) {
        std::cerr << "error: --trials must be positive\n";
        return kExitConfig;
    }
    try {
        if (sweep->parsed()) {
            return run_sweep(opt);
        }
        if (verify->parsed()) {
            return run_verify(opt);
        }
        return run_grow(opt);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
