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

#include "fusionsim/commands.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include "fusionsim/error.hpp"
#include "fusionsim/format.hpp"
#include "fusionsim/fusion.hpp"
#include "fusionsim/oracle.hpp"
#include "fusionsim/random.hpp"

namespace fusionsim::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double &value) {
    text = trim(text);
    if (text.empty()) {
        return false;
    }
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    return result.ec == std::errc() && result.ptr == text.data() + text.size();
}

template <typename Int> bool parse_integer(std::string_view text, Int &value) {
    text = trim(text);
    if (text.empty()) {
        return false;
    }
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    return result.ec == std::errc() && result.ptr == text.data() + text.size();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

Eigen::VectorXcd random_unit_vector(Rng &rng, Eigen::Index dim) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        v[k] = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    }
    return v / v.norm();
}

ParityInput random_input(Rng &rng) {
    const Eigen::VectorXcd alpha = random_unit_vector(rng, 4);
    std::array<Eigen::VectorXcd, 4> env;
    for (auto &phi : env) {
        phi = random_unit_vector(rng, 4);
    }
    return ParityInput({alpha[0], alpha[1], alpha[2], alpha[3]}, env);
}

} // namespace

Range Range::parse(std::string_view text) {
    const auto parts = split(trim(text), ':');
    Range r;
    if (parts.size() == 1) {
        if (!parse_double(parts[0], r.start)) {
            throw InvalidParameter("cannot parse range '" + std::string(text) + "'");
        }
        r.stop = r.start;
        return r;
    }
    if (parts.size() != 3 || !parse_double(parts[0], r.start) || !parse_double(parts[1], r.stop) ||
        !parse_integer(parts[2], r.steps)) {
        throw InvalidParameter("range must be start:stop:steps, got '" + std::string(text) + "'");
    }
    if (r.steps < 1) {
        throw InvalidParameter("range needs at least one step");
    }
    if (r.steps > 1 && r.start == r.stop) {
        throw InvalidParameter("degenerate range with more than one step");
    }
    return r;
}

std::vector<double> Range::values() const {
    if (steps == 1) {
        return {start};
    }
    std::vector<double> out(steps);
    for (int k = 0; k < steps; ++k) {
        out[k] = start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
    }
    return out;
}

void write_sweep(const SweepSpec &spec, std::ostream &out) {
    struct Point {
        double tau, delta, bandwidth;
    };
    std::vector<Point> points;
    for (double tau : spec.tau.values()) {
        for (double delta : spec.delta.values()) {
            for (double band : spec.bandwidth.values()) {
                points.push_back({tau, delta, band});
            }
        }
    }
    // validate detectors up front so errors surface before any work
    for (const auto &p : points) {
        DetectorModel::make(spec.limit, p.delta, p.bandwidth);
    }

    const auto input = ParityInput::plus_plus();
    const auto n = static_cast<std::ptrdiff_t>(points.size());
    std::vector<std::string> rows(points.size());
    std::vector<std::string> failures(points.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto &p = points[k];
        try {
            const auto det = DetectorModel::make(spec.limit, p.delta, p.bandwidth);
            const auto noise = gamma(gaussian_packet(0.0, 1.0, 0.0), gaussian_packet(0.0, 1.0, p.tau), det, det);
            const auto gate = apply_parity_gate(input, noise, Variant::Plain);
            rows[k] = format_real(p.tau) + ',' + format_real(p.delta) + ',' + format_real(p.bandwidth) + ',' +
                      format_real(noise.gamma) + ',' + format_real(noise.p_error) + ',' + format_real(gate.p_success);
        } catch (const Error &e) {
            failures[k] = e.what();
        }
    }
    for (const auto &f : failures) {
        if (!f.empty()) {
            throw InvalidParameter(f);
        }
    }
    out << kSweepHeader << '\n';
    for (const auto &row : rows) {
        out << row << '\n';
    }
}

bool run_verify(const VerifySpec &spec, std::ostream &report) {
    if (spec.grid_size > oracle::kMaxBins) {
        throw CapacityExceeded("grid size " + std::to_string(spec.grid_size) + " exceeds the cap of " +
                               std::to_string(oracle::kMaxBins));
    }
    if (spec.grid_size < 8) {
        throw InvalidParameter("grid size must be at least 8");
    }
    const auto det = DetectorModel::make(spec.limit, spec.delta, spec.bandwidth);
    const auto a = gaussian_packet(0.0, 1.0, 0.0);
    const auto b = gaussian_packet(0.0, 1.0, spec.tau);
    const auto grid = oracle::oracle_grid(a, b, spec.grid_size);

    std::vector<std::pair<std::string, ParityInput>> inputs{{"plus-plus", ParityInput::plus_plus()}};
    Rng rng(spec.seed);
    for (int k = 0; k < spec.random_inputs; ++k) {
        inputs.emplace_back("random-" + std::to_string(k), random_input(rng));
    }

    report << "verify tau=" << format_real(spec.tau) << " limit=" << to_string(spec.limit)
           << " delta=" << format_real(spec.delta) << " bandwidth=" << format_real(spec.bandwidth)
           << " grid=" << spec.grid_size << '\n';

    bool ok = true;
    for (Variant variant : {Variant::Plain, Variant::Rotated45}) {
        const char *name = variant == Variant::Plain ? "plain" : "rotated45";
        double worst[3] = {0.0, 0.0, 0.0};
        double worst_prob = 0.0;
        double worst_complete = 0.0;
        for (const auto &[label, input] : inputs) {
            const auto cmp = oracle::compare_with_model(input, a, b, det, det, grid, variant);
            worst[0] = std::max(worst[0], cmp.success_distance);
            worst[1] = std::max(worst[1], cmp.failure_c_distance);
            worst[2] = std::max(worst[2], cmp.failure_d_distance);
            worst_prob = std::max({worst_prob, cmp.success_probability_error, cmp.failure_probability_error,
                                   cmp.loss_probability_error});
            worst_complete = std::max(worst_complete, cmp.completeness_error);
        }
        const char *branches[3] = {"success", "failure-c", "failure-d"};
        for (int k = 0; k < 3; ++k) {
            const bool pass = worst[k] < kVerifyTolerance;
            ok = ok && pass;
            report << "variant=" << name << " branch=" << branches[k] << " max_trace_distance=" << format_real(worst[k])
                   << (pass ? " PASS" : " FAIL") << '\n';
        }
        report << "variant=" << name << " max_probability_error=" << format_real(worst_prob)
               << " completeness_error=" << format_real(worst_complete) << '\n';
    }
    report << (ok ? "result=PASS" : "result=FAIL") << '\n';
    return ok;
}

std::vector<GrowthConfig> parse_grow_config(std::istream &in) {
    static const std::set<std::string, std::less<>> known{"micro_size", "redundancy", "target",  "tau",
                                                          "delta",      "bandwidth",  "trials",  "seed",
                                                          "limit",      "gamma",      "max_attempts"};
    std::map<std::string, std::pair<std::string, int>, std::less<>> values;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", number);
        }
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        if (!known.contains(key)) {
            throw ParseError("unknown key '" + key + "'", number);
        }
        if (value.empty()) {
            throw ParseError("missing value for '" + key + "'", number);
        }
        if (values.contains(key)) {
            throw ParseError("duplicate key '" + key + "'", number);
        }
        values[key] = {value, number};
    }

    GrowthConfig base;
    auto integer = [&](const char *key, auto &field) {
        if (auto it = values.find(key); it != values.end()) {
            if (!parse_integer(it->second.first, field)) {
                throw ParseError("'" + std::string(key) + "' must be an integer", it->second.second);
            }
        }
    };
    integer("micro_size", base.micro_size);
    integer("redundancy", base.redundancy);
    integer("target", base.target);
    integer("trials", base.trials);
    integer("seed", base.seed);
    integer("max_attempts", base.max_attempts);

    auto list = [&](const char *key, double fallback) {
        std::vector<double> out;
        auto it = values.find(key);
        if (it == values.end()) {
            return std::vector<double>{fallback};
        }
        for (auto part : split(it->second.first, ',')) {
            double v = 0.0;
            if (!parse_double(part, v)) {
                throw ParseError("'" + std::string(key) + "' must be a number or comma-separated numbers",
                                 it->second.second);
            }
            out.push_back(v);
        }
        return out;
    };
    const auto taus = list("tau", 0.0);
    const auto deltas = list("delta", 0.0);
    const auto bands = list("bandwidth", INFINITY);

    const bool has_detector = values.contains("delta") || values.contains("bandwidth");
    base.noise.limit = has_detector ? DetectorLimit::Finite : DetectorLimit::IdealLimit;
    if (auto it = values.find("limit"); it != values.end()) {
        try {
            base.noise.limit = parse_detector_limit(it->second.first);
        } catch (const InvalidParameter &e) {
            throw ParseError(e.what(), it->second.second);
        }
    }
    if (auto it = values.find("gamma"); it != values.end()) {
        double g = 0.0;
        if (!parse_double(it->second.first, g) || g < 0.0 || g > 1.0) {
            throw ParseError("'gamma' must be a number in [0, 1]", it->second.second);
        }
        base.noise.gamma = g;
    }
    try {
        base.validate();
    } catch (const InvalidParameter &e) {
        throw ParseError(e.what(), 0);
    }

    std::vector<GrowthConfig> configs;
    for (double tau : taus) {
        for (double delta : deltas) {
            for (double band : bands) {
                GrowthConfig c = base;
                c.noise.tau = tau;
                c.noise.delta = delta;
                c.noise.bandwidth = band;
                if (c.noise.limit == DetectorLimit::Finite && !c.noise.gamma) {
                    try {
                        DetectorModel::finite(delta, band);
                    } catch (const InvalidParameter &e) {
                        const auto &where = values.contains("delta") ? values.at("delta") : values.at("bandwidth");
                        throw ParseError(e.what(), where.second);
                    }
                }
                configs.push_back(c);
            }
        }
    }
    return configs;
}

bool write_growth(const std::vector<SweepRow> &rows, std::ostream &out, std::ostream &errors) {
    bool ok = true;
    out << kGrowHeader << '\n';
    for (const auto &row : rows) {
        const auto &n = row.config.noise;
        if (!row.stats) {
            errors << "row tau=" << format_real(n.tau) << " delta=" << format_real(n.delta)
                   << " bandwidth=" << format_real(n.bandwidth) << ": " << row.error << '\n';
            ok = false;
            continue;
        }
        const auto &s = *row.stats;
        out << format_real(n.tau) << ',' << format_real(n.delta) << ',' << format_real(n.bandwidth) << ','
            << s.attempts << ',' << s.consumed << ',' << format_real(s.final_size) << ','
            << format_real(s.z_error_density) << ',' << s.loss_events << '\n';
    }
    return ok;
}

} // namespace fusionsim::cli
