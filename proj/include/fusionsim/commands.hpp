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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "fusionsim/detector.hpp"
#include "fusionsim/growth.hpp"

namespace fusionsim::cli {

/// `start:stop:steps` or a single value. Steps are inclusive of both ends.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    static Range single(double value) { return {value, value, 1}; }
    /// Throws InvalidParameter on malformed text, steps < 1, or start == stop
    /// with more than one step.
    static Range parse(std::string_view text);
    std::vector<double> values() const;
};

struct SweepSpec {
    Range tau = Range::single(0.0);
    Range delta = Range::single(0.0);
    Range bandwidth = Range::single(INFINITY);
    DetectorLimit limit = DetectorLimit::IdealLimit;
};

inline constexpr std::string_view kSweepHeader = "tau,delta,bandwidth,gamma,p_error,p_success";
inline constexpr std::string_view kGrowHeader =
    "tau,delta,bandwidth,attempts,consumed,final_size,z_error_density,loss_events";

/// One CSV row per (tau, delta, bandwidth) in nested input order; p_success is
/// for the |++>-structured input through the plain gate.
void write_sweep(const SweepSpec &spec, std::ostream &out);

struct VerifySpec {
    int grid_size = 64;
    double tau = 1.0;
    double delta = 0.0;
    double bandwidth = INFINITY;
    DetectorLimit limit = DetectorLimit::IdealLimit;
    std::uint64_t seed = 1;
    int random_inputs = 3;
};

inline constexpr double kVerifyTolerance = 1e-3;

/// Oracle-versus-model report. Returns true when every trace distance is
/// below kVerifyTolerance. Throws CapacityExceeded for grids above the cap.
bool run_verify(const VerifySpec &spec, std::ostream &report);

/// `key = value` lines with `#` comments. tau, delta and bandwidth accept
/// comma-separated lists; one configuration is produced per combination.
/// Throws ParseError naming the offending line.
std::vector<GrowthConfig> parse_grow_config(std::istream &in);

/// Returns false if any row failed; failed rows are reported on `errors`.
bool write_growth(const std::vector<SweepRow> &rows, std::ostream &out, std::ostream &errors);

} // namespace fusionsim::cli
