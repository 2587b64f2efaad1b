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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fusionsim/detector.hpp"
#include "fusionsim/execution.hpp"
#include "fusionsim/fusion.hpp"

namespace fusionsim {

/// Gate noise for a growth campaign: either a temporal mismatch tau seen
/// through a detector pair (sigma^2 = 1 packets), or a prescribed gamma.
struct GateNoise {
    double tau = 0.0;
    DetectorLimit limit = DetectorLimit::IdealLimit;
    double delta = 0.0;
    double bandwidth = INFINITY;
    std::optional<double> gamma;

    GammaResult resolve() const;
};

struct GrowthConfig {
    int micro_size = 5;
    int redundancy = 2;
    std::int64_t target = 100;
    GateNoise noise;
    int trials = 1;
    std::uint64_t seed = 1;
    std::int64_t max_attempts = 1'000'000;
    bool record_trajectories = false;

    /// Throws InvalidParameter on out-of-range fields.
    void validate() const;
};

struct TrialStats {
    std::uint64_t attempts = 0;
    std::uint64_t successes = 0;
    std::uint64_t failures = 0;
    std::uint64_t losses = 0;
    /// Fresh micro-chains used to restart an emptied main chain.
    std::uint64_t reseeds = 0;
    /// End nodes measured out because their encoding was used up.
    std::uint64_t trims = 0;
    std::uint64_t final_size = 0;
    std::uint64_t fused_bonds = 0;
    std::uint64_t error_bonds = 0;
    /// Sum and sum of squares of the per-attempt change in main-chain length.
    std::int64_t growth_sum = 0;
    std::int64_t growth_sq_sum = 0;
    bool reached_target = false;
    std::vector<std::uint64_t> trajectory;
};

struct GrowthStats {
    std::uint64_t attempts = 0;
    std::uint64_t consumed = 0;
    std::uint64_t successes = 0;
    std::uint64_t failures = 0;
    std::uint64_t loss_events = 0;
    std::uint64_t reseeds = 0;
    std::uint64_t trims = 0;
    /// Mean over trials.
    double final_size = 0.0;
    std::uint64_t fused_bonds = 0;
    std::uint64_t error_bonds = 0;
    /// Errors per surviving fused bond.
    double z_error_density = 0.0;
    double mean_growth = 0.0;
    double growth_stddev = 0.0;
    std::uint64_t truncated_trials = 0;
    std::vector<TrialStats> trials;
};

/// One end-fusion campaign: a fresh linear micro-chain's end node is fused
/// onto the main chain's end node until the chain reaches `target` nodes or
/// `max_attempts` is spent. Failure and loss fragments of the micro-chain are
/// discarded.
TrialStats run_trial(const GrowthConfig &config, const GammaResult &noise, std::uint64_t trial);

/// Runs all trials; trial k draws from mix_seed(seed, k), so results do not
/// depend on scheduling.
GrowthStats run_growth(const GrowthConfig &config, Execution execution = Execution::Parallel);

inline constexpr double kFaultToleranceThreshold = 1e-4;

struct ThresholdMargin {
    bool pass = true;
    double ratio = 0.0;
};

ThresholdMargin threshold_margin(double p_error);

struct SweepRow {
    GrowthConfig config;
    std::optional<GrowthStats> stats;
    std::string error;
};

/// Rows in input order; a failing row carries its error message instead of stats.
std::vector<SweepRow> sweep_growth(const std::vector<GrowthConfig> &configs);

} // namespace fusionsim
