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

#include "fusionsim/growth.hpp"

#include <cmath>

#include "fusionsim/cluster.hpp"
#include "fusionsim/error.hpp"
#include "fusionsim/random.hpp"

namespace fusionsim {

GammaResult GateNoise::resolve() const {
    if (gamma) {
        return GammaResult::from_gamma(*gamma);
    }
    const auto det = DetectorModel::make(limit, delta, bandwidth);
    return fusionsim::gamma(gaussian_packet(0.0, 1.0, 0.0), gaussian_packet(0.0, 1.0, tau), det, det);
}

void GrowthConfig::validate() const {
    if (micro_size < 2) {
        throw InvalidParameter("micro_size must be at least 2");
    }
    if (redundancy < 2) {
        throw InvalidParameter("redundancy must be at least 2");
    }
    if (target < 1) {
        throw InvalidParameter("target must be at least 1");
    }
    if (trials < 1) {
        throw InvalidParameter("trials must be at least 1");
    }
    if (max_attempts < 1) {
        throw InvalidParameter("max_attempts must be at least 1");
    }
}

namespace {

constexpr NodeId kNone = static_cast<NodeId>(-1);

NodeId other_neighbor(const ClusterGraph &g, NodeId id, NodeId exclude) {
    if (id == kNone) {
        return kNone;
    }
    for (const auto &bond : g.bonds(id)) {
        if (bond.to != exclude) {
            return bond.to;
        }
    }
    return kNone;
}

void drop_fragment(ClusterGraph &g, NodeId first, NodeId last) {
    for (NodeId id = first; id <= last; ++id) {
        if (g.alive(id)) {
            g.discard(id);
        }
    }
}

} // namespace

TrialStats run_trial(const GrowthConfig &config, const GammaResult &noise, std::uint64_t trial) {
    config.validate();
    Rng rng(mix_seed(config.seed, trial));
    const auto m = static_cast<NodeId>(config.micro_size);
    const ClusterGraph micro = ClusterGraph::linear(config.micro_size, config.redundancy);
    const auto target = static_cast<std::size_t>(config.target);

    TrialStats stats;
    ClusterGraph main;
    NodeId end = kNone;

    while (main.size() < target) {
        if (main.size() == 0) {
            end = main.absorb(micro) + m - 1;
            ++stats.reseeds;
            continue;
        }
        if (main.node(end).redundancy < 2) {
            const NodeId next = other_neighbor(main, end, kNone);
            main.measure_z(end, static_cast<int>(rng.bits() & 1U));
            end = next;
            ++stats.trims;
            continue;
        }
        if (stats.attempts >= static_cast<std::uint64_t>(config.max_attempts)) {
            break;
        }

        const auto before = static_cast<std::int64_t>(main.size());
        const NodeId prev = other_neighbor(main, end, kNone);
        const NodeId prev2 = other_neighbor(main, prev, end);
        const NodeId offset = main.absorb(micro);
        const ClusterOutcome outcome = sample_cluster_outcome(noise, rng);
        apply_fusion(main, end, offset, outcome);

        switch (outcome.branch) {
        case Branch::Success:
            ++stats.successes;
            end = offset + m - 1;
            break;
        case Branch::Failure:
            ++stats.failures;
            drop_fragment(main, offset, offset + m - 1);
            end = prev;
            break;
        case Branch::Loss:
            ++stats.losses;
            drop_fragment(main, offset, offset + m - 1);
            end = prev2;
            break;
        }
        const std::int64_t change = static_cast<std::int64_t>(main.size()) - before;
        ++stats.attempts;
        stats.growth_sum += change;
        stats.growth_sq_sum += change * change;
        if (config.record_trajectories) {
            stats.trajectory.push_back(main.size());
        }
    }

    stats.reached_target = main.size() >= target;
    stats.final_size = main.size();
    stats.fused_bonds = main.fused_bonds();
    stats.error_bonds = main.error_bonds();
    return stats;
}

GrowthStats run_growth(const GrowthConfig &config, Execution execution) {
    config.validate();
    const GammaResult noise = config.noise.resolve();
    const auto trials = static_cast<std::size_t>(config.trials);

    GrowthStats out;
    out.trials.resize(trials);
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t t = 0; t < trials; ++t) {
            out.trials[t] = run_trial(config, noise, t);
        }
    } else {
        for (std::size_t t = 0; t < trials; ++t) {
            out.trials[t] = run_trial(config, noise, t);
        }
    }

    std::int64_t growth = 0;
    std::int64_t growth_sq = 0;
    double size_sum = 0.0;
    for (const auto &t : out.trials) {
        out.attempts += t.attempts;
        out.successes += t.successes;
        out.failures += t.failures;
        out.loss_events += t.losses;
        out.reseeds += t.reseeds;
        out.trims += t.trims;
        out.fused_bonds += t.fused_bonds;
        out.error_bonds += t.error_bonds;
        out.truncated_trials += t.reached_target ? 0 : 1;
        size_sum += static_cast<double>(t.final_size);
        growth += t.growth_sum;
        growth_sq += t.growth_sq_sum;
    }
    out.consumed = out.attempts;
    out.final_size = size_sum / static_cast<double>(trials);
    out.z_error_density =
        out.fused_bonds > 0 ? static_cast<double>(out.error_bonds) / static_cast<double>(out.fused_bonds) : 0.0;
    if (out.attempts > 0) {
        const double n = static_cast<double>(out.attempts);
        out.mean_growth = static_cast<double>(growth) / n;
        const double second = static_cast<double>(growth_sq) / n;
        out.growth_stddev = std::sqrt(std::max(0.0, second - out.mean_growth * out.mean_growth));
    }
    if (!config.record_trajectories) {
        for (auto &t : out.trials) {
            t.trajectory.clear();
        }
    }
    return out;
}

ThresholdMargin threshold_margin(double p_error) {
    if (!(p_error >= 0.0 && p_error <= 0.5)) {
        throw InvalidParameter("p_error must lie in [0, 0.5]");
    }
    const double ratio = p_error / kFaultToleranceThreshold;
    return {ratio <= 1.0, ratio};
}

std::vector<SweepRow> sweep_growth(const std::vector<GrowthConfig> &configs) {
    if (configs.empty()) {
        throw InvalidParameter("growth sweep needs at least one configuration");
    }
    std::vector<SweepRow> rows;
    rows.reserve(configs.size());
    for (const auto &config : configs) {
        SweepRow row{config, std::nullopt, {}};
        try {
            row.stats = run_growth(config);
        } catch (const Error &e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace fusionsim
