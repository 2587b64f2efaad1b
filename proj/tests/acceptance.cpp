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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>

#include "fusionsim/cluster.hpp"
#include "fusionsim/commands.hpp"
#include "fusionsim/format.hpp"
#include "fusionsim/fusion.hpp"
#include "fusionsim/growth.hpp"
#include "fusionsim/oracle.hpp"
#include "support.hpp"

using namespace fusionsim;
using fusionsim::testing::projector;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string &what, double seconds) {
    failures += pass ? 0 : 1;
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << what << "  ["
              << format_real(seconds) << " s]" << std::endl;
}

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

const WavePacket kA = gaussian_packet(0.0, 1.0, 0.0);

GammaResult noise_for(double tau, const DetectorModel &det) {
    return gamma(kA, gaussian_packet(0.0, 1.0, tau), det, det);
}

void ideal_gamma() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (double tau : {0.1, 0.5, 1.0}) {
        worst = std::max(worst, std::abs(noise_for(tau, DetectorModel::ideal()).gamma - std::exp(-tau * tau)));
    }
    const double t = since(start);
    report(1, worst < 1e-6 && t < 1.0, "ideal-limit gamma, max |gamma - exp(-tau^2)| = " + format_real(worst), t);
}

void error_formula() {
    const auto start = Clock::now();
    bool exact = true;
    Rng rng(1);
    for (int k = 0; k < 200; ++k) {
        const auto det = DetectorModel::finite(testing::uniform(rng, 1e-3, 2), testing::uniform(rng, 0.1, 4));
        const auto g = noise_for(testing::uniform(rng, 0, 3), det);
        exact = exact && g.p_error == (1.0 - g.gamma) / 2.0 && g.p_error == error_probability(g.gamma);
    }
    for (double tau : {0.0, 0.5, 1.0}) {
        const auto g = noise_for(tau, DetectorModel::ideal());
        exact = exact && g.p_error == (1.0 - g.gamma) / 2.0;
    }
    const bool ends = error_probability(1.0) == 0.0 && error_probability(0.0) == 0.5;
    report(2, exact && ends, "p_error = (1 - gamma)/2 on 203 computed gammas, endpoints 0 and 0.5", since(start));
}

void hom_relation() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double v = k / 999.0;
        const double g = gamma_from_visibility(v);
        worst = std::max({worst, std::abs(g - 2 * v / (1 + v)), std::abs(visibility_from_gamma(g) - v)});
    }
    report(3, worst < 1e-12, "HOM relation round trip over 1000 visibilities, max error " + format_real(worst),
           since(start));
}

void success_level() {
    const auto start = Clock::now();
    const auto input = ParityInput::plus_plus();
    double worst = 0.0;
    for (const auto &det : {DetectorModel::ideal(), DetectorModel::frequency_integrated(),
                            DetectorModel::time_integrated()}) {
        for (double tau : {0.0, 0.5, 1.0, 2.0}) {
            for (auto variant : {Variant::Plain, Variant::Rotated45}) {
                worst = std::max(worst, std::abs(apply_parity_gate(input, noise_for(tau, det), variant).p_success - 0.5));
            }
        }
    }
    const auto det = DetectorModel::finite(1e-4, 2.0);
    const auto noise = noise_for(1.0, det);
    const auto finite = apply_parity_gate(input, noise, Variant::Plain);
    const double expected = 0.5 * std::pow(std::erf(std::sqrt(2.0)), 2);

    const int n = 10000;
    Rng rng(1);
    int lost = 0;
    for (int k = 0; k < n; ++k) {
        lost += sample_outcome(input, noise, Variant::Plain, rng).branch() == Branch::Loss;
    }
    const double loss_rate = lost / double(n);
    const double sigma = std::sqrt(finite.p_loss * (1 - finite.p_loss) / n);
    const bool pass = worst < 1e-6 && std::abs(finite.p_success - expected) < 1e-4 &&
                      std::abs(finite.p_loss - 0.0889) < 3 * sigma && std::abs(loss_rate - finite.p_loss) < 3 * sigma;
    const double t = since(start);
    report(4, pass && t < 10.0,
           "success level: limits max |p - 0.5| = " + format_real(worst) + ", finite p_success = " +
               format_real(finite.p_success) + ", loss model " + format_real(finite.p_loss) + " sampled " +
               format_real(loss_rate) + " (sigma " + format_real(sigma) + ")",
           t);
}

void oracle_equivalence() {
    const auto start = Clock::now();
    Rng rng(2026);
    double success = 0.0;
    double failure = 0.0;
    double drift = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double tau = testing::uniform(rng, 0.0, 1.5);
        const auto det = DetectorModel::finite(testing::uniform(rng, 0.5, 2.0), testing::uniform(rng, 1.5, 4.0));
        const auto input = testing::random_input(rng, 1 + static_cast<Eigen::Index>(rng.bits() % 4));
        const auto b = gaussian_packet(0.0, 1.0, tau);
        const auto grid = oracle::oracle_grid(kA, b, 64);
        for (auto variant : {Variant::Plain, Variant::Rotated45}) {
            const auto dense = oracle::simulate(input, kA, b, det, det, grid, variant);
            const auto model = apply_parity_gate(input, gamma(kA, b, det, det), variant);
            success = std::max(success, oracle::branch_distance(dense.success.op, model.success));

            // measurement semantics: Z x Z (plain) or X x X (rotated) projections
            Eigen::VectorXcd proj_c = Eigen::VectorXcd::Zero(input.dimension());
            Eigen::VectorXcd proj_d = Eigen::VectorXcd::Zero(input.dimension());
            const double sc[4] = {0.5, 0.5, -0.5, -0.5};
            const double sd[4] = {0.5, -0.5, 0.5, -0.5};
            for (int c = 0; c < 4; ++c) {
                const auto branch = input.branch(static_cast<Config>(c));
                if (variant == Variant::Plain) {
                    proj_c += c == 1 ? branch : Eigen::VectorXcd::Zero(input.dimension());
                    proj_d += c == 2 ? branch : Eigen::VectorXcd::Zero(input.dimension());
                } else {
                    proj_c += sc[c] * branch;
                    proj_d += sd[c] * branch;
                }
            }
            failure = std::max({failure, oracle::branch_distance(dense.failure_c.op, projector(proj_c)),
                                oracle::branch_distance(dense.failure_d.op, projector(proj_d))});

            const auto matched = oracle::simulate(input, kA, kA, det, det, grid, variant);
            drift = std::max({drift, oracle::branch_distance(dense.failure_c.op, matched.failure_c.op),
                              oracle::branch_distance(dense.failure_d.op, matched.failure_d.op),
                              std::abs(dense.failure_c.probability - matched.failure_c.probability),
                              std::abs(dense.failure_d.probability - matched.failure_d.probability)});
        }
    }
    const double t = since(start);
    report(5, success < 1e-3 && failure < 1e-9 && drift < 1e-9 && t < 300.0,
           "oracle vs model on 20 random cases x 2 variants: success " + format_real(success) + ", failure semantics " +
               format_real(failure) + ", failure tau-drift " + format_real(drift),
           t);
}

void narrowband() {
    const auto start = Clock::now();
    const auto narrow_det = DetectorModel::finite(1e-3, 0.05);
    const auto narrow = noise_for(1.0, narrow_det);
    const auto wide = noise_for(1.0, DetectorModel::ideal());
    const auto input = ParityInput::plus_plus();
    const double p_narrow = apply_parity_gate(input, narrow, Variant::Plain).p_success;
    const double p_wide = apply_parity_gate(input, wide, Variant::Plain).p_success;
    const bool pass = narrow.gamma > 0.999 && std::abs(wide.gamma - std::exp(-1.0)) < 1e-6 && p_narrow < p_wide;
    report(6, pass,
           "narrowband gamma " + format_real(narrow.gamma) + ", ideal gamma " + format_real(wide.gamma) +
               ", p_success " + format_real(p_narrow) + " < " + format_real(p_wide),
           since(start));
}

void cluster_channel() {
    const auto start = Clock::now();
    const auto chain = ClusterGraph::linear(2, 2);
    const auto noise = noise_for(1.0, DetectorModel::ideal());
    const double distance = verify_error_model(chain, 1, chain, 0, noise, 100000, 1);
    const double t = since(start);
    report(7, distance < 1e-3 && t < 120.0,
           "dephasing channel, 1e5 samples at p_error " + format_real(noise.p_error) + ": trace distance " +
               format_real(distance),
           t);
}

void growth_accounting() {
    const auto start = Clock::now();
    GrowthConfig perfect;
    perfect.micro_size = 5;
    perfect.noise.gamma = 1.0;
    perfect.target = 1'000'000;
    perfect.max_attempts = 10000;
    const auto grown = run_growth(perfect);
    const double se = grown.growth_stddev / std::sqrt(static_cast<double>(grown.attempts));
    const bool growth_ok = grown.attempts == 10000 && std::abs(grown.mean_growth - 2.0) < 3 * se;

    GrowthConfig noisy;
    noisy.micro_size = 5;
    noisy.noise.tau = 0.02;
    noisy.target = 10000;
    noisy.trials = 500;
    const auto p = noisy.noise.resolve().p_error;
    const auto dense = run_growth(noisy);
    const double n = static_cast<double>(dense.fused_bonds);
    const double sigma = std::sqrt(p * (1 - p) / n);
    const bool density_ok = std::abs(dense.z_error_density - p) < 3 * sigma;

    const auto margin = threshold_margin(2e-4);
    const bool margin_ok = !margin.pass && std::abs(margin.ratio - 2.0) < 1e-12;
    report(8, growth_ok && density_ok && margin_ok,
           "mean growth " + format_real(grown.mean_growth) + " (3 se " + format_real(3 * se) + "), z density " +
               format_real(dense.z_error_density) + " vs " + format_real(p) + " over " + format_real(n) +
               " bonds (3 sigma " + format_real(3 * sigma) + "), threshold ratio " + format_real(margin.ratio),
           since(start));
}

void determinism() {
    const auto start = Clock::now();
    auto sweep = [] {
        cli::SweepSpec spec;
        spec.limit = DetectorLimit::Finite;
        spec.tau = cli::Range::parse("0:2:5");
        spec.delta = cli::Range::parse("0.01:1:3");
        spec.bandwidth = cli::Range::parse("0.5:3:3");
        std::ostringstream out;
        cli::write_sweep(spec, out);
        return out.str();
    };
    auto verify = [] {
        cli::VerifySpec spec;
        spec.limit = DetectorLimit::Finite;
        spec.delta = 0.7;
        spec.bandwidth = 2.0;
        std::ostringstream out;
        cli::run_verify(spec, out);
        return out.str();
    };
    auto grow = [] {
        std::istringstream config("tau = 0.1, 0.3\ndelta = 0.4\nbandwidth = 2\ntarget = 80\ntrials = 4\nseed = 7\n");
        std::ostringstream out;
        std::ostringstream err;
        cli::write_growth(sweep_growth(cli::parse_grow_config(config)), out, err);
        return out.str();
    };
    GrowthConfig c;
    c.noise.tau = 0.3;
    c.trials = 8;
    c.target = 200;
    const bool schedule = run_growth(c, Execution::Serial).attempts == run_growth(c, Execution::Parallel).attempts;
    const bool pass = sweep() == sweep() && verify() == verify() && grow() == grow() && schedule;
    report(9, pass, "sweep, verify and grow outputs byte-identical on rerun; serial and parallel growth agree",
           since(start));
}

} // namespace

int main() {
    ideal_gamma();
    error_formula();
    hom_relation();
    success_level();
    oracle_equivalence();
    narrowband();
    cluster_channel();
    growth_accounting();
    determinism();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
