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

#include <doctest.h>

#include <cmath>

#include "fusionsim/error.hpp"
#include "fusionsim/oracle.hpp"
#include "support.hpp"

using namespace fusionsim;
using namespace fusionsim::oracle;
using fusionsim::testing::projector;

namespace {

const WavePacket kA = gaussian_packet(0.0, 1.0, 0.0);

ParityInput basis_input(Config c) {
    std::array<Complex, 4> amp{0.0, 0.0, 0.0, 0.0};
    amp[static_cast<int>(c)] = 1.0;
    const Eigen::VectorXcd e = Eigen::VectorXcd::Ones(1);
    return ParityInput(amp, {e, e, e, e});
}

TwoPhotonState output_state(const ParityInput &input, double tau, int bins = 64) {
    const auto b = gaussian_packet(0.0, 1.0, tau);
    return apply_pbs(build_input(input, kA, b, oracle_grid(kA, b, bins), Prerotation::identity()));
}

} // namespace

TEST_CASE("beamsplitter routes each configuration") {
    constexpr int c = 0;
    constexpr int d = 1;
    CHECK(output_state(basis_input(Config::HH), 0.4).slot_probability(c, d) == doctest::Approx(1.0));
    CHECK(output_state(basis_input(Config::VV), 0.4).slot_probability(d, c) == doctest::Approx(1.0));
    CHECK(output_state(basis_input(Config::HV), 0.4).slot_probability(c, c) == doctest::Approx(1.0));
    CHECK(output_state(basis_input(Config::VH), 0.4).slot_probability(d, d) == doctest::Approx(1.0));
}

TEST_CASE("built states are normalized with the packets' spectra") {
    Rng rng(1);
    const auto input = testing::random_input(rng, 3);
    const auto b = gaussian_packet(0.0, 1.0, 1.0);
    const auto grid = oracle_grid(kA, b, 64);
    const auto state = build_input(input, kA, b, grid, Prerotation::for_variant(Variant::Rotated45));
    CHECK(state.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    const auto m1 = state.marginal(1);
    const auto m2 = state.marginal(2);
    double err = 0.0;
    for (int i = 0; i < grid.bins(); ++i) {
        err += std::abs(m1[i] - kA.density(grid.center(i)) * grid.width());
        err += std::abs(m2[i] - b.density(grid.center(i)) * grid.width());
    }
    CHECK(err < 1e-6);
    const auto out = apply_pbs(state);
    CHECK(out.norm_squared() == doctest::Approx(state.norm_squared()).epsilon(1e-12));
    CHECK(out.stage() == Stage::Output);
    CHECK_THROWS_AS(apply_pbs(out), InvalidParameter);
}

TEST_CASE("grid and capacity checks") {
    const auto input = ParityInput::plus_plus();
    CHECK_THROWS_AS(build_input(input, kA, kA, FrequencyGrid(-2.0, 2.0, 64), Prerotation::identity()), GridCoverage);
    CHECK_THROWS_AS(build_input(input, kA, kA, FrequencyGrid(-8.0, 8.0, 300), Prerotation::identity()),
                    CapacityExceeded);
    CHECK_THROWS_AS(oracle_grid(kA, kA, 1000), CapacityExceeded);
    const Eigen::VectorXcd big = Eigen::VectorXcd::Unit(17, 0);
    const ParityInput wide({0.5, 0.5, 0.5, 0.5}, {big, big, big, big});
    CHECK_THROWS_AS(build_input(wide, kA, kA, oracle_grid(kA, kA, 16), Prerotation::identity()), CapacityExceeded);
    Prerotation skew;
    skew.photon_a(0, 1) = 0.5;
    CHECK_THROWS_AS(build_input(input, kA, kA, oracle_grid(kA, kA, 16), skew), InvalidParameter);
}

TEST_CASE("mode-matched plus-plus input: pure success with probability one half") {
    const auto r = simulate(ParityInput::plus_plus(), kA, kA, DetectorModel::ideal(), DetectorModel::ideal(),
                            oracle_grid(kA, kA, 32), Variant::Plain);
    CHECK(r.success.probability == doctest::Approx(0.5).epsilon(1e-12));
    const Eigen::MatrixXcd rho = normalized(r.success.op);
    CHECK((rho * rho).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.loss.probability == doctest::Approx(0.0));
}

TEST_CASE("success coherence at unit delay is exp(-1)") {
    const auto b = gaussian_packet(0.0, 1.0, 1.0);
    const auto r = simulate(ParityInput::plus_plus(), kA, b, DetectorModel::ideal(), DetectorModel::ideal(),
                            oracle_grid(kA, b, 64), Variant::Plain);
    CHECK(std::abs(coherence_ratio(r.success.op, 0, 3) - std::exp(-1.0)) < 1e-3);
}

TEST_CASE("coherence estimate converges at second order under refinement") {
    auto estimate = [](double tau, const DetectorModel &det, int bins) {
        const auto b = gaussian_packet(0.0, 1.0, tau);
        const auto r = simulate(ParityInput::plus_plus(), kA, b, det, det, oracle_grid(kA, b, bins), Variant::Plain);
        return coherence_ratio(r.success.op, 0, 3);
    };
    for (double tau : {0.5, 1.0}) {
        for (double delta : {0.5, 1.0, 2.0}) {
            for (double band : {1.5, 3.0}) {
                const auto det = DetectorModel::finite(delta, band);
                const double exact = gamma(kA, gaussian_packet(0.0, 1.0, tau), det, det).gamma;
                const double coarse = std::abs(estimate(tau, det, 64) - exact);
                const double fine = std::abs(estimate(tau, det, 128) - exact);
                CAPTURE(tau);
                CAPTURE(delta);
                CAPTURE(band);
                CHECK(fine < coarse / 3.0);
                CHECK(coarse < 1e-3);
            }
        }
    }
    const auto det = DetectorModel::finite(0.5, 3.0);
    CHECK(std::abs(estimate(0.5, det, 64) - estimate(0.5, det, 128)) < 1e-4);
}

TEST_CASE("branch probabilities are complete") {
    Rng rng(6);
    for (int k = 0; k < 5; ++k) {
        const auto input = testing::random_input(rng, 2);
        const auto b = gaussian_packet(0.0, 1.0, testing::uniform(rng, 0, 2));
        const auto det = DetectorModel::finite(testing::uniform(rng, 0.05, 1), testing::uniform(rng, 0.2, 3));
        for (auto variant : {Variant::Plain, Variant::Rotated45}) {
            const auto r = simulate(input, kA, b, det, det, oracle_grid(kA, b, 32), variant);
            CHECK(r.total_probability() == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(r.failure_c.op.trace().real() == doctest::Approx(r.failure_c.probability).epsilon(1e-12));
        }
    }
}

TEST_CASE("serial and parallel detection are bit-identical") {
    Rng rng(10);
    const auto input = testing::random_input(rng, 3);
    const auto b = gaussian_packet(0.0, 1.0, 0.8);
    const auto det = DetectorModel::finite(0.3, 1.8);
    const auto state = apply_pbs(build_input(input, kA, b, oracle_grid(kA, b, 48), Prerotation::identity()));
    const auto serial = apply_detection(state, det, det, Execution::Serial);
    const auto parallel = apply_detection(state, det, det, Execution::Parallel);
    const auto s = serial.branches();
    const auto p = parallel.branches();
    for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(s[k].probability == p[k].probability);
        CHECK(s[k].op == p[k].op);
    }
}

TEST_CASE("dense simulation matches the analytic model") {
    Rng rng(2024);
    for (int k = 0; k < 6; ++k) {
        const double tau = testing::uniform(rng, 0.0, 1.5);
        const auto det = DetectorModel::finite(testing::uniform(rng, 0.5, 2.0), testing::uniform(rng, 1.5, 4.0));
        const auto input = testing::random_input(rng, 4);
        const auto b = gaussian_packet(0.0, 1.0, tau);
        for (auto variant : {Variant::Plain, Variant::Rotated45}) {
            const auto cmp = compare_with_model(input, kA, b, det, det, oracle_grid(kA, b, 64), variant);
            CAPTURE(tau);
            CHECK(cmp.success_distance < 1e-3);
            CHECK(cmp.failure_c_distance < 1e-9);
            CHECK(cmp.failure_d_distance < 1e-9);
            CHECK(cmp.completeness_error < 1e-9);
        }
    }
}

TEST_CASE("ideal limits agree with the model to rounding") {
    Rng rng(77);
    const auto input = testing::random_input(rng, 4);
    const auto b = gaussian_packet(0.0, 1.0, 1.3);
    for (auto variant : {Variant::Plain, Variant::Rotated45}) {
        const auto cmp = compare_with_model(input, kA, b, DetectorModel::ideal(), DetectorModel::time_integrated(),
                                            oracle_grid(kA, b, 64), variant);
        CHECK(cmp.max_distance() < 1e-9);
        CHECK(cmp.loss_probability_error < 1e-6);
        CHECK(cmp.success_probability_error < 1e-9);
    }
}

TEST_CASE("narrow detector windows converge under refinement") {
    Rng rng(5);
    const auto input = testing::random_input(rng, 2);
    const auto b = gaussian_packet(0.0, 1.0, 1.0);
    const auto det = DetectorModel::finite(0.2, 1.0);
    const auto coarse = compare_with_model(input, kA, b, det, det, oracle_grid(kA, b, 64), Variant::Plain);
    const auto fine = compare_with_model(input, kA, b, det, det, oracle_grid(kA, b, 256), Variant::Plain);
    CHECK(fine.success_distance < coarse.success_distance);
    CHECK(fine.success_distance < 1e-3);
    CHECK(fine.loss_probability_error < coarse.loss_probability_error);
}

TEST_CASE("failure branches are Z and X measurements independent of delay") {
    Rng rng(3);
    const auto input = testing::random_input(rng, 3);
    const auto det = DetectorModel::finite(0.6, 2.5);
    const auto grid = oracle_grid(kA, kA, 48);
    const auto ref_plain = simulate(input, kA, kA, det, det, grid, Variant::Plain);
    const auto ref_rot = simulate(input, kA, kA, det, det, grid, Variant::Rotated45);
    CHECK(branch_distance(ref_plain.failure_c.op, projector(input.environment(Config::HV))) < 1e-9);
    CHECK(branch_distance(ref_plain.failure_d.op, projector(input.environment(Config::VH))) < 1e-9);
    for (double tau : {0.5, 1.0, 1.5}) {
        const auto b = gaussian_packet(0.0, 1.0, tau);
        // same grid so only the delay changes
        const auto plain = simulate(input, kA, b, det, det, grid, Variant::Plain);
        const auto rot = simulate(input, kA, b, det, det, grid, Variant::Rotated45);
        CHECK(branch_distance(plain.failure_c.op, ref_plain.failure_c.op) < 1e-9);
        CHECK(branch_distance(plain.failure_d.op, ref_plain.failure_d.op) < 1e-9);
        CHECK(branch_distance(rot.failure_c.op, ref_rot.failure_c.op) < 1e-9);
        CHECK(branch_distance(rot.failure_d.op, ref_rot.failure_d.op) < 1e-9);
    }
}

TEST_CASE("trace distance") {
    const Eigen::VectorXcd u = Eigen::VectorXcd::Unit(3, 0);
    const Eigen::VectorXcd v = Eigen::VectorXcd::Unit(3, 1);
    CHECK(trace_distance(projector(u), projector(u)) == doctest::Approx(0.0));
    CHECK(trace_distance(projector(u), projector(v)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(trace_distance(projector(u), Eigen::MatrixXcd::Identity(2, 2)), DimensionMismatch);
    CHECK(branch_distance(Eigen::MatrixXcd::Zero(3, 3), Eigen::MatrixXcd::Zero(3, 3)) == 0.0);
    CHECK(branch_distance(Eigen::MatrixXcd::Zero(3, 3), projector(u)) == 1.0);
    const Mixture left{{0.5, u}, {0.5, v}};
    const Mixture right{{1.0, (u + v) / std::sqrt(2.0)}};
    const Eigen::MatrixXcd dense_left = 0.5 * projector(u) + 0.5 * projector(v);
    CHECK(trace_distance(left, right) == doctest::Approx(trace_distance(dense_left, projector((u + v) / std::sqrt(2.0)))));
}
