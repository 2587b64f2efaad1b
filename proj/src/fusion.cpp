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

#include "fusionsim/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "fusionsim/error.hpp"

namespace fusionsim {

double ClickFactors::probability() const { return std::sqrt(accept_a * accept_b); }

double GammaResult::detect_both(Config config) const {
    switch (config) {
    case Config::HH:
        return click_c.accept_a * click_d.accept_b;
    case Config::VV:
        return click_c.accept_b * click_d.accept_a;
    case Config::HV:
        return click_c.accept_a * click_c.accept_b;
    case Config::VH:
        return click_d.accept_a * click_d.accept_b;
    }
    return 0.0;
}

double GammaResult::detect_none(Config config) const {
    switch (config) {
    case Config::HH:
        return (1.0 - click_c.accept_a) * (1.0 - click_d.accept_b);
    case Config::VV:
        return (1.0 - click_c.accept_b) * (1.0 - click_d.accept_a);
    case Config::HV:
        return (1.0 - click_c.accept_a) * (1.0 - click_c.accept_b);
    case Config::VH:
        return (1.0 - click_d.accept_a) * (1.0 - click_d.accept_b);
    }
    return 0.0;
}

GammaResult GammaResult::from_gamma(double gamma, double efficiency) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw InvalidParameter("gamma must lie in [0, 1]");
    }
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        throw InvalidParameter("detection efficiency must lie in (0, 1]");
    }
    const double accept = std::sqrt(efficiency);
    GammaResult result;
    result.gamma = gamma;
    result.p_error = error_probability(gamma);
    result.click_c = {gamma * accept, accept, accept};
    result.click_d = {accept, accept, accept};
    result.detection_efficiency = efficiency;
    return result;
}

GammaResult gamma(const WavePacket &a, const WavePacket &b, const DetectorModel &det_c,
                  const DetectorModel &det_d) {
    GammaResult result;
    result.click_c = {click_coherence(a, b, det_c), click_probability(a, det_c), click_probability(b, det_c)};
    result.click_d = {click_coherence(a, b, det_d), click_probability(a, det_d), click_probability(b, det_d)};

    const double efficiency = std::sqrt(result.detect_both(Config::HH) * result.detect_both(Config::VV));
    if (!(efficiency > 0.0)) {
        throw DegenerateDetector("zero detection efficiency: coherence parameter is undefined");
    }
    const Complex transfer = result.click_c.coherence * std::conj(result.click_d.coherence);
    result.detection_efficiency = efficiency;
    result.gamma = std::min(1.0, std::abs(transfer) / efficiency);
    result.phase = std::abs(transfer) > 0.0 ? std::arg(transfer) : 0.0;
    result.p_error = error_probability(result.gamma);
    return result;
}

double error_probability(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw InvalidParameter("gamma must lie in [0, 1]");
    }
    return (1.0 - gamma) / 2.0;
}

double gamma_from_visibility(double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw InvalidParameter("visibility must lie in [0, 1]");
    }
    return 2.0 * visibility / (1.0 + visibility);
}

double visibility_from_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw InvalidParameter("gamma must lie in [0, 1]");
    }
    return gamma / (2.0 - gamma);
}

ParityInput::ParityInput(const std::array<Complex, 4> &amplitudes,
                         const std::array<Eigen::VectorXcd, 4> &environment)
    : amplitudes_(amplitudes), environment_(environment) {
    double total = 0.0;
    for (const auto &alpha : amplitudes_) {
        total += std::norm(alpha);
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw InvalidParameter("parity input amplitudes must be normalized");
    }
    const Eigen::Index dim = environment_[0].size();
    if (dim < 1) {
        throw DimensionMismatch("environment dimension must be at least 1");
    }
    for (const auto &phi : environment_) {
        if (phi.size() != dim) {
            throw DimensionMismatch("environment vectors have different dimensions");
        }
        if (std::abs(phi.norm() - 1.0) > 1e-9) {
            throw InvalidParameter("environment vectors must have unit norm");
        }
    }
}

ParityInput ParityInput::plus_plus() {
    std::array<Eigen::VectorXcd, 4> env;
    for (int k = 0; k < 4; ++k) {
        env[k] = Eigen::VectorXcd::Unit(4, k);
    }
    return ParityInput({0.5, 0.5, 0.5, 0.5}, env);
}

std::array<Eigen::VectorXcd, 4> ParityInput::rotated(const Eigen::Matrix2cd &u) const {
    std::array<Eigen::VectorXcd, 4> out;
    for (int uv = 0; uv < 4; ++uv) {
        out[uv] = Eigen::VectorXcd::Zero(dimension());
        for (int xy = 0; xy < 4; ++xy) {
            const Complex factor = u(uv / 2, xy / 2) * u(uv % 2, xy % 2);
            if (factor != 0.0) {
                out[uv] += factor * branch(static_cast<Config>(xy));
            }
        }
    }
    return out;
}

Eigen::Matrix2cd variant_rotation(Variant variant) {
    if (variant == Variant::Plain) {
        return Eigen::Matrix2cd::Identity();
    }
    const double c = std::sqrt(0.5);
    Eigen::Matrix2cd r;
    r << c, -c, c, c;
    return r;
}

ParityGateResult apply_parity_gate(const ParityInput &input, const GammaResult &noise, Variant variant) {
    const auto chi = input.rotated(variant_rotation(variant));
    const auto &hh = chi[static_cast<int>(Config::HH)];
    const auto &hv = chi[static_cast<int>(Config::HV)];
    const auto &vh = chi[static_cast<int>(Config::VH)];
    const auto &vv = chi[static_cast<int>(Config::VV)];

    const double w_hh = noise.detect_both(Config::HH);
    const double w_vv = noise.detect_both(Config::VV);
    const Complex rephase = std::polar(1.0, -noise.phase);

    const Eigen::VectorXcd ideal = std::sqrt(w_hh) * hh + rephase * std::sqrt(w_vv) * vv;
    const Eigen::VectorXcd flipped = std::sqrt(w_hh) * hh - rephase * std::sqrt(w_vv) * vv;

    ParityGateResult out;
    out.success = (1.0 - noise.p_error) * ideal * ideal.adjoint() + noise.p_error * flipped * flipped.adjoint();
    out.p_success = w_hh * hh.squaredNorm() + w_vv * vv.squaredNorm();

    const double w_c = noise.detect_both(Config::HV);
    const double w_d = noise.detect_both(Config::VH);
    out.failure_c = w_c * hv * hv.adjoint();
    out.failure_d = w_d * vh * vh.adjoint();
    out.p_failure_c = w_c * hv.squaredNorm();
    out.p_failure_d = w_d * vh.squaredNorm();

    double loss = 0.0;
    for (int k = 0; k < 4; ++k) {
        loss += chi[k].squaredNorm() * (1.0 - noise.detect_both(static_cast<Config>(k)));
    }
    out.p_loss = loss;
    return out;
}

FusionOutcome sample_outcome(const ParityInput &input, const GammaResult &noise, Variant variant, Rng &rng) {
    const auto chi = input.rotated(variant_rotation(variant));
    const Basis basis = variant == Variant::Plain ? Basis::Z : Basis::X;

    double weight[4];
    double none = 0.0;
    for (int k = 0; k < 4; ++k) {
        weight[k] = chi[k].squaredNorm();
        none += weight[k] * noise.detect_none(static_cast<Config>(k));
    }
    const double p_success = weight[0] * noise.detect_both(Config::HH) + weight[3] * noise.detect_both(Config::VV);
    const double p_fail_c = weight[1] * noise.detect_both(Config::HV);
    const double p_fail_d = weight[2] * noise.detect_both(Config::VH);

    const double u = rng.uniform();
    const bool error = rng.bernoulli(noise.p_error);

    if (u < p_success) {
        return {SuccessDetail{error}};
    }
    if (u < p_success + p_fail_c) {
        return {FailureDetail{Port::C, basis}};
    }
    if (u < p_success + p_fail_c + p_fail_d) {
        return {FailureDetail{Port::D, basis}};
    }
    if (u < p_success + p_fail_c + p_fail_d + none) {
        return {LossDetail{0}};
    }
    return {LossDetail{1}};
}

FusionOutcome sample_outcome(const ParityInput &input, const GammaResult &noise, Variant variant,
                             std::uint64_t seed) {
    Rng rng(seed);
    return sample_outcome(input, noise, variant, rng);
}

} // namespace fusionsim
