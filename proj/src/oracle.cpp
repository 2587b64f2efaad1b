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

#include "fusionsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fusionsim/error.hpp"

namespace fusionsim::oracle {

namespace {

constexpr int kH = 0;
constexpr int kV = 1;
constexpr int kSlotC = 0;

int mode(int slot, int pol) { return slot * 2 + pol; }

// Readout amplitudes <s|p> for s in {D, A}.
constexpr double kRoot = std::numbers::sqrt2 / 2.0;
constexpr double kReadout[2][2] = {{kRoot, kRoot}, {kRoot, -kRoot}};

double readout_sign(int s) { return s == 0 ? 1.0 : -1.0; }

struct RowPartial {
    Eigen::MatrixXcd success, failure_c, failure_d, loss;
    double p_success = 0.0, p_failure_c = 0.0, p_failure_d = 0.0, p_loss = 0.0;

    explicit RowPartial(Eigen::Index d)
        : success(Eigen::MatrixXcd::Zero(d, d)), failure_c(Eigen::MatrixXcd::Zero(d, d)),
          failure_d(Eigen::MatrixXcd::Zero(d, d)), loss(Eigen::MatrixXcd::Zero(d, d)) {}

    void add(const RowPartial &o) {
        success += o.success;
        failure_c += o.failure_c;
        failure_d += o.failure_d;
        loss += o.loss;
        p_success += o.p_success;
        p_failure_c += o.p_failure_c;
        p_failure_d += o.p_failure_d;
        p_loss += o.p_loss;
    }
};

// Accumulates every ordered record pair whose first photon sits in bin i.
// Unordered records are counted through the 1/2 sum over ordered pairs of
// |Psi(x, y) + Psi(y, x)|^2.
RowPartial detect_row(const TwoPhotonState &psi, int i, const std::vector<double> (&accept)[2]) {
    const int m = psi.grid().bins();
    const Eigen::Index d = psi.env_dim();
    RowPartial row(d);
    Eigen::VectorXcd raw(d), fixed(d);

    for (int slot1 = 0; slot1 < 2; ++slot1) {
        for (int slot2 = 0; slot2 < 2; ++slot2) {
            const bool split = slot1 != slot2;
            for (int j = 0; j < m; ++j) {
                const double clicks = accept[slot1][i] * accept[slot2][j];
                for (int s1 = 0; s1 < 2; ++s1) {
                    for (int s2 = 0; s2 < 2; ++s2) {
                        const double sigma = readout_sign(s1) * readout_sign(s2);
                        raw.setZero();
                        fixed.setZero();
                        for (int p1 = 0; p1 < 2; ++p1) {
                            for (int p2 = 0; p2 < 2; ++p2) {
                                const double r = kReadout[s1][p1] * kReadout[s2][p2];
                                // polarization of whichever photon sits in port c
                                const int pc = slot1 == kSlotC ? p1 : p2;
                                const double fix = (split && pc == kV) ? sigma : 1.0;
                                for (Eigen::Index e = 0; e < d; ++e) {
                                    const Complex amp = psi.at(mode(slot1, p1), mode(slot2, p2), i, j, e) +
                                                        psi.at(mode(slot2, p2), mode(slot1, p1), j, i, e);
                                    raw[e] += r * amp;
                                    fixed[e] += r * fix * amp;
                                }
                            }
                        }
                        const double norm = raw.squaredNorm();
                        if (norm == 0.0 && fixed.squaredNorm() == 0.0) {
                            continue;
                        }
                        const double detected = 0.5 * clicks;
                        const double missed = 0.5 * (1.0 - clicks);
                        if (split) {
                            row.p_success += detected * norm;
                            row.success.noalias() += detected * fixed * fixed.adjoint();
                        } else if (slot1 == kSlotC) {
                            row.p_failure_c += detected * norm;
                            row.failure_c.noalias() += detected * raw * raw.adjoint();
                        } else {
                            row.p_failure_d += detected * norm;
                            row.failure_d.noalias() += detected * raw * raw.adjoint();
                        }
                        row.p_loss += missed * norm;
                        row.loss.noalias() += missed * raw * raw.adjoint();
                    }
                }
            }
        }
    }
    return row;
}

DetectionResult finish(RowPartial total) {
    DetectionResult out;
    out.success = {Branch::Success, std::move(total.success), total.p_success};
    out.failure_c = {Branch::Failure, std::move(total.failure_c), total.p_failure_c};
    out.failure_d = {Branch::Failure, std::move(total.failure_d), total.p_failure_d};
    out.loss = {Branch::Loss, std::move(total.loss), total.p_loss};
    return out;
}

} // namespace

Prerotation Prerotation::for_variant(Variant variant) {
    const Eigen::Matrix2cd r = variant_rotation(variant);
    return {r, r};
}

Prerotation Prerotation::hadamard_on_a() {
    Prerotation p;
    p.photon_a << kRoot, kRoot, kRoot, -kRoot;
    return p;
}

TwoPhotonState::TwoPhotonState(const FrequencyGrid &grid, Eigen::Index env_dim, Stage stage)
    : grid_(grid), env_dim_(env_dim), stage_(stage) {
    if (grid.bins() > kMaxBins) {
        throw CapacityExceeded("oracle grid is capped at " + std::to_string(kMaxBins) + " bins");
    }
    if (env_dim < 1 || env_dim > kMaxEnvDim) {
        throw CapacityExceeded("oracle environment dimension must lie in [1, " + std::to_string(kMaxEnvDim) + "]");
    }
    const auto m = static_cast<std::size_t>(grid.bins());
    data_.assign(kModes * kModes * m * m * static_cast<std::size_t>(env_dim), Complex(0.0));
}

double TwoPhotonState::norm_squared() const {
    double total = 0.0;
    for (const auto &z : data_) {
        total += std::norm(z);
    }
    return total;
}

std::vector<double> TwoPhotonState::marginal(int photon) const {
    const int m = grid_.bins();
    std::vector<double> out(m, 0.0);
    for (int m1 = 0; m1 < kModes; ++m1) {
        for (int m2 = 0; m2 < kModes; ++m2) {
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    for (Eigen::Index e = 0; e < env_dim_; ++e) {
                        out[photon == 1 ? i : j] += std::norm(at(m1, m2, i, j, e));
                    }
                }
            }
        }
    }
    return out;
}

double TwoPhotonState::slot_probability(int slot_1, int slot_2) const {
    const int m = grid_.bins();
    double total = 0.0;
    for (int p1 = 0; p1 < 2; ++p1) {
        for (int p2 = 0; p2 < 2; ++p2) {
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    for (Eigen::Index e = 0; e < env_dim_; ++e) {
                        total += std::norm(at(mode(slot_1, p1), mode(slot_2, p2), i, j, e));
                    }
                }
            }
        }
    }
    return total;
}

TwoPhotonState build_input(const ParityInput &input, const WavePacket &a, const WavePacket &b,
                           const FrequencyGrid &grid, const Prerotation &prerotation) {
    for (const Eigen::Matrix2cd *u : {&prerotation.photon_a, &prerotation.photon_b}) {
        if (!(*u * u->adjoint()).isApprox(Eigen::Matrix2cd::Identity(), 1e-12)) {
            throw InvalidParameter("prerotation must be unitary");
        }
    }
    const int m = grid.bins();
    const double h = grid.width();
    std::vector<Complex> spec_a(m), spec_b(m);
    double mass_a = 0.0, mass_b = 0.0;
    for (int i = 0; i < m; ++i) {
        const double w = grid.center(i);
        spec_a[i] = a.amplitude(w) * std::sqrt(h);
        spec_b[i] = b.amplitude(w) * std::sqrt(h);
        mass_a += std::norm(spec_a[i]);
        mass_b += std::norm(spec_b[i]);
    }
    if (1.0 - mass_a > 1e-6 || 1.0 - mass_b > 1e-6) {
        throw GridCoverage("frequency grid misses more than 1e-6 of a packet's probability mass");
    }

    const Eigen::Index d = input.dimension();
    TwoPhotonState state(grid, d, Stage::Input);
    // environment vector for each input polarization pair (p1, p2)
    std::array<Eigen::VectorXcd, 4> env;
    for (int p1 = 0; p1 < 2; ++p1) {
        for (int p2 = 0; p2 < 2; ++p2) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    v += prerotation.photon_a(p1, x) * prerotation.photon_b(p2, y) *
                         input.branch(static_cast<Config>(x * 2 + y));
                }
            }
            env[p1 * 2 + p2] = std::move(v);
        }
    }
    // photon 1 lives in slot 0 (port a), photon 2 in slot 1 (port b)
    for (int p1 = 0; p1 < 2; ++p1) {
        for (int p2 = 0; p2 < 2; ++p2) {
            const auto &v = env[p1 * 2 + p2];
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    const Complex s = spec_a[i] * spec_b[j];
                    for (Eigen::Index e = 0; e < d; ++e) {
                        state.at(mode(0, p1), mode(1, p2), i, j, e) = s * v[e];
                    }
                }
            }
        }
    }
    const double scale = 1.0 / std::sqrt(state.norm_squared());
    for (auto &z : state.data_) {
        z *= scale;
    }
    return state;
}

TwoPhotonState apply_pbs(const TwoPhotonState &state) {
    if (state.stage() != Stage::Input) {
        throw InvalidParameter("the beamsplitter acts on input-stage states only");
    }
    // columns: a_H, a_V, b_H, b_V; rows: c_H, c_V, d_H, d_V
    Eigen::Matrix4d u = Eigen::Matrix4d::Zero();
    u(mode(0, kH), mode(0, kH)) = 1.0;
    u(mode(1, kV), mode(0, kV)) = 1.0;
    u(mode(1, kH), mode(1, kH)) = 1.0;
    u(mode(0, kV), mode(1, kV)) = 1.0;

    const int m = state.grid().bins();
    const Eigen::Index d = state.env_dim();
    const std::size_t block = static_cast<std::size_t>(m) * m * d;
    TwoPhotonState out(state.grid(), d, Stage::Output);
    for (int o1 = 0; o1 < TwoPhotonState::kModes; ++o1) {
        for (int o2 = 0; o2 < TwoPhotonState::kModes; ++o2) {
            Complex *dst = &out.data_[(static_cast<std::size_t>(o1) * TwoPhotonState::kModes + o2) * block];
            for (int n1 = 0; n1 < TwoPhotonState::kModes; ++n1) {
                for (int n2 = 0; n2 < TwoPhotonState::kModes; ++n2) {
                    const double c = u(o1, n1) * u(o2, n2);
                    if (c == 0.0) {
                        continue;
                    }
                    const Complex *src =
                        &state.data_[(static_cast<std::size_t>(n1) * TwoPhotonState::kModes + n2) * block];
                    for (std::size_t k = 0; k < block; ++k) {
                        dst[k] += c * src[k];
                    }
                }
            }
        }
    }
    return out;
}

std::vector<double> bin_acceptance(const FrequencyGrid &grid, const DetectorModel &det) {
    const int m = grid.bins();
    if (det.is_limit()) {
        return std::vector<double>(m, 1.0);
    }
    const double delta = det.resolution();
    const double band = det.bandwidth();
    const double h = grid.width();
    std::vector<double> out(m, 0.0);
    for (int i = 0; i < m; ++i) {
        const double l = grid.center(i) - 0.5 * h;
        const double r = grid.center(i) + 0.5 * h;
        // overlap of the window centered at w0 with the cell, piecewise linear in w0
        auto overlap = [&](double w0) { return std::max(0.0, std::min(r, w0 + delta) - std::max(l, w0 - delta)); };
        std::vector<double> knots{-band, band};
        for (double k : {l - delta, l + delta, r - delta, r + delta}) {
            if (k > -band && k < band) {
                knots.push_back(k);
            }
        }
        std::sort(knots.begin(), knots.end());
        double area = 0.0;
        for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
            area += 0.5 * (overlap(knots[k]) + overlap(knots[k + 1])) * (knots[k + 1] - knots[k]);
        }
        out[i] = area / (2.0 * delta * h);
    }
    return out;
}

DetectionResult apply_detection(const TwoPhotonState &state, const DetectorModel &det_c, const DetectorModel &det_d,
                                Execution execution) {
    if (state.stage() != Stage::Output) {
        throw InvalidParameter("detection acts on output-stage states only");
    }
    const int m = state.grid().bins();
    const Eigen::Index d = state.env_dim();
    const std::vector<double> accept[2] = {bin_acceptance(state.grid(), det_c), bin_acceptance(state.grid(), det_d)};

    std::vector<RowPartial> rows(m, RowPartial(d));
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < m; ++i) {
            rows[i] = detect_row(state, i, accept);
        }
    } else {
        for (int i = 0; i < m; ++i) {
            rows[i] = detect_row(state, i, accept);
        }
    }
    RowPartial total(d);
    for (const auto &row : rows) {
        total.add(row);
    }
    return finish(std::move(total));
}

double coherence_ratio(const Eigen::MatrixXcd &rho, Eigen::Index i, Eigen::Index j) {
    const double diag = std::sqrt(rho(i, i).real() * rho(j, j).real());
    return diag > 0.0 ? std::abs(rho(i, j)) / diag : 0.0;
}

double branch_distance(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &sigma) {
    constexpr double kEmpty = 1e-14;
    const bool rho_empty = rho.trace().real() < kEmpty;
    const bool sigma_empty = sigma.trace().real() < kEmpty;
    if (rho_empty && sigma_empty) {
        return 0.0;
    }
    if (rho_empty || sigma_empty) {
        return 1.0;
    }
    return trace_distance(normalized(rho), normalized(sigma));
}

DetectionResult simulate(const ParityInput &input, const WavePacket &a, const WavePacket &b,
                         const DetectorModel &det_c, const DetectorModel &det_d, const FrequencyGrid &grid,
                         Variant variant, Execution execution) {
    const auto in = build_input(input, a, b, grid, Prerotation::for_variant(variant));
    return apply_detection(apply_pbs(in), det_c, det_d, execution);
}

double ModelComparison::max_distance() const {
    return std::max({success_distance, failure_c_distance, failure_d_distance});
}

ModelComparison compare_with_model(const ParityInput &input, const WavePacket &a, const WavePacket &b,
                                   const DetectorModel &det_c, const DetectorModel &det_d, const FrequencyGrid &grid,
                                   Variant variant) {
    const auto dense = simulate(input, a, b, det_c, det_d, grid, variant);
    const auto model = apply_parity_gate(input, gamma(a, b, det_c, det_d), variant);

    ModelComparison out;
    out.success_distance = branch_distance(dense.success.op, model.success);
    out.failure_c_distance = branch_distance(dense.failure_c.op, model.failure_c);
    out.failure_d_distance = branch_distance(dense.failure_d.op, model.failure_d);
    out.success_probability_error = std::abs(dense.success.probability - model.p_success);
    out.failure_probability_error =
        std::abs(dense.failure_c.probability + dense.failure_d.probability - model.p_failure());
    out.loss_probability_error = std::abs(dense.loss.probability - model.p_loss);
    out.completeness_error = std::abs(dense.total_probability() - 1.0);
    return out;
}

FrequencyGrid oracle_grid(const WavePacket &a, const WavePacket &b, int bins) {
    if (bins > kMaxBins) {
        throw CapacityExceeded("oracle grid is capped at " + std::to_string(kMaxBins) + " bins");
    }
    return default_grid(a, b, bins);
}

} // namespace fusionsim::oracle
