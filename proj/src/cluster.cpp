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

#include "fusionsim/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <string>

#include "fusionsim/error.hpp"
#include "fusionsim/linalg.hpp"

namespace fusionsim {

ClusterGraph ClusterGraph::linear(int length, int redundancy) {
    if (length < 1 || redundancy < 1) {
        throw InvalidParameter("linear cluster needs length >= 1 and redundancy >= 1");
    }
    ClusterGraph g;
    for (int k = 0; k < length; ++k) {
        g.add_node(redundancy);
        if (k > 0) {
            g.connect(k - 1, k, false, false);
        }
    }
    return g;
}

ClusterGraph ClusterGraph::star(int arms, int redundancy) {
    if (arms < 1 || redundancy < 1) {
        throw InvalidParameter("star cluster needs arms >= 1 and redundancy >= 1");
    }
    ClusterGraph g;
    const NodeId hub = g.add_node(redundancy);
    for (int k = 0; k < arms; ++k) {
        g.connect(hub, g.add_node(redundancy), false, false);
    }
    return g;
}

ClusterGraph new_cluster(Shape shape, int size, int redundancy) {
    return shape == Shape::Linear ? ClusterGraph::linear(size, redundancy) : ClusterGraph::star(size, redundancy);
}

NodeId ClusterGraph::add_node(int redundancy) {
    const NodeId id = nodes_.size();
    nodes_.push_back({id, redundancy, false});
    adjacency_.emplace_back();
    alive_.push_back(true);
    ++live_;
    return id;
}

void ClusterGraph::connect(NodeId a, NodeId b, bool fused, bool error) {
    adjacency_[a].push_back({b, fused, error});
    adjacency_[b].push_back({a, fused, error});
}

void ClusterGraph::require_alive(NodeId id) const {
    if (!alive(id)) {
        throw InvalidParameter("node " + std::to_string(id) + " is not a live cluster node");
    }
}

const LogicalNode &ClusterGraph::node(NodeId id) const {
    require_alive(id);
    return nodes_[id];
}

const std::vector<Bond> &ClusterGraph::bonds(NodeId id) const {
    require_alive(id);
    return adjacency_[id];
}

std::vector<NodeId> ClusterGraph::neighbors(NodeId id) const {
    std::vector<NodeId> out;
    for (const auto &bond : bonds(id)) {
        out.push_back(bond.to);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeId> ClusterGraph::live_nodes() const {
    std::vector<NodeId> out;
    out.reserve(live_);
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        if (alive_[id]) {
            out.push_back(id);
        }
    }
    return out;
}

bool ClusterGraph::adjacent(NodeId a, NodeId b) const {
    const auto &list = bonds(a);
    return std::any_of(list.begin(), list.end(), [b](const Bond &bond) { return bond.to == b; });
}

std::size_t ClusterGraph::edge_count() const {
    std::size_t twice = 0;
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        if (alive_[id]) {
            twice += adjacency_[id].size();
        }
    }
    return twice / 2;
}

std::size_t ClusterGraph::physical_qubits() const {
    std::size_t total = 0;
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        if (alive_[id]) {
            total += static_cast<std::size_t>(nodes_[id].redundancy);
        }
    }
    return total;
}

std::size_t ClusterGraph::components() const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<NodeId> stack;
    std::size_t count = 0;
    for (NodeId start = 0; start < nodes_.size(); ++start) {
        if (!alive_[start] || seen[start]) {
            continue;
        }
        ++count;
        seen[start] = true;
        stack.push_back(start);
        while (!stack.empty()) {
            const NodeId id = stack.back();
            stack.pop_back();
            for (const auto &bond : adjacency_[id]) {
                if (!seen[bond.to]) {
                    seen[bond.to] = true;
                    stack.push_back(bond.to);
                }
            }
        }
    }
    return count;
}

std::size_t ClusterGraph::fused_bonds() const {
    std::size_t twice = 0;
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        if (alive_[id]) {
            twice += std::count_if(adjacency_[id].begin(), adjacency_[id].end(), [](const Bond &b) { return b.fused; });
        }
    }
    return twice / 2;
}

std::size_t ClusterGraph::error_bonds() const {
    std::size_t twice = 0;
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        if (alive_[id]) {
            twice += std::count_if(adjacency_[id].begin(), adjacency_[id].end(), [](const Bond &b) { return b.error; });
        }
    }
    return twice / 2;
}

NodeId ClusterGraph::absorb(const ClusterGraph &other) {
    const NodeId offset = nodes_.size();
    for (NodeId id = 0; id < other.nodes_.size(); ++id) {
        LogicalNode copy = other.nodes_[id];
        copy.id += offset;
        nodes_.push_back(copy);
        alive_.push_back(other.alive_[id]);
        auto list = other.adjacency_[id];
        for (auto &bond : list) {
            bond.to += offset;
        }
        adjacency_.push_back(std::move(list));
    }
    live_ += other.live_;
    return offset;
}

void ClusterGraph::discard(NodeId id) {
    require_alive(id);
    for (const auto &bond : adjacency_[id]) {
        auto &back = adjacency_[bond.to];
        back.erase(std::remove_if(back.begin(), back.end(), [id](const Bond &b) { return b.to == id; }), back.end());
    }
    adjacency_[id].clear();
    adjacency_[id].shrink_to_fit();
    alive_[id] = false;
    --live_;
}

void ClusterGraph::measure_z(NodeId id, int outcome) {
    require_alive(id);
    if (outcome != 0) {
        for (const auto &bond : adjacency_[id]) {
            nodes_[bond.to].z_frame = !nodes_[bond.to].z_frame;
        }
    }
    events_.push_back({EventKind::Measurement, id, id, Branch::Failure, false, outcome});
    discard(id);
}

void ClusterGraph::write_snapshot(std::ostream &out) const {
    for (NodeId id : live_nodes()) {
        out << id << ' ' << nodes_[id].redundancy << ' ' << (nodes_[id].z_frame ? 1 : 0);
        for (NodeId n : neighbors(id)) {
            out << ' ' << n;
        }
        out << '\n';
    }
}

ClusterOutcome sample_cluster_outcome(const GammaResult &noise, Rng &rng) {
    const double p_success = 0.5 * noise.detection_efficiency;
    const double p_failure = 0.5 * std::sqrt(noise.detect_both(Config::HV) * noise.detect_both(Config::VH));
    const double u = rng.uniform();
    const bool error = rng.bernoulli(noise.p_error);
    const std::uint64_t z_seed = rng.bits();

    ClusterOutcome out;
    out.z_seed = z_seed;
    if (u < p_success) {
        out.branch = Branch::Success;
        out.error = error;
    } else if (u < p_success + p_failure) {
        out.branch = Branch::Failure;
    } else {
        out.branch = Branch::Loss;
    }
    return out;
}

struct FusionEngine {
    static void run(ClusterGraph &g, NodeId a, NodeId b, const ClusterOutcome &outcome) {
        g.require_alive(a);
        g.require_alive(b);
        if (a == b) {
            throw InvalidParameter("cannot fuse a node with itself");
        }
        if (g.nodes_[a].redundancy < 2 || g.nodes_[b].redundancy < 2) {
            throw EncodingExhausted("fusion needs a spare physical qubit on both nodes");
        }
        g.events_.push_back({EventKind::Fusion, a, b, outcome.branch, outcome.error, 0});

        switch (outcome.branch) {
        case Branch::Success:
            g.connect(a, b, true, outcome.error);
            --g.nodes_[a].redundancy;
            --g.nodes_[b].redundancy;
            if (outcome.error) {
                g.nodes_[a].z_frame = !g.nodes_[a].z_frame;
            }
            break;
        case Branch::Failure:
            g.measure_z(a, outcome.z_outcome(0));
            g.measure_z(b, outcome.z_outcome(1));
            break;
        case Branch::Loss: {
            std::vector<NodeId> around;
            for (NodeId id : {a, b}) {
                for (const auto &bond : g.adjacency_[id]) {
                    if (bond.to != a && bond.to != b) {
                        around.push_back(bond.to);
                    }
                }
            }
            std::sort(around.begin(), around.end());
            around.erase(std::unique(around.begin(), around.end()), around.end());
            g.discard(a);
            g.discard(b);
            std::size_t k = 0;
            for (NodeId id : around) {
                g.measure_z(id, outcome.z_outcome(k++));
            }
            break;
        }
        }
    }
};

void apply_fusion(ClusterGraph &graph, NodeId a, NodeId b, const ClusterOutcome &outcome) {
    FusionEngine::run(graph, a, b, outcome);
}

FuseResult fuse_nodes(const ClusterGraph &main, NodeId a, const ClusterGraph &micro, NodeId b,
                      const GammaResult &noise, Rng &rng) {
    micro.node(b);
    FuseResult out{main, {}, 0};
    out.partner = out.graph.absorb(micro) + b;
    out.outcome = sample_cluster_outcome(noise, rng);
    apply_fusion(out.graph, a, out.partner, out.outcome);
    return out;
}

FuseResult fuse_nodes(const ClusterGraph &main, NodeId a, const ClusterGraph &micro, NodeId b,
                      const GammaResult &noise, std::uint64_t seed) {
    Rng rng(seed);
    return fuse_nodes(main, a, micro, b, noise, rng);
}

namespace {

void check_capacity(std::size_t qubits) {
    if (qubits > kMaxDenseQubits) {
        throw CapacityExceeded("dense cluster states are capped at " + std::to_string(kMaxDenseQubits) + " qubits");
    }
}

// First physical qubit of every live node, in dense-state order.
std::map<NodeId, std::size_t> qubit_offsets(const ClusterGraph &g) {
    std::map<NodeId, std::size_t> out;
    std::size_t pos = 0;
    for (NodeId id : g.live_nodes()) {
        out[id] = pos;
        pos += static_cast<std::size_t>(g.node(id).redundancy);
    }
    return out;
}

} // namespace

Eigen::VectorXcd to_dense_state(const ClusterGraph &graph) {
    const std::size_t qubits = graph.physical_qubits();
    check_capacity(qubits);
    const auto nodes = graph.live_nodes();
    const std::size_t logical = nodes.size();

    std::map<NodeId, std::size_t> slot;
    for (std::size_t k = 0; k < logical; ++k) {
        slot[nodes[k]] = k;
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (NodeId id : nodes) {
        for (NodeId n : graph.neighbors(id)) {
            if (id < n) {
                edges.emplace_back(slot[id], slot[n]);
            }
        }
    }

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubits);
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(logical));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << logical); ++x) {
        // logical node k carries bit (logical - 1 - k) of x
        auto bit = [&](std::size_t k) { return static_cast<int>((x >> (logical - 1 - k)) & 1U); };
        int parity = 0;
        for (const auto &[u, v] : edges) {
            parity ^= bit(u) & bit(v);
        }
        std::uint64_t index = 0;
        for (std::size_t k = 0; k < logical; ++k) {
            const auto &n = graph.node(nodes[k]);
            parity ^= static_cast<int>(n.z_frame) & bit(k);
            for (int r = 0; r < n.redundancy; ++r) {
                index = (index << 1) | static_cast<std::uint64_t>(bit(k));
            }
        }
        psi[static_cast<Eigen::Index>(index)] = parity ? -amp : amp;
    }
    return psi;
}

Eigen::VectorXcd fused_dense_state(const ClusterGraph &first, NodeId a, const ClusterGraph &second, NodeId b,
                                   bool error) {
    ClusterGraph joint = first;
    const NodeId partner = joint.absorb(second) + b;
    const Eigen::VectorXcd psi = to_dense_state(joint);
    const auto offsets = qubit_offsets(joint);
    const std::size_t n = joint.physical_qubits();
    const std::size_t qa = offsets.at(a) + static_cast<std::size_t>(joint.node(a).redundancy) - 1;
    const std::size_t qb = offsets.at(partner) + static_cast<std::size_t>(joint.node(partner).redundancy) - 1;

    // <t t'|(H x I)|x_a x_b> summed over the kept parity: (t, t') in {HH, VV}
    // or {HV, VH}, i.e. t' = x_b and t = x_b (even) or 1 - x_b (odd).
    const double r = std::numbers::sqrt2 / 2.0;
    auto kraus = [&](int xa, int xb) {
        const int t = error ? 1 - xb : xb;
        return (t == 1 && xa == 1) ? -r : r;
    };

    const std::size_t kept = n - 2;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << kept);
    for (std::uint64_t full = 0; full < (std::uint64_t{1} << n); ++full) {
        const Complex value = psi[static_cast<Eigen::Index>(full)];
        if (value == 0.0) {
            continue;
        }
        const int xa = static_cast<int>((full >> (n - 1 - qa)) & 1U);
        const int xb = static_cast<int>((full >> (n - 1 - qb)) & 1U);
        std::uint64_t rest = 0;
        for (std::size_t q = 0; q < n; ++q) {
            if (q == qa || q == qb) {
                continue;
            }
            rest = (rest << 1) | ((full >> (n - 1 - q)) & 1U);
        }
        out[static_cast<Eigen::Index>(rest)] += kraus(xa, xb) * value;
    }
    return out / out.norm();
}

double verify_error_model(const ClusterGraph &first, NodeId a, const ClusterGraph &second, NodeId b,
                          const GammaResult &noise, std::size_t samples, std::uint64_t seed) {
    ClusterGraph joint = first;
    const NodeId partner = joint.absorb(second) + b;
    check_capacity(joint.physical_qubits());

    auto fused = [&](bool error) {
        ClusterGraph g = joint;
        apply_fusion(g, a, partner, {Branch::Success, error, 0});
        return g;
    };

    // analytic channel on the ideal cluster built straight from the projector
    const Eigen::VectorXcd ideal = fused_dense_state(first, a, second, b, false);
    Eigen::VectorXcd flipped = ideal;
    {
        const ClusterGraph layout = fused(false);
        const std::size_t n = layout.physical_qubits();
        const std::size_t qa = qubit_offsets(layout).at(a);
        for (Eigen::Index k = 0; k < flipped.size(); ++k) {
            if ((static_cast<std::uint64_t>(k) >> (n - 1 - qa)) & 1U) {
                flipped[k] = -flipped[k];
            }
        }
    }
    const double p = noise.p_error;
    const Mixture channel{{1.0 - p, ideal}, {p, flipped}};

    Mixture averaged;
    if (samples == 0) {
        averaged = {{1.0 - p, to_dense_state(fused(false))}, {p, to_dense_state(fused(true))}};
    } else {
        Rng rng(seed);
        std::map<std::vector<bool>, std::pair<std::size_t, Eigen::VectorXcd>> seen;
        for (std::size_t s = 0; s < samples; ++s) {
            ClusterGraph g = joint;
            apply_fusion(g, a, partner, {Branch::Success, rng.bernoulli(p), 0});
            std::vector<bool> frame;
            for (NodeId id : g.live_nodes()) {
                frame.push_back(g.node(id).z_frame);
            }
            auto [it, inserted] = seen.try_emplace(frame, 0, Eigen::VectorXcd());
            if (inserted) {
                it->second.second = to_dense_state(g);
            }
            ++it->second.first;
        }
        for (const auto &[frame, entry] : seen) {
            averaged.emplace_back(static_cast<double>(entry.first) / static_cast<double>(samples), entry.second);
        }
    }
    return trace_distance(averaged, channel);
}

} // namespace fusionsim
