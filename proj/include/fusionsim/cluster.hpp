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
#include <vector>

#include <Eigen/Dense>

#include "fusionsim/fusion.hpp"
#include "fusionsim/random.hpp"

namespace fusionsim {

using NodeId = std::size_t;

/// Logical cluster qubit encoded as |0>_L = |H>^n, |1>_L = |V>^n.
struct LogicalNode {
    NodeId id = 0;
    int redundancy = 1;
    /// Pending phase flip on this logical qubit.
    bool z_frame = false;
};

struct Bond {
    NodeId to = 0;
    /// Created by a successful fusion rather than present in a micro-cluster.
    bool fused = false;
    /// That fusion left a dephasing error behind.
    bool error = false;
};

enum class EventKind { Fusion, Measurement };

struct ClusterEvent {
    EventKind kind = EventKind::Fusion;
    NodeId a = 0;
    /// Fusion partner; unused for measurements.
    NodeId b = 0;
    Branch branch = Branch::Success;
    bool error = false;
    /// Z-measurement result for measurements.
    int outcome = 0;
};

enum class Shape { Linear, Star };

/// Graph state over logical nodes. Node ids are slot indices and are never
/// reused, so removed nodes stay addressable as dead slots.
class ClusterGraph {
  public:
    /// Chain of `length` nodes, or a star with a hub (id 0) and `size` arms.
    /// Throws InvalidParameter for non-positive sizes or redundancy.
    static ClusterGraph linear(int length, int redundancy);
    static ClusterGraph star(int arms, int redundancy);

    std::size_t size() const { return live_; }
    std::size_t slots() const { return nodes_.size(); }
    std::size_t edge_count() const;
    std::size_t physical_qubits() const;
    std::size_t components() const;

    bool alive(NodeId id) const { return id < alive_.size() && alive_[id]; }
    /// Throws InvalidParameter for dead or unknown ids.
    const LogicalNode &node(NodeId id) const;
    const std::vector<Bond> &bonds(NodeId id) const;
    std::vector<NodeId> neighbors(NodeId id) const;
    std::vector<NodeId> live_nodes() const;
    bool adjacent(NodeId a, NodeId b) const;

    /// Surviving fusion bonds, and those of them carrying an error.
    std::size_t fused_bonds() const;
    std::size_t error_bonds() const;

    const std::vector<ClusterEvent> &events() const { return events_; }

    /// Appends a disjoint copy of `other`; its node k becomes offset + k.
    NodeId absorb(const ClusterGraph &other);

    /// Removes the node by a computational-basis measurement with the given
    /// result; a 1 leaves a Z byproduct on every remaining neighbor.
    void measure_z(NodeId id, int outcome);

    /// Drops a node without a byproduct (its state is lost).
    void discard(NodeId id);

    /// One line per live node: `id n z_frame neighbor-ids...`.
    void write_snapshot(std::ostream &out) const;

  private:
    NodeId add_node(int redundancy);
    void connect(NodeId a, NodeId b, bool fused, bool error);
    void require_alive(NodeId id) const;

    std::vector<LogicalNode> nodes_;
    std::vector<std::vector<Bond>> adjacency_;
    std::vector<bool> alive_;
    std::vector<ClusterEvent> events_;
    std::size_t live_ = 0;

    friend struct FusionEngine;
};

ClusterGraph new_cluster(Shape shape, int size, int redundancy);

/// Outcome of one redundantly encoded fusion. Z-measurement results are
/// derived from `z_seed`, one bit per measured node in removal order.
struct ClusterOutcome {
    Branch branch = Branch::Success;
    bool error = false;
    std::uint64_t z_seed = 0;

    int z_outcome(std::size_t k) const { return static_cast<int>(mix_seed(z_seed, k) & 1U); }
};

/// Success with probability eta / 2, failure with the matching odd-parity
/// weight, loss otherwise; the error fires on success with probability p_error.
/// Always consumes three draws.
ClusterOutcome sample_cluster_outcome(const GammaResult &noise, Rng &rng);

/// Applies a fusion between two live nodes of one graph.
///  - Success: bond (a, b), both redundancies drop by one, Z toggled on `a`
///    when the error fired.
///  - Failure: a and b are measured in Z and removed.
///  - Loss: a and b are destroyed and all their neighbors measured in Z.
/// Throws EncodingExhausted if either node has redundancy below 2.
void apply_fusion(ClusterGraph &graph, NodeId a, NodeId b, const ClusterOutcome &outcome);

struct FuseResult {
    ClusterGraph graph;
    ClusterOutcome outcome;
    /// Id of the micro-cluster node `b` inside `graph`.
    NodeId partner = 0;
};

FuseResult fuse_nodes(const ClusterGraph &main, NodeId a, const ClusterGraph &micro, NodeId b,
                      const GammaResult &noise, Rng &rng);
FuseResult fuse_nodes(const ClusterGraph &main, NodeId a, const ClusterGraph &micro, NodeId b,
                      const GammaResult &noise, std::uint64_t seed);

inline constexpr std::size_t kMaxDenseQubits = 20;

/// State vector over all physical qubits: live nodes in id order, each
/// contributing `redundancy` consecutive qubits, first qubit most significant.
/// Throws CapacityExceeded above kMaxDenseQubits.
Eigen::VectorXcd to_dense_state(const ClusterGraph &graph);

/// Builds the ideal fused cluster directly from the two input states: the
/// last physical qubit of `a` and of `b` are consumed by
/// (<HH| + <VV|)(H x I). With `error` the odd-parity projector
/// (<HV| + <VH|)(H x I) is used instead.
Eigen::VectorXcd fused_dense_state(const ClusterGraph &first, NodeId a, const ClusterGraph &second, NodeId b,
                                   bool error = false);

/// Trace distance between the averaged output of forced-success fusions and
/// the dephasing channel (1 - p)|C><C| + p Z_a|C><C|Z_a. `samples == 0`
/// averages over the exact error distribution instead of sampling it.
double verify_error_model(const ClusterGraph &first, NodeId a, const ClusterGraph &second, NodeId b,
                          const GammaResult &noise, std::size_t samples, std::uint64_t seed);

} // namespace fusionsim
