#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccss/core.hpp"

namespace ccss {

using NodeId = std::uint32_t;

/// The graph-partitioning restatement of the construction problem: a
/// labeled DAG, a set of trace paths through it, a target partition
/// count k and a cost budget tau.  Labels are optional because the
/// exact correspondence needs a constant number of unlabeled nodes (the
/// blank start/final of a converted schematic).
struct PartitionInstance {
    std::vector<NodeId> nodes;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::map<NodeId, std::optional<int>> labels;  // 0/1, or nullopt for unlabeled
    std::vector<std::vector<NodeId>> trace_paths;
    std::size_t k = 0;
    std::uint64_t tau = 0;
};

/// Node -> partition index in [1..k].
struct Partitioning {
    std::map<NodeId, std::size_t> assignment;
};

/// Structural validation: acyclic graph, trace paths follow existing
/// edges, known nodes everywhere.  Empty list means well-formed.
std::vector<std::string> validate_instance(const PartitionInstance& inst);

/// The sequence of partitions reached along trace path `i`, consecutive
/// repeats collapsed (re-entering a partition after leaving counts
/// again).  Throws std::out_of_range for a bad path index.
std::vector<std::size_t> partition_path(const PartitionInstance& inst, const Partitioning& part,
                                        std::size_t path_index);

/// Number of distinct partitions appearing immediately after partition
/// `g` on some partition path.
std::size_t partition_degree(const PartitionInstance& inst, const Partitioning& part,
                             std::size_t g);

/// max over trace paths of the sum of ceil(log2 deg) along the
/// partition path, with ceil(log2 d) = 0 for d <= 1.  The partitioning
/// satisfies tau iff this is <= tau.
std::uint64_t tau_cost(const PartitionInstance& inst, const Partitioning& part);

/// Reports non-monochromatic partitions, unassigned nodes, out-of-range
/// indices, a partition count different from k (strict mode only) and a
/// tau violation carrying the computed cost.
std::vector<std::string> check(const PartitionInstance& inst, const Partitioning& part,
                               bool strict = true);

struct MinKResult {
    std::size_t k = 0;
    Partitioning witness;
};

/// Exhaustively enumerates set partitions in increasing block count and
/// returns the smallest k admitting a monochromatic tau-satisfying
/// partitioning, or nullopt when none exists at any k up to the node
/// count.  Throws std::invalid_argument above `node_cap` (enumeration
/// is Bell-number growth).
std::optional<MinKResult> brute_force_min_k(const PartitionInstance& inst, std::uint64_t tau,
                                            std::size_t node_cap = 12);

/// Every node in its own partition (indices 1..n in node order).
Partitioning identity_partitioning(const PartitionInstance& inst);

/// Converts a schematic to an instance: 0/1 states become labeled
/// nodes; the blank start and final states are kept as unlabeled nodes
/// so that junction signaling stays visible.  One trace path per
/// start-to-final path, with the final node appended exactly when the
/// path's last emitting state also has an Unconditional edge (the stop
/// at such a junction is what the continue marker signals against).
/// With the identity partitioning, tau_cost equals the machine's
/// maximum streaming-code length.
PartitionInstance schematic_to_instance(const MooreSchematic& d, std::uint64_t tau);

}  // namespace ccss
