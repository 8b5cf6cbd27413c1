#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ccss/core.hpp"

namespace ccss {

/// Key under which stage 3 merges states: equal output plus identical
/// labeled successor structure.  The shape tag matters: UncondOnly(t)
/// and Branch(t0,t1) consume input differently and must never collide
/// even if they point at the same states.
struct MergeKey {
    enum class Shape : std::uint8_t {
        NoEdges,
        EndOnly,
        UncondOnly,
        UncondAndEnd,
        Branch,
        BranchAndEnd,
    };

    OutputSymbol output;
    Shape shape;
    std::array<StateId, 3> successors;  // slot meaning depends on shape

    static MergeKey of(const State& s);
    bool operator==(const MergeKey&) const = default;
};

struct MergeKeyHash {
    std::size_t operator()(const MergeKey& k) const;
};

/// Observability record for one construction run.  Ids refer to the
/// stage-1 state numbering (removed states have no final id).
struct BuildTrace {
    std::size_t stage1_state_count = 0;
    std::vector<StateId> stage2_order;
    std::vector<std::pair<StateId, StateId>> merges;  // (removed, representative)
    bool collapsed_start = false;
};

struct ConstructResult {
    MooreSchematic schematic;
    BuildTrace trace;
};

/// Builds the schematic for a corpus: stage 1 grows a trie-shaped Moore
/// machine, stage 2 enumerates states in BFS order, stage 3 merges
/// isomorphic subgraphs bottom-up, and finally a start state whose only
/// edge is Unconditional is deleted in favor of its successor.  The
/// result has one start-to-final path per corpus item and satisfies both
/// minimality conditions (no equal gen-sets, no equal-output prefix
/// paths).  Throws std::invalid_argument for an empty corpus or
/// duplicate strings.
ConstructResult construct(const Corpus& corpus);

/// Stage 1 only, exposed for testing the tree-stage properties directly:
/// a directed tree rooted at the start with one leaf per corpus item and
/// pairwise-distinct root-path outputs.
MooreSchematic construct_stage1(const Corpus& corpus);

/// Counts how many states a further merge pass over `d` would remove.
/// Zero on any construct output (merging is idempotent).
std::size_t stage3_merge_count(const MooreSchematic& d);

}  // namespace ccss
