#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ccss {

/// A bit string, one '0'/'1' character per bit.  The empty string is a
/// legal value everywhere it can appear.
using Bits = std::string;

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Per-state output symbol.  Blank may appear only on the start state or
/// on final states.
enum class OutputSymbol : std::uint8_t { BitZero = 0, BitOne = 1, Blank = 2 };

inline char output_char(OutputSymbol o) {
    return o == OutputSymbol::BitZero ? '0' : (o == OutputSymbol::BitOne ? '1' : 'B');
}

/// Edge labels.  An OnZero/OnOne edge consumes one input bit; an
/// Unconditional edge consumes none and is taken regardless of the next
/// input symbol; an OnEnd edge fires only at input exhaustion.
enum class TransitionLabel : std::uint8_t { OnZero = 0, OnOne = 1, Unconditional = 2, OnEnd = 3 };

inline constexpr std::array<TransitionLabel, 4> kAllLabels = {
    TransitionLabel::OnZero, TransitionLabel::OnOne,
    TransitionLabel::Unconditional, TransitionLabel::OnEnd};

inline char label_char(TransitionLabel l) {
    switch (l) {
        case TransitionLabel::OnZero: return '0';
        case TransitionLabel::OnOne: return '1';
        case TransitionLabel::Unconditional: return 'U';
        default: return 'E';
    }
}

struct State {
    OutputSymbol output = OutputSymbol::Blank;
    std::array<StateId, 4> edges = {kNoState, kNoState, kNoState, kNoState};
    bool is_final = false;
    std::uint32_t depth = 0;  // BFS depth from start; filled in by builders

    StateId edge(TransitionLabel l) const { return edges[static_cast<std::size_t>(l)]; }
    void set_edge(TransitionLabel l, StateId t) { edges[static_cast<std::size_t>(l)] = t; }
    void clear_edge(TransitionLabel l) { edges[static_cast<std::size_t>(l)] = kNoState; }
    bool has_edge(TransitionLabel l) const { return edge(l) != kNoState; }
    bool has_conditional() const {
        return has_edge(TransitionLabel::OnZero) || has_edge(TransitionLabel::OnOne);
    }
    bool has_any_edge() const {
        for (auto t : edges)
            if (t != kNoState) return true;
        return false;
    }
};

/// An ordered set of distinct bit strings.  n() is the item count, z()
/// the length of the longest item (0 only when the sole item is empty).
struct Corpus {
    std::vector<Bits> items;

    /// Validates distinctness, n >= 1 and the 0/1 alphabet; throws
    /// std::invalid_argument with the offending indices otherwise.
    static Corpus from_items(std::vector<Bits> items);

    std::size_t n() const { return items.size(); }
    std::size_t z() const {
        std::size_t m = 0;
        for (const auto& s : items) m = std::max(m, s.size());
        return m;
    }
};

/// Immutable acyclic Moore machine: the object shipped during the setup
/// phase.  `aux` is the auxiliary output (empty for this scheme).
struct MooreSchematic {
    std::vector<State> states;
    StateId start = 0;
    std::vector<std::uint8_t> aux;

    std::size_t size() const { return states.size(); }
    const State& at(StateId id) const { return states[id]; }
};

/// A variable-length streaming code (possibly empty).
struct StreamCode {
    Bits bits;
    bool operator==(const StreamCode&) const = default;
};

/// Checks every structural invariant: allowed edge-label sets, 0/1-edge
/// target outputs, blank placement, finality, acyclicity, reachability,
/// dead ends, and the collapsed-start rule.  Violations are data, not
/// errors; an empty list means the machine is valid.
std::vector<std::string> validate_schematic(const MooreSchematic& d);

struct DecodeFailure {
    std::size_t input_pos = 0;
    std::string reason;
};

/// Runs the machine on `code` and returns the emitted 0/1 sequence, or
/// nullopt when the code is invalid for this machine: a missing
/// conditional edge, a continue-marker bit that is not 1, input
/// exhaustion at a branch without an OnEnd edge, or input left over at a
/// final state.
std::optional<Bits> decode(const MooreSchematic& d, const Bits& code,
                           DecodeFailure* failure = nullptr);

/// The set of strings generated from `a` to any final state, including
/// a's own output bit when a is a 0/1 state.  Memoized over the DAG so
/// shared subgraphs are visited once.  Throws on an unknown state id.
std::set<Bits> gen_set(const MooreSchematic& d, StateId a);

/// gen_set for every state in one bottom-up pass.
std::vector<std::set<Bits>> gen_sets_all(const MooreSchematic& d);

struct PathRecord {
    std::vector<StateId> states;
    Bits output;
};

/// All maximal start-to-final paths with their emitted strings, in
/// deterministic label order (0, 1, U, E).
std::vector<PathRecord> enumerate_paths(const MooreSchematic& d);

/// Hamming distance; nullopt when the lengths differ (Incomparable).
std::optional<std::size_t> hamming(const Bits& a, const Bits& b);

/// Number of 0/1-output states.  This is the count the worked examples
/// quote for a schematic's size (blank start/final states excluded).
std::size_t output_state_count(const MooreSchematic& d);

/// Topological order of all states, ties broken by ascending id.
/// Throws std::runtime_error if a cycle is present.
std::vector<StateId> topological_order(const MooreSchematic& d);

/// Recomputes State::depth as BFS depth from `start` over `states`.
/// Builders call this once before freezing a machine.
void assign_bfs_depths(std::vector<State>& states, StateId start);

}  // namespace ccss
