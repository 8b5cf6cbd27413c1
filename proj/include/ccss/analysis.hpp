#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ccss/core.hpp"

namespace ccss {

/// Measured properties of a schematic against a corpus.
struct VerificationReport {
    std::size_t n = 0;
    std::size_t z = 0;
    std::size_t max_code_len = 0;
    double code_len_lower_bound = 0.0;  // log2(n+1) - 1

    /// Max relative Hamming error over the corpus; nullopt means total
    /// failure (an item was rejected by encode or reconstructed at a
    /// different length).
    std::optional<double> epsilon_measured;
    std::optional<std::size_t> first_failed_item;

    std::vector<std::pair<StateId, StateId>> minimality_gen_violations;
    std::vector<std::pair<StateId, StateId>> minimality_prefix_violations;
    bool prefix_check_capped = false;

    std::size_t path_count = 0;
    std::size_t schematic_states = 0;  // all states
    std::size_t output_states = 0;     // 0/1-output states only
};

VerificationReport verify(const MooreSchematic& d, const Corpus& corpus);

struct MinimalityViolations {
    std::vector<std::pair<StateId, StateId>> gen_pairs;
    std::vector<std::pair<StateId, StateId>> prefix_pairs;
    /// Set when prefix enumeration stopped at the cap; prefix_pairs is
    /// then a partial answer.
    bool prefix_enumeration_capped = false;
};

/// The two minimality conditions.  gen_pairs lists distinct states with
/// equal generated string sets; prefix_pairs lists distinct 0/1-output
/// states reachable by root paths with the same output string.  Blank
/// states are excluded from the prefix check (a final state trivially
/// shares its parent's path output).  Prefix enumeration visits at most
/// `max_total_prefixes` path prefixes.
MinimalityViolations check_minimality_conditions(const MooreSchematic& d,
                                                 std::size_t max_total_prefixes = 1u << 16);

/// Concatenates the outputs of all 0/1 states in topological order
/// (ascending-id tie-break), optionally restricted to a state subset.
/// The result is a common supersequence of every corpus string routed
/// through the included states; no shortest-ness is implied.
Bits extract_supersequence(const MooreSchematic& d,
                           const std::optional<std::set<StateId>>& restrict_to = std::nullopt);

/// Two-pointer subsequence test: true iff needle embeds in order in
/// haystack.
bool is_subsequence(const Bits& needle, const Bits& haystack);

/// Majority-merge greedy supersequence: repeatedly emit the bit that is
/// the current first symbol of the most unconsumed strings (ties pick
/// 0).  Comparison baseline only.
Bits greedy_scs(const std::vector<Bits>& strings);

/// log2(n+1) - 1, the floor under any exactly-reconstructing scheme's
/// maximum code length.
double code_length_lower_bound(std::size_t n);

/// ceil(log2 n); the code-length guarantee of this construction.
std::size_t max_code_bound(std::size_t n);

/// All-zero padding string of length beta * (z * ceil(log2(total bits)) + 1),
/// the instance extension used when a supersequence for the original
/// strings is extracted from an enlarged corpus.  Test fixture helper;
/// carries no optimality claim.
Bits scs_padding_string(const std::vector<Bits>& strings, std::size_t beta);

}  // namespace ccss
