#pragma once

// Shared fixtures and independent oracles for the test suites.  The
// oracles here deliberately avoid the library's own traversal helpers:
// recursive DFS with no memoization, so they stay valid cross-checks.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "ccss/core.hpp"

namespace ccss::test {

inline const std::vector<Bits> kVowels = {"00001", "00101", "01001", "01111", "10101"};

inline Corpus vowels() { return Corpus::from_items(kVowels); }

/// Distinct random corpus: n uniform in [1, max_n], item lengths uniform
/// in [0, max_len].
inline Corpus random_corpus(std::mt19937_64& rng, std::size_t max_n = 200,
                            std::size_t max_len = 64) {
    std::uniform_int_distribution<std::size_t> pick_n(1, max_n);
    std::uniform_int_distribution<std::size_t> pick_len(0, max_len);
    std::bernoulli_distribution bit(0.5);
    std::size_t n = pick_n(rng);
    std::set<Bits> items;
    std::vector<Bits> ordered;
    std::size_t guard = 0;
    while (ordered.size() < n) {
        if (++guard > 100000) break;  // tiny length budgets can exhaust the space
        Bits s;
        std::size_t len = pick_len(rng);
        s.reserve(len);
        for (std::size_t i = 0; i < len; ++i) s.push_back(bit(rng) ? '1' : '0');
        if (items.insert(s).second) ordered.push_back(std::move(s));
    }
    Corpus c;
    c.items = std::move(ordered);
    return c;
}

/// Naive recursive enumeration of root-to-final outputs from `a`.
/// No memoization; exponential in the worst case, fine at test scale.
inline void ref_outputs_rec(const MooreSchematic& d, StateId a, Bits& acc,
                            std::set<Bits>& out) {
    const State& st = d.states[a];
    std::size_t mark = acc.size();
    if (st.output != OutputSymbol::Blank) acc.push_back(output_char(st.output));
    bool leaf = true;
    for (auto l : kAllLabels) {
        StateId t = st.edge(l);
        if (t == kNoState) continue;
        leaf = false;
        ref_outputs_rec(d, t, acc, out);
    }
    if (leaf) out.insert(acc);
    acc.resize(mark);
}

inline std::set<Bits> ref_gen_set(const MooreSchematic& d, StateId a) {
    std::set<Bits> out;
    Bits acc;
    ref_outputs_rec(d, a, acc, out);
    return out;
}

/// Exhaustive decode of every code up to `max_len` bits; the resulting
/// map is the ground-truth code table.
inline std::vector<std::pair<Bits, Bits>> ref_code_table(const MooreSchematic& d,
                                                         std::size_t max_len) {
    std::vector<std::pair<Bits, Bits>> table;
    std::vector<Bits> frontier{Bits{}};
    for (std::size_t len = 0; len <= max_len; ++len) {
        std::vector<Bits> next;
        for (const Bits& code : frontier) {
            if (auto s = decode(d, code)) table.emplace_back(code, *s);
            if (len < max_len) {
                next.push_back(code + '0');
                next.push_back(code + '1');
            }
        }
        frontier = std::move(next);
    }
    return table;
}

/// The hand-built merged variant of the vowel machine: the exact
/// construction's two pairs (e/u tail, o tail/u head) fused with
/// unconditional edges converted to branches.  9 output states, 12
/// paths, max vowel code 5.
inline MooreSchematic merged_vowel_variant() {
    // ids: 0 S(B) 1 P0(0) 2 P00(0) 3 P01(1) 4 Z(1) 5 H(0) 6 C001(0)
    //      7 Y(1) 8 B01(0) 9 A1(1) 10 L(B,final)
    MooreSchematic d;
    d.states.resize(11);
    auto set = [&](StateId id, OutputSymbol out) { d.states[id].output = out; };
    auto edge = [&](StateId f, TransitionLabel l, StateId t) { d.states[f].set_edge(l, t); };
    set(0, OutputSymbol::Blank);
    set(1, OutputSymbol::BitZero);
    set(2, OutputSymbol::BitZero);
    set(3, OutputSymbol::BitOne);
    set(4, OutputSymbol::BitOne);
    set(5, OutputSymbol::BitZero);
    set(6, OutputSymbol::BitZero);
    set(7, OutputSymbol::BitOne);
    set(8, OutputSymbol::BitZero);
    set(9, OutputSymbol::BitOne);
    set(10, OutputSymbol::Blank);
    d.states[10].is_final = true;
    edge(0, TransitionLabel::OnZero, 1);
    edge(0, TransitionLabel::OnOne, 4);
    edge(1, TransitionLabel::OnZero, 2);
    edge(1, TransitionLabel::OnOne, 3);
    edge(2, TransitionLabel::OnZero, 6);
    edge(2, TransitionLabel::OnOne, 7);
    edge(3, TransitionLabel::OnZero, 6);
    edge(3, TransitionLabel::OnOne, 4);
    edge(4, TransitionLabel::OnZero, 5);
    edge(4, TransitionLabel::OnOne, 7);
    edge(5, TransitionLabel::Unconditional, 7);
    edge(6, TransitionLabel::Unconditional, 8);
    edge(7, TransitionLabel::OnZero, 8);
    edge(7, TransitionLabel::OnOne, 9);
    edge(8, TransitionLabel::Unconditional, 9);
    edge(9, TransitionLabel::OnEnd, 10);
    d.start = 0;
    assign_bfs_depths(d.states, d.start);
    return d;
}

}  // namespace ccss::test
