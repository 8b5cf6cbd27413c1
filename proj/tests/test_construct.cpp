#include <doctest.h>

#include <stdexcept>

#include <map>
#include <random>
#include <unordered_map>

#include "ccss/analysis.hpp"
#include "ccss/construct.hpp"
#include "ccss/encode.hpp"
#include "ccss/io.hpp"
#include "support.hpp"

using namespace ccss;
using namespace ccss::test;

TEST_CASE("vowel corpus: structure and trace") {
    auto [d, trace] = construct(vowels());
    CHECK(output_state_count(d) == 11);
    CHECK(d.states.size() == 13);  // plus blank start and blank final
    CHECK(trace.stage1_state_count == 26);
    CHECK(trace.merges.size() == 13);
    CHECK_FALSE(trace.collapsed_start);
    CHECK(enumerate_paths(d).size() == 5);
    CHECK(validate_schematic(d).empty());
    CHECK(d.aux.empty());
}

TEST_CASE("single string collapses the start") {
    auto [d, trace] = construct(Corpus::from_items({"101"}));
    CHECK(trace.collapsed_start);
    CHECK(d.states.size() == 4);
    CHECK(d.states[d.start].output == OutputSymbol::BitOne);
    // chain (1) -> (0) -> (1) -> final, no junctions
    StateId s = d.start;
    CHECK(d.states[s].edge(TransitionLabel::Unconditional) != kNoState);
}

TEST_CASE("{0,00,01}: prefix corpus collapses to a 4-state machine") {
    auto [d, trace] = construct(Corpus::from_items({"0", "00", "01"}));
    CHECK(trace.collapsed_start);
    REQUIRE(d.states.size() == 4);
    const State& a = d.states[d.start];
    CHECK(a.output == OutputSymbol::BitZero);
    StateId b = a.edge(TransitionLabel::OnZero);
    StateId c = a.edge(TransitionLabel::OnOne);
    StateId l = a.edge(TransitionLabel::OnEnd);
    REQUIRE(b != kNoState);
    REQUIRE(c != kNoState);
    REQUIRE(l != kNoState);
    CHECK(d.states[b].output == OutputSymbol::BitZero);
    CHECK(d.states[c].output == OutputSymbol::BitOne);
    CHECK(d.states[l].is_final);
    CHECK(d.states[b].edge(TransitionLabel::OnEnd) == l);
    CHECK(d.states[c].edge(TransitionLabel::OnEnd) == l);
}

TEST_CASE("empty-string corpus degenerates gracefully") {
    auto [d, trace] = construct(Corpus::from_items({""}));
    CHECK(d.states.size() == 2);
    CHECK(d.states[d.start].output == OutputSymbol::Blank);
    CHECK(d.states[d.start].has_edge(TransitionLabel::OnEnd));
    CHECK(decode(d, "") == Bits(""));

    auto [d2, t2] = construct(Corpus::from_items({"", "0"}));
    CHECK(validate_schematic(d2).empty());
    CHECK(decode(d2, "") == Bits(""));
    CHECK(decode(d2, "1") == Bits("0"));
}

TEST_CASE("construct errors") {
    Corpus empty;
    CHECK_THROWS_AS(construct(empty), std::invalid_argument);
    Corpus dup;
    dup.items = {"01", "01"};
    CHECK_THROWS_WITH_AS(construct(dup), doctest::Contains("indices 0 and 1"),
                         std::invalid_argument);
}

TEST_CASE("stage 1: tree shape, one leaf per string, unique root outputs") {
    SUBCASE("vowels") {
        auto tree = construct_stage1(vowels());
        std::map<StateId, int> indeg;
        std::size_t leaves = 0;
        for (StateId id = 0; id < tree.states.size(); ++id) {
            for (auto l : kAllLabels) {
                StateId t = tree.states[id].edge(l);
                if (t != kNoState) indeg[t]++;
            }
            if (tree.states[id].is_final) ++leaves;
        }
        CHECK(leaves == 5);
        for (StateId id = 0; id < tree.states.size(); ++id) {
            if (id == tree.start)
                CHECK(indeg.count(id) == 0);
            else
                CHECK(indeg[id] == 1);
        }
    }
    SUBCASE("simple traces") {
        // {"0"}: blank start -U-> (0) -E-> leaf
        auto t1 = construct_stage1(Corpus::from_items({"0"}));
        REQUIRE(t1.states.size() == 3);
        StateId mid = t1.states[t1.start].edge(TransitionLabel::Unconditional);
        REQUIRE(mid != kNoState);
        CHECK(t1.states[mid].output == OutputSymbol::BitZero);
        CHECK(t1.states[mid].has_edge(TransitionLabel::OnEnd));

        // {0,1}: the conversion rule turns the unconditional edge into a branch
        auto t2 = construct_stage1(Corpus::from_items({"0", "1"}));
        const State& root = t2.states[t2.start];
        CHECK(root.has_edge(TransitionLabel::OnZero));
        CHECK(root.has_edge(TransitionLabel::OnOne));
        CHECK_FALSE(root.has_edge(TransitionLabel::Unconditional));
    }
}

TEST_CASE("stage 1 tree properties on random corpora") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        Corpus c = random_corpus(rng, 24, 10);
        auto tree = construct_stage1(c);
        std::vector<int> indeg(tree.states.size(), 0);
        std::size_t leaves = 0;
        for (StateId id = 0; id < tree.states.size(); ++id) {
            for (auto l : kAllLabels) {
                StateId t = tree.states[id].edge(l);
                if (t != kNoState) indeg[t]++;
            }
            if (tree.states[id].is_final) ++leaves;
        }
        CHECK(leaves == c.n());
        bool tree_ok = true;
        for (StateId id = 0; id < tree.states.size(); ++id)
            if (id != tree.start ? indeg[id] != 1 : indeg[id] != 0) tree_ok = false;
        CHECK(tree_ok);
        // Root-path outputs are duplicate-free across distinct states.
        auto viol = check_minimality_conditions(tree);
        CHECK(viol.prefix_pairs.empty());
    }
}

TEST_CASE("full construct: path/string bijection on random corpora") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 40; ++iter) {
        Corpus c = random_corpus(rng, 24, 10);
        auto d = construct(c).schematic;
        CHECK(validate_schematic(d).empty());
        auto paths = enumerate_paths(d);
        CHECK(paths.size() == c.n());
        std::set<Bits> outs;
        for (const auto& p : paths) outs.insert(p.output);
        CHECK(outs == std::set<Bits>(c.items.begin(), c.items.end()));
    }
}

TEST_CASE("merging is idempotent") {
    std::mt19937_64 rng(123);
    auto check_zero = [](const MooreSchematic& d) { CHECK(stage3_merge_count(d) == 0); };
    check_zero(construct(vowels()).schematic);
    for (int iter = 0; iter < 20; ++iter)
        check_zero(construct(random_corpus(rng, 24, 10)).schematic);
}

TEST_CASE("construct is deterministic") {
    auto a = write_schematic(construct(vowels()).schematic);
    auto b = write_schematic(construct(vowels()).schematic);
    CHECK(a == b);
}

TEST_CASE("merge bookkeeping adds up") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 20; ++iter) {
        Corpus c = random_corpus(rng, 24, 10);
        auto [d, t] = construct(c);
        CHECK(t.stage1_state_count ==
              d.states.size() + t.merges.size() + (t.collapsed_start ? 1 : 0));
        CHECK(t.stage2_order.size() == t.stage1_state_count);
    }
}

TEST_CASE("MergeKey distinguishes shapes with equal successors") {
    State uncond;
    uncond.output = OutputSymbol::BitZero;
    uncond.set_edge(TransitionLabel::Unconditional, 7);
    State branch;
    branch.output = OutputSymbol::BitZero;
    branch.set_edge(TransitionLabel::OnZero, 7);
    branch.set_edge(TransitionLabel::OnOne, 7);
    CHECK(MergeKey::of(uncond).shape == MergeKey::Shape::UncondOnly);
    CHECK(MergeKey::of(branch).shape == MergeKey::Shape::Branch);
    CHECK_FALSE(MergeKey::of(uncond) == MergeKey::of(branch));
}

TEST_CASE("MergeKey distinctness matches gen-set distinctness (both directions)") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 20; ++iter) {
        Corpus c = random_corpus(rng, 20, 8);
        auto d = construct(c).schematic;
        std::map<std::set<Bits>, StateId> by_gen;
        std::unordered_map<MergeKey, StateId, MergeKeyHash> by_key;
        for (StateId id = 0; id < d.states.size(); ++id) {
            bool gen_new = by_gen.emplace(gen_set(d, id), id).second;
            bool key_new = by_key.emplace(MergeKey::of(d.states[id]), id).second;
            CHECK(gen_new == key_new);
        }
    }
}
