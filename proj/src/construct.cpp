#include "ccss/construct.hpp"

#include <cassert>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace ccss {

MergeKey MergeKey::of(const State& s) {
    const StateId t0 = s.edge(TransitionLabel::OnZero);
    const StateId t1 = s.edge(TransitionLabel::OnOne);
    const StateId tu = s.edge(TransitionLabel::Unconditional);
    const StateId te = s.edge(TransitionLabel::OnEnd);
    MergeKey k{s.output, Shape::NoEdges, {kNoState, kNoState, kNoState}};
    if (t0 != kNoState || t1 != kNoState) {
        k.shape = te != kNoState ? Shape::BranchAndEnd : Shape::Branch;
        k.successors = {t0, t1, te};
    } else if (tu != kNoState) {
        k.shape = te != kNoState ? Shape::UncondAndEnd : Shape::UncondOnly;
        k.successors = {tu, te, kNoState};
    } else if (te != kNoState) {
        k.shape = Shape::EndOnly;
        k.successors = {te, kNoState, kNoState};
    }
    return k;
}

std::size_t MergeKeyHash::operator()(const MergeKey& k) const {
    std::uint64_t h =
        (static_cast<std::uint64_t>(k.output) << 3) ^ static_cast<std::uint64_t>(k.shape);
    for (StateId s : k.successors) h ^= s + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
}

namespace {

// Flat linear-probing table for stage-3 representatives; state counts
// reach the total corpus bit count, where node-based maps dominate the
// whole construction time.
class RepTable {
public:
    explicit RepTable(std::size_t expected) {
        std::size_t cap = 16;
        while (cap < expected * 2) cap <<= 1;
        slots_.resize(cap);
        mask_ = cap - 1;
    }

    // Returns the representative for `key`; inserted is true when `s`
    // became that representative.
    std::pair<StateId, bool> find_or_insert(const MergeKey& key, StateId s) {
        std::size_t i = MergeKeyHash{}(key)&mask_;
        for (;;) {
            Slot& slot = slots_[i];
            if (!slot.used) {
                slot.used = true;
                slot.key = key;
                slot.rep = s;
                return {s, true};
            }
            if (slot.key == key) return {slot.rep, false};
            i = (i + 1) & mask_;
        }
    }

private:
    struct Slot {
        MergeKey key{};
        StateId rep = kNoState;
        bool used = false;
    };
    std::vector<Slot> slots_;
    std::size_t mask_ = 0;
};

struct Builder {
    std::vector<State> states;

    StateId add(OutputSymbol out) {
        states.push_back(State{out, {kNoState, kNoState, kNoState, kNoState}, false, 0});
        return static_cast<StateId>(states.size() - 1);
    }

    // Stage 1: one pass per corpus string, branching where strings
    // sharing a prefix diverge.
    void grow(const Corpus& corpus) {
        std::size_t total_bits = 0;
        for (const Bits& c : corpus.items) total_bits += c.size();
        states.reserve(total_bits + corpus.items.size() + 1);
        StateId root = add(OutputSymbol::Blank);
        for (std::size_t i = 0; i < corpus.items.size(); ++i) {
            const Bits& c = corpus.items[i];
            StateId s = root;
            for (char ch : c) {
                const OutputSymbol bit_out =
                    ch == '0' ? OutputSymbol::BitZero : OutputSymbol::BitOne;
                const TransitionLabel bit_label =
                    ch == '0' ? TransitionLabel::OnZero : TransitionLabel::OnOne;
                const TransitionLabel other_label =
                    ch == '0' ? TransitionLabel::OnOne : TransitionLabel::OnZero;

                // ⊥ edges do not count: a state holding only an OnEnd edge
                // (a shorter string ended here) still grows an
                // unconditional continuation.
                if (!states[s].has_conditional() &&
                    !states[s].has_edge(TransitionLabel::Unconditional)) {
                    StateId t = add(bit_out);
                    states[s].set_edge(TransitionLabel::Unconditional, t);
                }
                StateId u = states[s].edge(TransitionLabel::Unconditional);
                if (u != kNoState && states[u].output != bit_out) {
                    states[s].clear_edge(TransitionLabel::Unconditional);
                    states[s].set_edge(other_label, u);
                    u = kNoState;
                }
                StateId next = states[s].edge(bit_label);
                if (next == kNoState && u != kNoState) next = u;  // unconditional emits the bit
                if (next == kNoState) {
                    next = add(bit_out);
                    states[s].set_edge(bit_label, next);
                }
                s = next;
            }
            assert(!states[s].has_edge(TransitionLabel::OnEnd) && "duplicate corpus string");
            StateId leaf = add(OutputSymbol::Blank);
            states[leaf].is_final = true;
            states[s].set_edge(TransitionLabel::OnEnd, leaf);
        }
    }
};

// Stage 2: BFS from the start, children in label order (0, 1, ⊥, U).
std::vector<StateId> bfs_order(const std::vector<State>& states, StateId start) {
    static constexpr std::array<TransitionLabel, 4> kStage2Order = {
        TransitionLabel::OnZero, TransitionLabel::OnOne, TransitionLabel::OnEnd,
        TransitionLabel::Unconditional};
    std::vector<bool> seen(states.size(), false);
    std::deque<StateId> q{start};
    seen[start] = true;
    std::vector<StateId> order;
    order.reserve(states.size());
    while (!q.empty()) {
        StateId s = q.front();
        q.pop_front();
        order.push_back(s);
        for (auto l : kStage2Order) {
            StateId t = states[s].edge(l);
            if (t != kNoState && !seen[t]) {
                seen[t] = true;
                q.push_back(t);
            }
        }
    }
    return order;
}

void check_corpus(const Corpus& corpus) {
    if (corpus.items.empty()) throw std::invalid_argument("corpus must contain at least one string");
    std::unordered_map<std::string_view, std::size_t> seen;
    for (std::size_t i = 0; i < corpus.items.size(); ++i) {
        auto [it, inserted] = seen.emplace(corpus.items[i], i);
        if (!inserted)
            throw std::invalid_argument("duplicate corpus strings at indices " +
                                        std::to_string(it->second) + " and " + std::to_string(i));
        for (char c : corpus.items[i])
            if (c != '0' && c != '1')
                throw std::invalid_argument("corpus item " + std::to_string(i) +
                                            " contains a character outside {0,1}");
    }
}

MooreSchematic finalize(std::vector<State> states, StateId start,
                        const std::vector<bool>& alive) {
    std::vector<StateId> remap(states.size(), kNoState);
    StateId next = 0;
    for (StateId id = 0; id < states.size(); ++id)
        if (alive[id]) remap[id] = next++;
    MooreSchematic d;
    d.states.reserve(next);
    for (StateId id = 0; id < states.size(); ++id) {
        if (!alive[id]) continue;
        State s = states[id];
        for (auto l : kAllLabels) {
            StateId t = s.edge(l);
            if (t != kNoState) s.set_edge(l, remap[t]);
        }
        d.states.push_back(s);
    }
    d.start = remap[start];
    assign_bfs_depths(d.states, d.start);
    return d;
}

}  // namespace

MooreSchematic construct_stage1(const Corpus& corpus) {
    check_corpus(corpus);
    Builder b;
    b.grow(corpus);
    MooreSchematic d;
    d.states = std::move(b.states);
    d.start = 0;
    assign_bfs_depths(d.states, d.start);
    return d;
}

ConstructResult construct(const Corpus& corpus) {
    check_corpus(corpus);
    Builder b;
    b.grow(corpus);
    std::vector<State>& states = b.states;
    const StateId root = 0;

    BuildTrace trace;
    trace.stage1_state_count = states.size();
    trace.stage2_order = bfs_order(states, root);

    // Tree parents: valid for every state that can still be removed,
    // because children are processed before their parents and removed
    // states never gained extra in-edges (only representatives do).
    std::vector<StateId> parent(states.size(), kNoState);
    std::vector<TransitionLabel> parent_label(states.size(), TransitionLabel::OnZero);
    for (StateId id = 0; id < states.size(); ++id)
        for (auto l : kAllLabels) {
            StateId t = states[id].edge(l);
            if (t != kNoState) {
                assert(parent[t] == kNoState && "stage-1 output must be a tree");
                parent[t] = id;
                parent_label[t] = l;
            }
        }

    // Stage 3: walk in nonincreasing depth (reverse BFS), merging states
    // with equal keys into the first representative seen.
    std::vector<bool> alive(states.size(), true);
    RepTable reps(states.size());
    for (auto it = trace.stage2_order.rbegin(); it != trace.stage2_order.rend(); ++it) {
        StateId s = *it;
        auto [rep, inserted] = reps.find_or_insert(MergeKey::of(states[s]), s);
        if (inserted) continue;
        if (s == root) break;
        StateId r = parent[s];
        assert(r != kNoState && alive[r]);
        states[r].set_edge(parent_label[s], rep);
        alive[s] = false;
        trace.merges.emplace_back(s, rep);
    }

    StateId start = root;
    {
        const State& s0 = states[root];
        if (s0.has_edge(TransitionLabel::Unconditional) && !s0.has_conditional() &&
            !s0.has_edge(TransitionLabel::OnEnd)) {
            start = s0.edge(TransitionLabel::Unconditional);
            alive[root] = false;
            trace.collapsed_start = true;
        }
    }

    return {finalize(std::move(states), start, alive), std::move(trace)};
}

std::size_t stage3_merge_count(const MooreSchematic& d) {
    std::vector<StateId> order = bfs_order(d.states, d.start);
    std::unordered_map<MergeKey, StateId, MergeKeyHash> reps;
    std::size_t duplicates = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        MergeKey key = MergeKey::of(d.states[*it]);
        if (!reps.emplace(key, *it).second) ++duplicates;
    }
    return duplicates;
}

}  // namespace ccss
