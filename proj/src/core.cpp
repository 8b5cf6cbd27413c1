#include "ccss/core.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace ccss {

Corpus Corpus::from_items(std::vector<Bits> items) {
    if (items.empty()) throw std::invalid_argument("corpus must contain at least one string");
    std::unordered_map<std::string_view, std::size_t> seen;
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (char c : items[i])
            if (c != '0' && c != '1')
                throw std::invalid_argument("corpus item " + std::to_string(i) +
                                            " contains a character outside {0,1}");
        auto [it, inserted] = seen.emplace(items[i], i);
        if (!inserted)
            throw std::invalid_argument("duplicate corpus items at indices " +
                                        std::to_string(it->second) + " and " + std::to_string(i));
    }
    Corpus c;
    c.items = std::move(items);
    return c;
}

namespace {

std::string state_ref(StateId id) { return "state " + std::to_string(id); }

// The six allowed label sets, encoded as bitmasks over (0,1,U,E).
bool allowed_label_set(const State& s) {
    unsigned mask = 0;
    for (std::size_t i = 0; i < 4; ++i)
        if (s.edges[i] != kNoState) mask |= 1u << i;
    constexpr unsigned k0 = 1u << 0, k1 = 1u << 1, kU = 1u << 2, kE = 1u << 3;
    switch (mask) {
        case 0:
        case kE:
        case kU:
        case kU | kE:
        case k0 | k1:
        case k0 | k1 | kE:
            return true;
        default:
            return false;
    }
}

}  // namespace

std::vector<std::string> validate_schematic(const MooreSchematic& d) {
    std::vector<std::string> v;
    const std::size_t n = d.states.size();
    if (n == 0) {
        v.push_back("machine has no states");
        return v;
    }
    if (d.start >= n) {
        v.push_back("start id " + std::to_string(d.start) + " out of range");
        return v;
    }

    for (StateId id = 0; id < n; ++id) {
        const State& s = d.states[id];
        for (auto l : kAllLabels) {
            StateId t = s.edge(l);
            if (t != kNoState && t >= n)
                v.push_back(state_ref(id) + ": edge target " + std::to_string(t) +
                            " out of range");
        }
        if (!allowed_label_set(s))
            v.push_back(state_ref(id) + ": edge-label set is not one of the allowed combinations");
        StateId t0 = s.edge(TransitionLabel::OnZero);
        if (t0 != kNoState && t0 < n && d.states[t0].output != OutputSymbol::BitZero)
            v.push_back(state_ref(id) + ": OnZero edge targets a state that does not output 0");
        StateId t1 = s.edge(TransitionLabel::OnOne);
        if (t1 != kNoState && t1 < n && d.states[t1].output != OutputSymbol::BitOne)
            v.push_back(state_ref(id) + ": OnOne edge targets a state that does not output 1");
        bool blank_leaf = s.output == OutputSymbol::Blank && !s.has_any_edge();
        if (s.is_final != blank_leaf)
            v.push_back(state_ref(id) + (s.is_final
                            ? ": final state must have Blank output and no edges"
                            : ": non-final state with Blank output and no edges"));
        if (s.output == OutputSymbol::Blank && id != d.start && !blank_leaf)
            v.push_back(state_ref(id) + ": Blank output on a non-start, non-final state");
        if (!s.has_any_edge() && !s.is_final)
            v.push_back(state_ref(id) + ": dead end (no edges, not final)");
    }

    // Collapsed-start rule: a Blank start whose only edge is Unconditional
    // would have been removed by the final construction step.
    {
        const State& s0 = d.states[d.start];
        bool only_uncond = s0.has_edge(TransitionLabel::Unconditional) && !s0.has_conditional() &&
                           !s0.has_edge(TransitionLabel::OnEnd);
        if (s0.output == OutputSymbol::Blank && only_uncond)
            v.push_back("start state is Blank with only an Unconditional edge (uncollapsed)");
    }

    // Reachability.
    {
        std::vector<bool> seen(n, false);
        std::deque<StateId> q{d.start};
        seen[d.start] = true;
        while (!q.empty()) {
            StateId s = q.front();
            q.pop_front();
            for (auto l : kAllLabels) {
                StateId t = d.states[s].edge(l);
                if (t != kNoState && t < n && !seen[t]) {
                    seen[t] = true;
                    q.push_back(t);
                }
            }
        }
        for (StateId id = 0; id < n; ++id)
            if (!seen[id]) v.push_back(state_ref(id) + ": unreachable from start");
    }

    // Acyclicity via Kahn.
    {
        std::vector<std::size_t> indeg(n, 0);
        for (const State& s : d.states)
            for (auto l : kAllLabels) {
                StateId t = s.edge(l);
                if (t != kNoState && t < n) ++indeg[t];
            }
        std::deque<StateId> q;
        for (StateId id = 0; id < n; ++id)
            if (indeg[id] == 0) q.push_back(id);
        std::size_t emitted = 0;
        while (!q.empty()) {
            StateId s = q.front();
            q.pop_front();
            ++emitted;
            for (auto l : kAllLabels) {
                StateId t = d.states[s].edge(l);
                if (t != kNoState && t < n && --indeg[t] == 0) q.push_back(t);
            }
        }
        if (emitted != n) v.push_back("graph contains a cycle");
    }
    return v;
}

std::optional<Bits> decode(const MooreSchematic& d, const Bits& code, DecodeFailure* failure) {
    auto fail = [&](std::size_t pos, const char* why) -> std::optional<Bits> {
        if (failure) *failure = {pos, why};
        return std::nullopt;
    };
    StateId s = d.start;
    Bits out;
    std::size_t i = 0;
    for (;;) {
        const State& st = d.states[s];
        if (st.output != OutputSymbol::Blank) out.push_back(output_char(st.output));

        if (st.has_conditional()) {
            if (i < code.size()) {
                char b = code[i++];
                if (b != '0' && b != '1') return fail(i - 1, "code bit outside {0,1}");
                StateId t = st.edge(b == '0' ? TransitionLabel::OnZero : TransitionLabel::OnOne);
                if (t == kNoState) return fail(i - 1, "no conditional edge for next code bit");
                s = t;
            } else if (st.has_edge(TransitionLabel::OnEnd)) {
                return out;  // stop: ⊥ taken to the final state
            } else {
                return fail(i, "input exhausted at a branch without an end edge");
            }
        } else if (st.has_edge(TransitionLabel::Unconditional)) {
            if (st.has_edge(TransitionLabel::OnEnd)) {
                if (i < code.size()) {
                    char m = code[i++];
                    if (m != '1') return fail(i - 1, "continue marker must be 1");
                    s = st.edge(TransitionLabel::Unconditional);
                } else {
                    return out;
                }
            } else {
                s = st.edge(TransitionLabel::Unconditional);  // consumes nothing
            }
        } else if (st.has_edge(TransitionLabel::OnEnd)) {
            if (i < code.size()) return fail(i, "input remains at end of path");
            return out;
        } else {
            if (i < code.size()) return fail(i, "input remains at a final state");
            return out;
        }
    }
}

std::vector<std::set<Bits>> gen_sets_all(const MooreSchematic& d) {
    // Bottom-up over the reverse topological order, so successors are
    // ready when a state is visited and no recursion depth is needed.
    std::vector<std::set<Bits>> sets(d.states.size());
    std::vector<StateId> order = topological_order(d);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        StateId a = *it;
        const State& st = d.states[a];
        std::set<Bits>& result = sets[a];
        if (!st.has_any_edge()) {
            result.insert(Bits{});
            continue;
        }
        for (auto l : kAllLabels) {
            StateId t = st.edge(l);
            if (t == kNoState) continue;
            const std::set<Bits>& sub = sets[t];
            if (st.output == OutputSymbol::Blank) {
                result.insert(sub.begin(), sub.end());
            } else {
                char c = output_char(st.output);
                for (const auto& tail : sub) result.insert(c + tail);
            }
        }
    }
    return sets;
}

std::set<Bits> gen_set(const MooreSchematic& d, StateId a) {
    if (a >= d.states.size()) throw std::invalid_argument("unknown state id " + std::to_string(a));
    return gen_sets_all(d)[a];
}

std::vector<PathRecord> enumerate_paths(const MooreSchematic& d) {
    std::vector<PathRecord> result;
    std::vector<StateId> path;
    Bits output;

    // Explicit stack: (state, next label index to try, output length on entry).
    struct Frame {
        StateId s;
        std::size_t next_label;
    };
    std::vector<Frame> stack;
    auto enter = [&](StateId s) {
        path.push_back(s);
        const State& st = d.states[s];
        if (st.output != OutputSymbol::Blank) output.push_back(output_char(st.output));
        stack.push_back({s, 0});
        if (!st.has_any_edge()) result.push_back({path, output});
    };
    auto leave = [&]() {
        const State& st = d.states[stack.back().s];
        if (st.output != OutputSymbol::Blank) output.pop_back();
        path.pop_back();
        stack.pop_back();
    };
    enter(d.start);
    while (!stack.empty()) {
        Frame& f = stack.back();
        const State& st = d.states[f.s];
        StateId next = kNoState;
        while (f.next_label < 4) {
            next = st.edge(kAllLabels[f.next_label++]);
            if (next != kNoState) break;
            next = kNoState;
        }
        if (next == kNoState)
            leave();
        else
            enter(next);
    }
    return result;
}

std::optional<std::size_t> hamming(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) return std::nullopt;
    std::size_t dist = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++dist;
    return dist;
}

std::size_t output_state_count(const MooreSchematic& d) {
    std::size_t c = 0;
    for (const State& s : d.states)
        if (s.output != OutputSymbol::Blank) ++c;
    return c;
}

std::vector<StateId> topological_order(const MooreSchematic& d) {
    const std::size_t n = d.states.size();
    std::vector<std::size_t> indeg(n, 0);
    for (const State& s : d.states)
        for (auto l : kAllLabels) {
            StateId t = s.edge(l);
            if (t != kNoState) ++indeg[t];
        }
    std::set<StateId> ready;  // ascending-id tie-break
    for (StateId id = 0; id < n; ++id)
        if (indeg[id] == 0) ready.insert(id);
    std::vector<StateId> order;
    order.reserve(n);
    while (!ready.empty()) {
        StateId s = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(s);
        for (auto l : kAllLabels) {
            StateId t = d.states[s].edge(l);
            if (t != kNoState && --indeg[t] == 0) ready.insert(t);
        }
    }
    if (order.size() != n) throw std::runtime_error("cycle detected in schematic graph");
    return order;
}

void assign_bfs_depths(std::vector<State>& states, StateId start) {
    for (State& s : states) s.depth = 0;
    std::vector<bool> seen(states.size(), false);
    std::deque<StateId> q{start};
    seen[start] = true;
    while (!q.empty()) {
        StateId s = q.front();
        q.pop_front();
        for (auto l : kAllLabels) {
            StateId t = states[s].edge(l);
            if (t != kNoState && !seen[t]) {
                seen[t] = true;
                states[t].depth = states[s].depth + 1;
                q.push_back(t);
            }
        }
    }
}

}  // namespace ccss
