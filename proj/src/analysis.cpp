#include "ccss/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "ccss/encode.hpp"

namespace ccss {

MinimalityViolations check_minimality_conditions(const MooreSchematic& d,
                                                 std::size_t max_total_prefixes) {
    MinimalityViolations out;

    // Condition 1: no two distinct states generating the same set.
    {
        std::vector<std::set<Bits>> sets = gen_sets_all(d);
        std::map<std::set<Bits>, StateId> first_with;
        for (StateId id = 0; id < d.states.size(); ++id) {
            auto [it, inserted] = first_with.emplace(std::move(sets[id]), id);
            if (!inserted) out.gen_pairs.emplace_back(it->second, id);
        }
    }

    // Condition 2: no two distinct 0/1-output states reachable by root
    // paths with equal output strings.  DFS over the DAG carrying the
    // running output; collisions are found through a global prefix map.
    {
        std::unordered_map<Bits, StateId> owner;
        std::set<std::pair<StateId, StateId>> seen_pairs;
        std::size_t visited = 0;
        Bits prefix;

        struct Frame {
            StateId s;
            std::size_t next_label;
            bool emitted;
        };
        std::vector<Frame> stack;
        auto enter = [&](StateId s) {
            const State& st = d.states[s];
            bool emitted = st.output != OutputSymbol::Blank;
            if (emitted) {
                prefix.push_back(output_char(st.output));
                ++visited;
                auto [it, inserted] = owner.emplace(prefix, s);
                if (!inserted && it->second != s) {
                    auto pair = std::minmax(it->second, s);
                    if (seen_pairs.insert({pair.first, pair.second}).second)
                        out.prefix_pairs.emplace_back(pair.first, pair.second);
                }
            }
            stack.push_back({s, 0, emitted});
        };
        enter(d.start);
        while (!stack.empty()) {
            if (visited > max_total_prefixes) {
                out.prefix_enumeration_capped = true;
                break;
            }
            Frame& f = stack.back();
            StateId next = kNoState;
            while (f.next_label < 4) {
                next = d.states[f.s].edge(kAllLabels[f.next_label++]);
                if (next != kNoState) break;
                next = kNoState;
            }
            if (next == kNoState) {
                if (f.emitted) prefix.pop_back();
                stack.pop_back();
            } else {
                enter(next);
            }
        }
    }
    return out;
}

VerificationReport verify(const MooreSchematic& d, const Corpus& corpus) {
    VerificationReport r;
    r.n = corpus.n();
    r.z = corpus.z();
    r.code_len_lower_bound = code_length_lower_bound(r.n);
    r.schematic_states = d.states.size();
    r.output_states = output_state_count(d);
    r.path_count = enumerate_paths(d).size();

    double eps = 0.0;
    bool failed = false;
    for (std::size_t i = 0; i < corpus.items.size() && !failed; ++i) {
        const Bits& item = corpus.items[i];
        auto code = encode(d, d.aux, item, nullptr);
        if (!code) {
            failed = true;
            r.first_failed_item = i;
            break;
        }
        r.max_code_len = std::max(r.max_code_len, code->bits.size());
        auto back = decode(d, code->bits);
        auto dist = back ? hamming(*back, item) : std::nullopt;
        if (!dist) {
            failed = true;
            r.first_failed_item = i;
            break;
        }
        if (!item.empty())
            eps = std::max(eps, static_cast<double>(*dist) / static_cast<double>(item.size()));
    }
    if (!failed) r.epsilon_measured = eps;

    auto viol = check_minimality_conditions(d);
    r.minimality_gen_violations = std::move(viol.gen_pairs);
    r.minimality_prefix_violations = std::move(viol.prefix_pairs);
    r.prefix_check_capped = viol.prefix_enumeration_capped;
    return r;
}

Bits extract_supersequence(const MooreSchematic& d,
                           const std::optional<std::set<StateId>>& restrict_to) {
    Bits s;
    for (StateId id : topological_order(d)) {
        if (restrict_to && !restrict_to->count(id)) continue;
        const State& st = d.states[id];
        if (st.output != OutputSymbol::Blank) s.push_back(output_char(st.output));
    }
    return s;
}

bool is_subsequence(const Bits& needle, const Bits& haystack) {
    std::size_t i = 0;
    for (char c : haystack) {
        if (i == needle.size()) break;
        if (needle[i] == c) ++i;
    }
    return i == needle.size();
}

Bits greedy_scs(const std::vector<Bits>& strings) {
    if (strings.empty()) throw std::invalid_argument("greedy_scs needs at least one string");
    std::vector<std::size_t> pos(strings.size(), 0);
    Bits out;
    for (;;) {
        std::size_t c0 = 0, c1 = 0;
        for (std::size_t i = 0; i < strings.size(); ++i) {
            if (pos[i] >= strings[i].size()) continue;
            (strings[i][pos[i]] == '0' ? c0 : c1)++;
        }
        if (c0 == 0 && c1 == 0) break;
        char b = c0 >= c1 ? '0' : '1';
        out.push_back(b);
        for (std::size_t i = 0; i < strings.size(); ++i)
            if (pos[i] < strings[i].size() && strings[i][pos[i]] == b) ++pos[i];
    }
    return out;
}

double code_length_lower_bound(std::size_t n) {
    return std::log2(static_cast<double>(n) + 1.0) - 1.0;
}

std::size_t max_code_bound(std::size_t n) {
    if (n <= 1) return 0;
    return static_cast<std::size_t>(std::bit_width(n - 1));
}

Bits scs_padding_string(const std::vector<Bits>& strings, std::size_t beta) {
    std::size_t total = 0, z = 0;
    for (const auto& s : strings) {
        total += s.size();
        z = std::max(z, s.size());
    }
    std::size_t log_total = total <= 1 ? 0 : std::bit_width(total - 1);
    return Bits(beta * (z * log_total + 1), '0');
}

}  // namespace ccss
