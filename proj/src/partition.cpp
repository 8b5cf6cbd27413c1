#include "ccss/partition.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ccss {

namespace {

std::uint64_t ceil_log2(std::size_t d) {
    if (d <= 1) return 0;
    return std::bit_width(d - 1);
}

struct Adjacency {
    std::unordered_map<NodeId, std::size_t> index;
    std::vector<std::vector<std::size_t>> out;
};

Adjacency adjacency(const PartitionInstance& inst) {
    Adjacency a;
    for (std::size_t i = 0; i < inst.nodes.size(); ++i) a.index.emplace(inst.nodes[i], i);
    a.out.resize(inst.nodes.size());
    for (auto [from, to] : inst.edges) {
        auto f = a.index.find(from), t = a.index.find(to);
        if (f != a.index.end() && t != a.index.end()) a.out[f->second].push_back(t->second);
    }
    return a;
}

}  // namespace

std::vector<std::string> validate_instance(const PartitionInstance& inst) {
    std::vector<std::string> v;
    std::unordered_set<NodeId> known(inst.nodes.begin(), inst.nodes.end());
    if (known.size() != inst.nodes.size()) v.push_back("duplicate node ids");
    for (auto [from, to] : inst.edges) {
        if (!known.count(from)) v.push_back("edge from unknown node " + std::to_string(from));
        if (!known.count(to)) v.push_back("edge to unknown node " + std::to_string(to));
    }
    for (NodeId n : inst.nodes)
        if (!inst.labels.count(n)) v.push_back("node " + std::to_string(n) + " has no label entry");

    std::set<std::pair<NodeId, NodeId>> edge_set(inst.edges.begin(), inst.edges.end());
    for (std::size_t p = 0; p < inst.trace_paths.size(); ++p) {
        const auto& path = inst.trace_paths[p];
        for (NodeId n : path)
            if (!known.count(n))
                v.push_back("path " + std::to_string(p) + " visits unknown node " +
                            std::to_string(n));
        for (std::size_t j = 0; j + 1 < path.size(); ++j)
            if (!edge_set.count({path[j], path[j + 1]}))
                v.push_back("path " + std::to_string(p) + " uses a missing edge " +
                            std::to_string(path[j]) + "->" + std::to_string(path[j + 1]));
    }

    // Kahn cycle check over known nodes.
    Adjacency a = adjacency(inst);
    std::vector<std::size_t> indeg(inst.nodes.size(), 0);
    for (const auto& outs : a.out)
        for (std::size_t t : outs) ++indeg[t];
    std::deque<std::size_t> q;
    for (std::size_t i = 0; i < indeg.size(); ++i)
        if (indeg[i] == 0) q.push_back(i);
    std::size_t emitted = 0;
    while (!q.empty()) {
        std::size_t s = q.front();
        q.pop_front();
        ++emitted;
        for (std::size_t t : a.out[s])
            if (--indeg[t] == 0) q.push_back(t);
    }
    if (emitted != inst.nodes.size()) v.push_back("graph contains a cycle");
    return v;
}

std::vector<std::size_t> partition_path(const PartitionInstance& inst, const Partitioning& part,
                                        std::size_t path_index) {
    if (path_index >= inst.trace_paths.size())
        throw std::out_of_range("trace path index " + std::to_string(path_index) +
                                " out of range");
    std::vector<std::size_t> seq;
    for (NodeId n : inst.trace_paths[path_index]) {
        auto it = part.assignment.find(n);
        std::size_t g = it == part.assignment.end() ? 0 : it->second;
        if (seq.empty() || seq.back() != g) seq.push_back(g);
    }
    return seq;
}

namespace {

// deg per partition over all partition paths.
std::unordered_map<std::size_t, std::set<std::size_t>> successor_sets(
    const PartitionInstance& inst, const Partitioning& part) {
    std::unordered_map<std::size_t, std::set<std::size_t>> succ;
    for (std::size_t p = 0; p < inst.trace_paths.size(); ++p) {
        auto seq = partition_path(inst, part, p);
        for (std::size_t j = 0; j + 1 < seq.size(); ++j) succ[seq[j]].insert(seq[j + 1]);
    }
    return succ;
}

}  // namespace

std::size_t partition_degree(const PartitionInstance& inst, const Partitioning& part,
                             std::size_t g) {
    auto succ = successor_sets(inst, part);
    auto it = succ.find(g);
    return it == succ.end() ? 0 : it->second.size();
}

std::uint64_t tau_cost(const PartitionInstance& inst, const Partitioning& part) {
    auto succ = successor_sets(inst, part);
    auto deg = [&](std::size_t g) -> std::size_t {
        auto it = succ.find(g);
        return it == succ.end() ? 0 : it->second.size();
    };
    std::uint64_t worst = 0;
    for (std::size_t p = 0; p < inst.trace_paths.size(); ++p) {
        std::uint64_t sum = 0;
        for (std::size_t g : partition_path(inst, part, p)) sum += ceil_log2(deg(g));
        worst = std::max(worst, sum);
    }
    return worst;
}

std::vector<std::string> check(const PartitionInstance& inst, const Partitioning& part,
                               bool strict) {
    std::vector<std::string> v;
    std::unordered_map<std::size_t, std::optional<int>> color;
    std::set<std::size_t> used;
    for (NodeId n : inst.nodes) {
        auto it = part.assignment.find(n);
        if (it == part.assignment.end()) {
            v.push_back("node " + std::to_string(n) + " is unassigned");
            continue;
        }
        std::size_t g = it->second;
        if (g < 1 || (inst.k > 0 && g > inst.k))
            v.push_back("node " + std::to_string(n) + " assigned to out-of-range partition " +
                        std::to_string(g));
        used.insert(g);
        auto label = inst.labels.count(n) ? inst.labels.at(n) : std::nullopt;
        auto [c, inserted] = color.emplace(g, label);
        if (!inserted && c->second != label)
            v.push_back("partition " + std::to_string(g) + " is not monochromatic");
    }
    if (strict && inst.k > 0 && used.size() != inst.k)
        v.push_back("partition count " + std::to_string(used.size()) + " differs from k = " +
                    std::to_string(inst.k));
    std::uint64_t cost = tau_cost(inst, part);
    if (cost > inst.tau)
        v.push_back("tau violated: cost " + std::to_string(cost) + " exceeds budget " +
                    std::to_string(inst.tau));
    return v;
}

std::optional<MinKResult> brute_force_min_k(const PartitionInstance& inst, std::uint64_t tau,
                                            std::size_t node_cap) {
    const std::size_t n = inst.nodes.size();
    if (n > node_cap)
        throw std::invalid_argument("instance has " + std::to_string(n) +
                                    " nodes, above the enumeration cap of " +
                                    std::to_string(node_cap));
    if (n == 0) return std::nullopt;

    std::vector<std::optional<int>> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = inst.labels.at(inst.nodes[i]);

    // Restricted-growth enumeration of partitions into exactly k blocks,
    // pruning non-monochromatic assignments as they form.
    std::vector<std::size_t> assign(n, 0);
    std::vector<std::optional<int>> block_color;
    std::vector<std::size_t> block_size;

    Partitioning candidate;
    auto satisfied = [&](std::size_t k) -> bool {
        candidate.assignment.clear();
        for (std::size_t i = 0; i < n; ++i) candidate.assignment[inst.nodes[i]] = assign[i] + 1;
        (void)k;
        return tau_cost(inst, candidate) <= tau;
    };

    std::optional<MinKResult> found;
    auto rec = [&](auto&& self, std::size_t i, std::size_t used, std::size_t k) -> bool {
        if (found) return true;
        if (i == n) {
            if (used == k && satisfied(k)) {
                found = MinKResult{k, candidate};
                return true;
            }
            return false;
        }
        // Remaining nodes must be able to open the missing blocks.
        if (used + (n - i) < k) return false;
        std::size_t limit = std::min(used + 1, k);
        for (std::size_t b = 0; b < limit; ++b) {
            bool fresh = b == used;
            if (!fresh && block_color[b] != label[i]) continue;
            if (fresh) {
                block_color.push_back(label[i]);
                block_size.push_back(0);
            }
            ++block_size[b];
            assign[i] = b;
            if (self(self, i + 1, fresh ? used + 1 : used, k)) return true;
            --block_size[b];
            if (fresh) {
                block_color.pop_back();
                block_size.pop_back();
            }
        }
        return false;
    };

    for (std::size_t k = 1; k <= n; ++k) {
        block_color.clear();
        block_size.clear();
        if (rec(rec, 0, 0, k)) return found;
    }
    return std::nullopt;
}

Partitioning identity_partitioning(const PartitionInstance& inst) {
    Partitioning p;
    std::size_t next = 1;
    for (NodeId n : inst.nodes) p.assignment[n] = next++;
    return p;
}

PartitionInstance schematic_to_instance(const MooreSchematic& d, std::uint64_t tau) {
    PartitionInstance inst;
    inst.tau = tau;

    std::vector<bool> included(d.states.size(), false);
    for (StateId id = 0; id < d.states.size(); ++id) {
        const State& s = d.states[id];
        bool keep = s.output != OutputSymbol::Blank || id == d.start || s.is_final;
        if (!keep) continue;
        included[id] = true;
        inst.nodes.push_back(id);
        inst.labels[id] = s.output == OutputSymbol::Blank
                              ? std::optional<int>{}
                              : std::optional<int>{s.output == OutputSymbol::BitOne ? 1 : 0};
    }
    for (StateId id = 0; id < d.states.size(); ++id) {
        if (!included[id]) continue;
        for (auto l : kAllLabels) {
            StateId t = d.states[id].edge(l);
            if (t != kNoState && included[t]) inst.edges.emplace_back(id, t);
        }
    }
    std::sort(inst.edges.begin(), inst.edges.end());
    inst.edges.erase(std::unique(inst.edges.begin(), inst.edges.end()), inst.edges.end());

    for (const PathRecord& p : enumerate_paths(d)) {
        std::vector<NodeId> path;
        StateId last_emitting = kNoState;
        for (StateId s : p.states) {
            const State& st = d.states[s];
            if (st.output != OutputSymbol::Blank || s == d.start) {
                if (!st.is_final || s == d.start) {
                    path.push_back(s);
                    last_emitting = s;
                }
            }
        }
        // The stop at a {U,⊥} junction is a signaled choice; surface it
        // by running the trace into the final node.
        if (last_emitting != kNoState &&
            d.states[last_emitting].has_edge(TransitionLabel::Unconditional)) {
            StateId fin = d.states[last_emitting].edge(TransitionLabel::OnEnd);
            if (fin != kNoState) path.push_back(fin);
        }
        if (!path.empty()) inst.trace_paths.push_back(std::move(path));
    }
    inst.k = inst.nodes.size();
    return inst;
}

}  // namespace ccss
