#include "ccss/io.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

namespace ccss {

Corpus parse_bitlines(std::istream& in, bool dedupe) {
    std::vector<Bits> items;
    std::unordered_map<std::string, std::size_t> seen;  // item -> first line
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        for (std::size_t i = 0; i < line.size(); ++i)
            if (line[i] != '0' && line[i] != '1')
                throw IoError("line " + std::to_string(lineno) + ", column " +
                              std::to_string(i + 1) + ": character outside {0,1}");
        auto [it, inserted] = seen.emplace(line, lineno);
        if (!inserted) {
            if (dedupe) continue;
            throw IoError("duplicate corpus item on lines " + std::to_string(it->second) +
                          " and " + std::to_string(lineno));
        }
        items.push_back(line);
    }
    if (items.empty()) throw IoError("empty corpus input");
    Corpus c;
    c.items = std::move(items);
    return c;
}

Bits bits_from_bytes(const std::vector<std::uint8_t>& bytes) {
    Bits b;
    b.reserve(bytes.size() * 8);
    for (std::uint8_t byte : bytes)
        for (int i = 7; i >= 0; --i) b.push_back((byte >> i) & 1u ? '1' : '0');
    return b;
}

Corpus read_corpus(const std::vector<std::filesystem::path>& files, CorpusMode mode,
                   bool dedupe) {
    if (files.empty()) throw IoError("no corpus input files");
    if (mode == CorpusMode::Bitlines) {
        if (files.size() != 1) throw IoError("bitlines mode takes exactly one file");
        std::ifstream in(files[0]);
        if (!in) throw IoError("cannot open " + files[0].string());
        return parse_bitlines(in, dedupe);
    }
    std::vector<Bits> items;
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < files.size(); ++i) {
        Bits item = bits_from_bytes(read_file_bytes(files[i]));
        auto [it, inserted] = seen.emplace(item, i);
        if (!inserted) {
            if (dedupe) continue;
            throw IoError("duplicate corpus item in files " + files[it->second].string() +
                          " and " + files[i].string());
        }
        items.push_back(std::move(item));
    }
    if (items.empty()) throw IoError("empty corpus input");
    Corpus c;
    c.items = std::move(items);
    return c;
}

namespace {

// Serialization BFS with child order (0, 1, U, E).
std::vector<StateId> canonical_order(const MooreSchematic& d) {
    std::vector<bool> seen(d.states.size(), false);
    std::deque<StateId> q{d.start};
    seen[d.start] = true;
    std::vector<StateId> order;
    order.reserve(d.states.size());
    while (!q.empty()) {
        StateId s = q.front();
        q.pop_front();
        order.push_back(s);
        for (auto l : kAllLabels) {
            StateId t = d.states[s].edge(l);
            if (t != kNoState && !seen[t]) {
                seen[t] = true;
                q.push_back(t);
            }
        }
    }
    return order;
}

}  // namespace

MooreSchematic canonicalize(const MooreSchematic& d) {
    std::vector<StateId> order = canonical_order(d);
    if (order.size() != d.states.size())
        throw IoError("schematic has unreachable states; cannot canonicalize");
    std::vector<StateId> remap(d.states.size(), kNoState);
    for (StateId i = 0; i < order.size(); ++i) remap[order[i]] = i;
    MooreSchematic out;
    out.states.resize(d.states.size());
    for (StateId old = 0; old < d.states.size(); ++old) {
        State s = d.states[old];
        for (auto l : kAllLabels) {
            StateId t = s.edge(l);
            if (t != kNoState) s.set_edge(l, remap[t]);
        }
        out.states[remap[old]] = s;
    }
    out.start = remap[d.start];
    out.aux = d.aux;
    assign_bfs_depths(out.states, out.start);
    return out;
}

std::string write_schematic(const MooreSchematic& d) {
    MooreSchematic c = canonicalize(d);
    std::string out;
    out += "CCSS-AMM v1\n";
    out += "states " + std::to_string(c.states.size()) + "\n";
    for (StateId id = 0; id < c.states.size(); ++id) {
        const State& s = c.states[id];
        out += "state " + std::to_string(id) + " ";
        out += output_char(s.output);
        out += s.is_final ? " F\n" : " -\n";
    }
    out += "start " + std::to_string(c.start) + "\n";
    for (StateId id = 0; id < c.states.size(); ++id)
        for (auto l : kAllLabels) {
            StateId t = c.states[id].edge(l);
            if (t == kNoState) continue;
            out += "edge " + std::to_string(id) + " ";
            out += label_char(l);
            out += " " + std::to_string(t) + "\n";
        }
    return out;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tok;
    std::istringstream in(line);
    std::string t;
    while (in >> t) tok.push_back(t);
    return tok;
}

std::uint64_t parse_uint(const std::string& s, const char* what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw IoError(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

}  // namespace

MooreSchematic read_schematic(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };
    auto fail = [&](const std::string& why) -> IoError {
        return IoError("line " + std::to_string(lineno) + ": " + why);
    };

    if (!next_line() || line != "CCSS-AMM v1") throw fail("expected header 'CCSS-AMM v1'");
    if (!next_line()) throw fail("expected 'states <count>'");
    auto tok = split_ws(line);
    if (tok.size() != 2 || tok[0] != "states") throw fail("expected 'states <count>'");
    std::size_t count = parse_uint(tok[1], "state count");
    if (count == 0) throw fail("state count must be positive");

    MooreSchematic d;
    d.states.resize(count);
    std::vector<bool> defined(count, false);
    for (std::size_t i = 0; i < count; ++i) {
        if (!next_line()) throw fail("missing state line");
        tok = split_ws(line);
        if (tok.size() != 4 || tok[0] != "state") throw fail("expected 'state <id> <0|1|B> <F|->'");
        std::size_t id = parse_uint(tok[1], "state id");
        if (id >= count) throw fail("state id out of range");
        if (defined[id]) throw fail("state " + tok[1] + " defined twice");
        defined[id] = true;
        State& s = d.states[id];
        if (tok[2] == "0")
            s.output = OutputSymbol::BitZero;
        else if (tok[2] == "1")
            s.output = OutputSymbol::BitOne;
        else if (tok[2] == "B")
            s.output = OutputSymbol::Blank;
        else
            throw fail("bad output symbol '" + tok[2] + "'");
        if (tok[3] == "F")
            s.is_final = true;
        else if (tok[3] != "-")
            throw fail("bad final flag '" + tok[3] + "'");
    }
    if (!next_line()) throw fail("expected 'start <id>'");
    tok = split_ws(line);
    if (tok.size() != 2 || tok[0] != "start") throw fail("expected 'start <id>'");
    std::size_t start = parse_uint(tok[1], "start id");
    if (start >= count) throw fail("start id out of range");
    d.start = static_cast<StateId>(start);

    while (next_line()) {
        tok = split_ws(line);
        if (tok.size() != 4 || tok[0] != "edge") throw fail("expected 'edge <from> <label> <to>'");
        std::size_t from = parse_uint(tok[1], "edge source");
        std::size_t to = parse_uint(tok[3], "edge target");
        if (from >= count || to >= count) throw fail("edge endpoint out of range");
        TransitionLabel l;
        if (tok[2] == "0")
            l = TransitionLabel::OnZero;
        else if (tok[2] == "1")
            l = TransitionLabel::OnOne;
        else if (tok[2] == "U")
            l = TransitionLabel::Unconditional;
        else if (tok[2] == "E")
            l = TransitionLabel::OnEnd;
        else
            throw fail("bad edge label '" + tok[2] + "'");
        if (d.states[from].has_edge(l)) throw fail("duplicate edge label on state " + tok[1]);
        d.states[from].set_edge(l, static_cast<StateId>(to));
    }

    auto violations = validate_schematic(d);
    if (!violations.empty()) throw IoError("invalid schematic: " + violations.front());
    assign_bfs_depths(d.states, d.start);
    return d;
}

std::vector<std::uint8_t> frame_code(const StreamCode& code) {
    std::vector<std::uint8_t> out;
    std::uint64_t len = code.bits.size();
    do {
        std::uint8_t byte = len & 0x7f;
        len >>= 7;
        if (len) byte |= 0x80;
        out.push_back(byte);
    } while (len);
    std::uint8_t cur = 0;
    int used = 0;
    for (char b : code.bits) {
        cur = static_cast<std::uint8_t>(cur << 1) | (b == '1' ? 1u : 0u);
        if (++used == 8) {
            out.push_back(cur);
            cur = 0;
            used = 0;
        }
    }
    if (used) out.push_back(static_cast<std::uint8_t>(cur << (8 - used)));
    return out;
}

StreamCode unframe_code(const std::vector<std::uint8_t>& bytes) {
    std::size_t pos = 0;
    std::uint64_t len = 0;
    int shift = 0;
    for (;;) {
        if (pos >= bytes.size()) throw IoError("truncated frame: unterminated length prefix");
        std::uint8_t byte = bytes[pos++];
        if (shift >= 63 && (byte & 0x7f) > 1) throw IoError("frame length overflows");
        len |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
        if (!(byte & 0x80)) break;
        shift += 7;
    }
    std::size_t payload = static_cast<std::size_t>((len + 7) / 8);
    if (bytes.size() - pos < payload) throw IoError("truncated frame: missing payload bytes");
    if (bytes.size() - pos > payload) throw IoError("trailing bytes after frame");
    StreamCode code;
    code.bits.reserve(len);
    for (std::uint64_t i = 0; i < len; ++i) {
        std::uint8_t byte = bytes[pos + i / 8];
        code.bits.push_back((byte >> (7 - i % 8)) & 1u ? '1' : '0');
    }
    if (len % 8) {
        std::uint8_t last = bytes[pos + payload - 1];
        if (last & ((1u << (8 - len % 8)) - 1u)) throw IoError("nonzero padding bits in frame");
    }
    return code;
}

std::string write_instance(const PartitionInstance& inst) {
    std::string out = "PARTINST v1\n";
    std::vector<NodeId> nodes = inst.nodes;
    std::sort(nodes.begin(), nodes.end());
    for (NodeId n : nodes) {
        auto label = inst.labels.at(n);
        out += "node " + std::to_string(n) + " " + (label ? std::to_string(*label) : "-") + "\n";
    }
    auto edges = inst.edges;
    std::sort(edges.begin(), edges.end());
    for (auto [f, t] : edges)
        out += "edge " + std::to_string(f) + " " + std::to_string(t) + "\n";
    for (std::size_t p = 0; p < inst.trace_paths.size(); ++p) {
        out += "path " + std::to_string(p);
        for (NodeId n : inst.trace_paths[p]) out += " " + std::to_string(n);
        out += "\n";
    }
    out += "tau " + std::to_string(inst.tau) + "\n";
    out += "k " + std::to_string(inst.k) + "\n";
    return out;
}

PartitionInstance read_instance(std::string_view text) {
    std::istringstream in{std::string(text)};
    PartitionInstance inst;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fail = [&](const std::string& why) -> IoError {
            return IoError("line " + std::to_string(lineno) + ": " + why);
        };
        auto tok = split_ws(line);
        if (!header) {
            if (line != "PARTINST v1") throw fail("expected header 'PARTINST v1'");
            header = true;
            continue;
        }
        if (tok[0] == "node") {
            if (tok.size() != 3) throw fail("expected 'node <id> <label>'");
            NodeId id = static_cast<NodeId>(parse_uint(tok[1], "node id"));
            if (inst.labels.count(id)) throw fail("node " + tok[1] + " defined twice");
            inst.nodes.push_back(id);
            if (tok[2] == "0")
                inst.labels[id] = 0;
            else if (tok[2] == "1")
                inst.labels[id] = 1;
            else if (tok[2] == "-")
                inst.labels[id] = std::nullopt;
            else
                throw fail("bad label '" + tok[2] + "'");
        } else if (tok[0] == "edge") {
            if (tok.size() != 3) throw fail("expected 'edge <from> <to>'");
            inst.edges.emplace_back(static_cast<NodeId>(parse_uint(tok[1], "edge source")),
                                    static_cast<NodeId>(parse_uint(tok[2], "edge target")));
        } else if (tok[0] == "path") {
            if (tok.size() < 2) throw fail("expected 'path <id> <nodes...>'");
            std::vector<NodeId> path;
            for (std::size_t i = 2; i < tok.size(); ++i)
                path.push_back(static_cast<NodeId>(parse_uint(tok[i], "path node")));
            inst.trace_paths.push_back(std::move(path));
        } else if (tok[0] == "tau") {
            if (tok.size() != 2) throw fail("expected 'tau <int>'");
            inst.tau = parse_uint(tok[1], "tau");
        } else if (tok[0] == "k") {
            if (tok.size() != 2) throw fail("expected 'k <int>'");
            inst.k = parse_uint(tok[1], "k");
        } else {
            throw fail("unknown directive '" + tok[0] + "'");
        }
    }
    if (!header) throw IoError("missing PARTINST v1 header");
    auto violations = validate_instance(inst);
    if (!violations.empty()) throw IoError("invalid instance: " + violations.front());
    return inst;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& p) {
    std::string s = read_file(p);
    return {s.begin(), s.end()};
}

void write_file(const std::filesystem::path& p, std::string_view data) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open " + p.string() + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

void write_file_bytes(const std::filesystem::path& p, const std::vector<std::uint8_t>& data) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open " + p.string() + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

}  // namespace ccss
