// Command-line surface: construct / encode / decode / verify / stats /
// simulate / partition.  Exit codes: 0 success, 1 data error, 2 usage.

#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccss/analysis.hpp"
#include "ccss/construct.hpp"
#include "ccss/core.hpp"
#include "ccss/encode.hpp"
#include "ccss/io.hpp"
#include "ccss/partition.hpp"
#include "ccss/simulate.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ccss;

namespace {

struct CommonOpts {
    std::string mode = "bitlines";
    bool dedupe = false;
    std::string format = "text";
    std::uint64_t seed = 1;
};

CorpusMode corpus_mode(const CommonOpts& o) {
    return o.mode == "bytes" ? CorpusMode::Bytes : CorpusMode::Bitlines;
}

Corpus load_corpus(const std::vector<std::string>& files, const CommonOpts& o) {
    std::vector<fs::path> paths(files.begin(), files.end());
    return read_corpus(paths, corpus_mode(o), o.dedupe);
}

MooreSchematic load_schematic(const std::string& file) {
    return read_schematic(read_file(file));
}

json report_json(const VerificationReport& r) {
    json j;
    j["n"] = r.n;
    j["z"] = r.z;
    j["max_code_len"] = r.max_code_len;
    j["code_len_lower_bound"] = r.code_len_lower_bound;
    if (r.epsilon_measured)
        j["epsilon"] = *r.epsilon_measured;
    else
        j["epsilon"] = "failure";
    if (r.first_failed_item) j["first_failed_item"] = *r.first_failed_item;
    j["gen_violations"] = json::array();
    for (auto [a, b] : r.minimality_gen_violations) j["gen_violations"].push_back({a, b});
    j["prefix_violations"] = json::array();
    for (auto [a, b] : r.minimality_prefix_violations) j["prefix_violations"].push_back({a, b});
    if (r.prefix_check_capped) j["prefix_check_capped"] = true;
    j["path_count"] = r.path_count;
    j["states"] = r.schematic_states;
    j["output_states"] = r.output_states;
    return j;
}

void print_report_text(const VerificationReport& r, std::ostream& out) {
    out << "n: " << r.n << "\n";
    out << "z: " << r.z << "\n";
    out << "max code length: " << r.max_code_len << "\n";
    out << "code length lower bound: " << r.code_len_lower_bound << "\n";
    if (r.epsilon_measured)
        out << "epsilon: " << *r.epsilon_measured << "\n";
    else
        out << "epsilon: failure (item " << *r.first_failed_item << " not reconstructed)\n";
    out << "gen-set violations: " << r.minimality_gen_violations.size() << "\n";
    out << "prefix-path violations: " << r.minimality_prefix_violations.size()
        << (r.prefix_check_capped ? " (enumeration capped)" : "") << "\n";
    out << "paths: " << r.path_count << "\n";
    out << "states: " << r.schematic_states << " (output states: " << r.output_states << ")\n";
}

std::vector<std::string> definition_violations(const VerificationReport& r) {
    std::vector<std::string> v;
    if (!r.epsilon_measured)
        v.push_back("item " + std::to_string(*r.first_failed_item) +
                    " rejected or not reconstructed");
    else if (*r.epsilon_measured != 0.0)
        v.push_back("nonzero reconstruction error");
    if (r.max_code_len > max_code_bound(r.n))
        v.push_back("max code length " + std::to_string(r.max_code_len) +
                    " exceeds ceil(log2 n) = " + std::to_string(max_code_bound(r.n)));
    if (!r.minimality_gen_violations.empty()) v.push_back("equal gen-set state pairs exist");
    if (!r.minimality_prefix_violations.empty())
        v.push_back("equal-output prefix path pairs exist");
    if (r.path_count != r.n)
        v.push_back("path count " + std::to_string(r.path_count) + " differs from n = " +
                    std::to_string(r.n));
    return v;
}

Bits parse_bits_arg(const std::string& s) {
    for (char c : s)
        if (c != '0' && c != '1') throw IoError("input string contains a character outside {0,1}");
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Corpus-compressed streaming schemes over acyclic Moore machines"};
    app.require_subcommand(1);
    CommonOpts common;
    app.add_option("--mode", common.mode, "Corpus input mode")
        ->check(CLI::IsMember({"bitlines", "bytes"}));
    app.add_flag("--dedupe", common.dedupe, "Drop duplicate corpus items instead of failing");
    app.add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", common.seed, "Random seed (simulate playlist generation)");

    // construct
    auto* cmd_construct = app.add_subcommand("construct", "Build a schematic from a corpus");
    std::vector<std::string> corpus_files;
    std::string out_file;
    cmd_construct->add_option("corpus", corpus_files, "Corpus file(s)")->required();
    cmd_construct->add_option("-o,--output", out_file, "Schematic output file")->required();

    // encode
    auto* cmd_encode = app.add_subcommand("encode", "Encode one corpus string");
    std::string schematic_file, input_bits, code_out;
    cmd_encode->add_option("--schematic", schematic_file, "Schematic file")->required();
    cmd_encode->add_option("--input", input_bits, "Bit string to encode")->required();
    cmd_encode->add_option("-o,--output", code_out, "Framed code output file");

    // decode
    auto* cmd_decode = app.add_subcommand("decode", "Decode a framed code");
    std::string decode_schematic, code_file;
    cmd_decode->add_option("--schematic", decode_schematic, "Schematic file")->required();
    cmd_decode->add_option("--code", code_file, "Framed code file")->required();

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "Measure a schematic against a corpus");
    std::string verify_schematic;
    std::vector<std::string> verify_corpus;
    cmd_verify->add_option("--schematic", verify_schematic, "Schematic file")->required();
    cmd_verify->add_option("--corpus", verify_corpus, "Corpus file(s)")->required();

    // stats
    auto* cmd_stats = app.add_subcommand("stats", "Construct and report corpus statistics");
    std::vector<std::string> stats_corpus;
    cmd_stats->add_option("corpus", stats_corpus, "Corpus file(s)")->required();

    // simulate
    auto* cmd_sim = app.add_subcommand("simulate", "Bandwidth scenario: naive vs coded delivery");
    std::vector<std::string> sim_corpus;
    double sim_ratio = 2.0;
    std::size_t sim_requests = 0;
    std::string sim_playlist;
    std::int64_t sim_framing = -1;
    bool sim_curves = false;
    cmd_sim->add_option("corpus", sim_corpus, "Corpus file(s)")->required();
    cmd_sim->add_option("--ratio", sim_ratio, "Bandwidth ratio r (> 1)");
    cmd_sim->add_option("--requests", sim_requests, "Uniform playlist length (uses --seed)");
    cmd_sim->add_option("--playlist", sim_playlist, "Explicit comma-separated item indices");
    cmd_sim->add_option("--framing-overhead", sim_framing,
                        "Flat framing bits per message (default: exact wire framing)");
    cmd_sim->add_flag("--curves", sim_curves, "Include per-request curves in the output");

    // partition
    auto* cmd_part = app.add_subcommand("partition", "Partition-instance tooling");
    cmd_part->require_subcommand(1);
    auto* cmd_check = cmd_part->add_subcommand("check", "Validate an instance / a partitioning");
    std::string inst_file, assign_file;
    cmd_check->add_option("instance", inst_file, "PARTINST file")->required();
    cmd_check->add_option("--assignment", assign_file, "Partitioning file: '<node> <partition>' lines");
    auto* cmd_solve = cmd_part->add_subcommand("solve", "Minimal k by exhaustive enumeration");
    std::string solve_file;
    std::size_t solve_cap = 12;
    cmd_solve->add_option("instance", solve_file, "PARTINST file")->required();
    cmd_solve->add_option("--max-nodes", solve_cap, "Enumeration cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    }
    const bool as_json = common.format == "json";

    try {
        if (*cmd_construct) {
            Corpus corpus = load_corpus(corpus_files, common);
            auto result = construct(corpus);
            write_file(out_file, write_schematic(result.schematic));
            const auto& t = result.trace;
            if (as_json) {
                json j;
                j["states"] = result.schematic.states.size();
                j["output_states"] = output_state_count(result.schematic);
                j["stage1_states"] = t.stage1_state_count;
                j["merges"] = t.merges.size();
                j["collapsed_start"] = t.collapsed_start;
                j["paths"] = corpus.n();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << output_state_count(result.schematic) << " states ("
                          << result.schematic.states.size() << " including blanks)\n"
                          << "stage 1 states: " << t.stage1_state_count << "\n"
                          << "merges: " << t.merges.size() << "\n"
                          << "start collapsed: " << (t.collapsed_start ? "yes" : "no") << "\n";
            }
        } else if (*cmd_encode) {
            MooreSchematic d = load_schematic(schematic_file);
            EncodeFailure why;
            auto code = encode(d, d.aux, parse_bits_arg(input_bits), &why);
            if (!code) {
                std::cerr << "rejected at bit " << why.bit_index << ": " << why.reason << "\n";
                return 1;
            }
            auto framed = frame_code(*code);
            if (code_out.empty()) {
                std::cout.write(reinterpret_cast<const char*>(framed.data()),
                                static_cast<std::streamsize>(framed.size()));
            } else {
                write_file_bytes(code_out, framed);
                std::cout << code->bits.size() << " code bits, " << framed.size()
                          << " framed bytes\n";
            }
        } else if (*cmd_decode) {
            MooreSchematic d = load_schematic(decode_schematic);
            StreamCode code = unframe_code(read_file_bytes(code_file));
            DecodeFailure why;
            auto bits = decode(d, code.bits, &why);
            if (!bits) {
                std::cerr << "invalid code at bit " << why.input_pos << ": " << why.reason << "\n";
                return 1;
            }
            std::cout << *bits << "\n";
        } else if (*cmd_verify) {
            MooreSchematic d = load_schematic(verify_schematic);
            Corpus corpus = load_corpus(verify_corpus, common);
            VerificationReport r = verify(d, corpus);
            if (as_json)
                std::cout << report_json(r).dump(2) << "\n";
            else
                print_report_text(r, std::cout);
            auto bad = definition_violations(r);
            for (const auto& b : bad) std::cerr << "violation: " << b << "\n";
            if (!bad.empty()) return 1;
        } else if (*cmd_stats) {
            Corpus corpus = load_corpus(stats_corpus, common);
            auto result = construct(corpus);
            VerificationReport r = verify(result.schematic, corpus);
            Bits extracted = extract_supersequence(result.schematic);
            Bits greedy = greedy_scs(corpus.items);
            double gap = static_cast<double>(max_code_bound(corpus.n())) -
                         code_length_lower_bound(corpus.n());
            if (as_json) {
                json j = report_json(r);
                j["extracted_supersequence_len"] = extracted.size();
                j["greedy_supersequence_len"] = greedy.size();
                j["optimality_gap"] = gap;
                std::cout << j.dump(2) << "\n";
            } else {
                print_report_text(r, std::cout);
                std::cout << "extracted supersequence length: " << extracted.size() << "\n"
                          << "greedy supersequence length: " << greedy.size() << "\n"
                          << "optimality gap: " << gap << "\n";
            }
        } else if (*cmd_sim) {
            Corpus corpus = load_corpus(sim_corpus, common);
            SimulationConfig cfg;
            cfg.bandwidth_ratio = sim_ratio;
            if (sim_framing >= 0) cfg.framing_overhead_bits = static_cast<std::uint32_t>(sim_framing);
            if (!sim_playlist.empty()) {
                std::stringstream ss(sim_playlist);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    cfg.playlist.push_back(std::stoull(tok));
            } else if (sim_requests > 0) {
                std::mt19937_64 rng(common.seed);
                std::uniform_int_distribution<std::size_t> pick(0, corpus.n() - 1);
                cfg.playlist.reserve(sim_requests);
                for (std::size_t i = 0; i < sim_requests; ++i) cfg.playlist.push_back(pick(rng));
            } else {
                for (std::size_t i = 0; i < corpus.n(); ++i) cfg.playlist.push_back(i);
            }
            SimulationReport r = simulate(corpus, cfg);
            if (as_json) {
                json j;
                j["setup_bits"] = r.setup_bits;
                j["requests"] = cfg.playlist.size();
                j["max_naive_payload_bits"] = r.max_naive_payload_bits;
                j["max_ccss_payload_bits"] = r.max_ccss_payload_bits;
                j["max_payload_reduction_percent"] = r.max_payload_reduction_percent;
                j["target_payload_bits"] = r.target_payload_bits;
                j["meets_bandwidth_target"] = r.meets_bandwidth_target;
                j["total_naive_bits"] =
                    r.cumulative_naive.empty() ? 0 : r.cumulative_naive.back();
                j["total_ccss_bits"] = r.cumulative_ccss.empty() ? r.setup_bits
                                                                 : r.cumulative_ccss.back();
                if (r.break_even_request_index)
                    j["break_even_request_index"] = *r.break_even_request_index;
                else
                    j["break_even_request_index"] = nullptr;
                if (sim_curves) {
                    j["cumulative_naive"] = r.cumulative_naive;
                    j["cumulative_ccss"] = r.cumulative_ccss;
                }
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "setup bits: " << r.setup_bits << "\n"
                          << "requests: " << cfg.playlist.size() << "\n"
                          << "max payload bits: naive " << r.max_naive_payload_bits << ", coded "
                          << r.max_ccss_payload_bits << " (" << r.max_payload_reduction_percent
                          << "% reduction)\n"
                          << "target payload bits (z/r): " << r.target_payload_bits
                          << (r.meets_bandwidth_target ? " (met)\n" : " (not met)\n");
                if (!r.cumulative_naive.empty())
                    std::cout << "total bits: naive " << r.cumulative_naive.back() << ", coded "
                              << r.cumulative_ccss.back() << "\n";
                if (r.break_even_request_index)
                    std::cout << "break-even request index: " << *r.break_even_request_index
                              << "\n";
                else
                    std::cout << "break-even request index: none\n";
            }
        } else if (*cmd_check) {
            PartitionInstance inst = read_instance(read_file(inst_file));
            Partitioning part;
            bool have_assignment = !assign_file.empty();
            if (have_assignment) {
                std::istringstream in(read_file(assign_file));
                std::string line;
                std::size_t lineno = 0;
                while (std::getline(in, line)) {
                    ++lineno;
                    if (line.empty()) continue;
                    std::istringstream ls(line);
                    NodeId node;
                    std::size_t g;
                    if (!(ls >> node >> g))
                        throw IoError("assignment line " + std::to_string(lineno) +
                                      ": expected '<node> <partition>'");
                    part.assignment[node] = g;
                }
            } else {
                part = identity_partitioning(inst);
            }
            auto violations = check(inst, part, have_assignment);
            std::uint64_t cost = tau_cost(inst, part);
            if (as_json) {
                json j;
                j["nodes"] = inst.nodes.size();
                j["paths"] = inst.trace_paths.size();
                j["partitioning"] = have_assignment ? "file" : "identity";
                j["tau_cost"] = cost;
                j["tau"] = inst.tau;
                j["violations"] = violations;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "nodes: " << inst.nodes.size() << "\n"
                          << "paths: " << inst.trace_paths.size() << "\n"
                          << (have_assignment ? "assignment" : "identity partitioning")
                          << " tau cost: " << cost << " (budget " << inst.tau << ")\n";
                for (const auto& v : violations) std::cout << "violation: " << v << "\n";
            }
            if (have_assignment && !violations.empty()) return 1;
        } else if (*cmd_solve) {
            PartitionInstance inst = read_instance(read_file(solve_file));
            auto result = brute_force_min_k(inst, inst.tau, solve_cap);
            if (as_json) {
                json j;
                if (result) {
                    j["k"] = result->k;
                    json w = json::object();
                    for (auto [node, g] : result->witness.assignment)
                        w[std::to_string(node)] = g;
                    j["witness"] = w;
                } else {
                    j["k"] = nullptr;
                }
                std::cout << j.dump(2) << "\n";
            } else {
                if (result) {
                    std::cout << "minimal k: " << result->k << "\n";
                    for (auto [node, g] : result->witness.assignment)
                        std::cout << "  node " << node << " -> partition " << g << "\n";
                } else {
                    std::cout << "infeasible\n";
                }
            }
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
