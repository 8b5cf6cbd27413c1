#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccss/core.hpp"
#include "ccss/partition.hpp"

namespace ccss {

enum class CorpusMode { Bitlines, Bytes };

/// Thrown for malformed input data (bad characters, duplicates, framing
/// or format errors).  The message names the offending position.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bitlines mode: newline-delimited lines of '0'/'1', one corpus item
/// per line (an empty line is the empty string).  Duplicates are
/// rejected with both line numbers unless `dedupe` is set.
Corpus parse_bitlines(std::istream& in, bool dedupe = false);

/// Bytes mode: each input blob is one item, bits taken MSB-first.
Bits bits_from_bytes(const std::vector<std::uint8_t>& bytes);

/// Reads a corpus from files: bitlines mode takes exactly one file;
/// bytes mode takes one file per item.
Corpus read_corpus(const std::vector<std::filesystem::path>& files, CorpusMode mode,
                   bool dedupe = false);

/// Canonical text serialization (CCSS-AMM v1).  States are relabeled by
/// BFS from the start with child order (0, 1, U, E), so equal machines
/// serialize byte-identically regardless of their internal ids.
std::string write_schematic(const MooreSchematic& d);

/// Parses and validates; throws IoError on version mismatch or
/// malformed lines, and reports structural violations found after the
/// parse.
MooreSchematic read_schematic(std::string_view text);

/// Returns `d` with canonical ids (the relabeling write_schematic uses).
MooreSchematic canonicalize(const MooreSchematic& d);

/// Length-prefix framing: LEB128 bit count, then the bits packed
/// MSB-first, zero padding in the last byte.
std::vector<std::uint8_t> frame_code(const StreamCode& code);

/// Inverse of frame_code; rejects truncated frames, trailing bytes and
/// nonzero padding bits.
StreamCode unframe_code(const std::vector<std::uint8_t>& bytes);

/// PARTINST v1 text format.  Labels are `0`, `1` or `-` (unlabeled).
std::string write_instance(const PartitionInstance& inst);
PartitionInstance read_instance(std::string_view text);

/// File helpers used by the CLI.
std::string read_file(const std::filesystem::path& p);
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::string_view data);
void write_file_bytes(const std::filesystem::path& p, const std::vector<std::uint8_t>& data);

}  // namespace ccss
