#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccss/core.hpp"

namespace ccss {

/// Bandwidth scenario: the constrained link carries 1/bandwidth_ratio of
/// the free-phase bandwidth, and the stream requests corpus items by
/// index.  When framing_overhead_bits is unset, each message is charged
/// its exact wire size under the frame_code format; otherwise payload
/// bits plus the flat per-message overhead.
struct SimulationConfig {
    double bandwidth_ratio = 2.0;  // must be > 1
    std::vector<std::size_t> playlist;
    std::optional<std::uint32_t> framing_overhead_bits;
};

struct SimulationReport {
    std::uint64_t setup_bits = 0;  // serialized schematic, charged at request 0
    std::vector<std::uint64_t> naive_bits_per_request;
    std::vector<std::uint64_t> ccss_bits_per_request;
    std::vector<std::uint64_t> cumulative_naive;
    std::vector<std::uint64_t> cumulative_ccss;  // includes setup_bits
    std::optional<std::size_t> break_even_request_index;

    std::uint64_t max_naive_payload_bits = 0;
    std::uint64_t max_ccss_payload_bits = 0;
    double max_payload_reduction_percent = 0.0;

    double target_payload_bits = 0.0;  // z / bandwidth_ratio
    bool meets_bandwidth_target = false;
};

/// Builds the schematic once, encodes the whole corpus, then accounts
/// per-request and cumulative bits for naive versus coded delivery.
/// The break-even index is the first request at which cumulative coded
/// bits drop to or below cumulative naive bits; it is computed from the
/// curves, never assumed.  Throws std::invalid_argument on a bad
/// config (ratio <= 1 or an out-of-range playlist index).
SimulationReport simulate(const Corpus& corpus, const SimulationConfig& config);

}  // namespace ccss
