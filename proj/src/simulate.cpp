#include "ccss/simulate.hpp"

#include <stdexcept>

#include "ccss/construct.hpp"
#include "ccss/encode.hpp"
#include "ccss/io.hpp"

namespace ccss {

SimulationReport simulate(const Corpus& corpus, const SimulationConfig& config) {
    if (!(config.bandwidth_ratio > 1.0))
        throw std::invalid_argument("bandwidth ratio must be greater than 1");
    for (std::size_t idx : config.playlist)
        if (idx >= corpus.n())
            throw std::invalid_argument("playlist index " + std::to_string(idx) +
                                        " out of range for corpus of size " +
                                        std::to_string(corpus.n()));

    auto built = construct(corpus);
    auto codes = encode_all(built.schematic, corpus);

    SimulationReport r;
    r.setup_bits = static_cast<std::uint64_t>(write_schematic(built.schematic).size()) * 8;

    // Wire cost of a message carrying `payload_bits` bits.
    auto message_bits = [&](std::uint64_t payload_bits) -> std::uint64_t {
        if (config.framing_overhead_bits) return payload_bits + *config.framing_overhead_bits;
        std::uint64_t len = payload_bits, prefix = 0;
        do {
            ++prefix;
            len >>= 7;
        } while (len);
        return prefix * 8 + (payload_bits + 7) / 8 * 8;
    };

    for (const Bits& item : corpus.items)
        r.max_naive_payload_bits = std::max(r.max_naive_payload_bits,
                                            static_cast<std::uint64_t>(item.size()));
    for (const auto& [item, code] : codes)
        r.max_ccss_payload_bits = std::max(r.max_ccss_payload_bits,
                                           static_cast<std::uint64_t>(code.bits.size()));
    if (r.max_naive_payload_bits > 0)
        r.max_payload_reduction_percent =
            100.0 *
            (static_cast<double>(r.max_naive_payload_bits - r.max_ccss_payload_bits) /
             static_cast<double>(r.max_naive_payload_bits));
    r.target_payload_bits = static_cast<double>(corpus.z()) / config.bandwidth_ratio;
    r.meets_bandwidth_target =
        static_cast<double>(r.max_ccss_payload_bits) <= r.target_payload_bits;

    const std::size_t m = config.playlist.size();
    r.naive_bits_per_request.reserve(m);
    r.ccss_bits_per_request.reserve(m);
    r.cumulative_naive.reserve(m);
    r.cumulative_ccss.reserve(m);
    std::uint64_t cum_naive = 0, cum_ccss = r.setup_bits;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t idx = config.playlist[i];
        std::uint64_t naive = message_bits(corpus.items[idx].size());
        std::uint64_t ccss = message_bits(codes[idx].second.bits.size());
        r.naive_bits_per_request.push_back(naive);
        r.ccss_bits_per_request.push_back(ccss);
        cum_naive += naive;
        cum_ccss += ccss;
        r.cumulative_naive.push_back(cum_naive);
        r.cumulative_ccss.push_back(cum_ccss);
        if (!r.break_even_request_index && cum_ccss <= cum_naive)
            r.break_even_request_index = i;
    }
    return r;
}

}  // namespace ccss
