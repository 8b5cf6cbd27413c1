#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ccss/core.hpp"

namespace ccss {

struct EncodeFailure {
    std::size_t bit_index = 0;  // first diverging position in the input string
    std::string reason;
};

/// Walks the unique path emitting `item` and records one bit per
/// junction: the branch bit at a conditional junction, the continue
/// marker 1 at an {Unconditional, OnEnd} junction, nothing on a plain
/// unconditional step.  Returns nullopt (Rejected) when `item` is not in
/// the corpus the machine was built from; `failure` then carries the
/// first diverging bit index.  decode(d, encode(d, aux, item)) == item.
std::optional<StreamCode> encode(const MooreSchematic& d, const std::vector<std::uint8_t>& aux,
                                 const Bits& item, EncodeFailure* failure = nullptr);

/// One code per corpus item, in corpus order.  The corpus must be the
/// one the machine was built from; a Rejected here is an internal bug
/// and throws std::logic_error.
std::vector<std::pair<Bits, StreamCode>> encode_all(const MooreSchematic& d, const Corpus& corpus);

}  // namespace ccss
