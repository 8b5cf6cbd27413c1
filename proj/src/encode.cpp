#include "ccss/encode.hpp"

#include <cassert>
#include <stdexcept>

namespace ccss {

std::optional<StreamCode> encode(const MooreSchematic& d, const std::vector<std::uint8_t>& aux,
                                 const Bits& item, EncodeFailure* failure) {
    (void)aux;  // empty for this scheme
    auto reject = [&](std::size_t pos, const char* why) -> std::optional<StreamCode> {
        if (failure) *failure = {pos, why};
        return std::nullopt;
    };

    StateId s = d.start;
    Bits code;
    std::size_t idx = 0;
    {
        const State& st = d.states[s];
        if (st.output != OutputSymbol::Blank) {
            if (item.empty() || item[0] != output_char(st.output))
                return reject(0, "start state output does not match first bit");
            idx = 1;
        }
    }
    while (idx < item.size()) {
        const char b = item[idx];
        if (b != '0' && b != '1') return reject(idx, "item bit outside {0,1}");
        const State& st = d.states[s];
        if (st.has_conditional()) {
            StateId t = st.edge(b == '0' ? TransitionLabel::OnZero : TransitionLabel::OnOne);
            if (t == kNoState) return reject(idx, "no branch emits the next bit");
            assert(output_char(d.states[t].output) == b);
            code.push_back(b);
            s = t;
        } else if (st.has_edge(TransitionLabel::Unconditional)) {
            StateId t = st.edge(TransitionLabel::Unconditional);
            if (output_char(d.states[t].output) != b)
                return reject(idx, "unconditional successor outputs the other bit");
            if (st.has_edge(TransitionLabel::OnEnd)) code.push_back('1');  // continue marker
            s = t;
        } else {
            return reject(idx, "path ends before the string does");
        }
        ++idx;
    }
    const State& last = d.states[s];
    if (!last.has_edge(TransitionLabel::OnEnd) && !last.is_final)
        return reject(item.size(), "no end transition at the last state");
    return StreamCode{std::move(code)};
}

std::vector<std::pair<Bits, StreamCode>> encode_all(const MooreSchematic& d,
                                                    const Corpus& corpus) {
    std::vector<std::pair<Bits, StreamCode>> result;
    result.reserve(corpus.items.size());
    for (const Bits& item : corpus.items) {
        EncodeFailure why;
        auto code = encode(d, d.aux, item, &why);
        if (!code)
            throw std::logic_error("encode rejected corpus item at bit " +
                                   std::to_string(why.bit_index) + ": " + why.reason);
        result.emplace_back(item, std::move(*code));
    }
    return result;
}

}  // namespace ccss
