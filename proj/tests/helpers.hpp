#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "ballspace/core.hpp"

namespace testutil {

using ballspace::BallSpace;
using ballspace::GroundSet;
using ballspace::Subset;

inline GroundSet ground(std::vector<std::string> labels) { return GroundSet(std::move(labels)); }

inline Subset subset(const GroundSet& g, std::initializer_list<const char*> labels) {
    Subset s;
    for (const char* label : labels) s = s | Subset::singleton(*g.index_of(label));
    return s;
}

inline BallSpace space(std::vector<std::string> labels,
                       std::vector<std::vector<std::string>> balls) {
    GroundSet g(std::move(labels));
    std::vector<Subset> family;
    for (const auto& ball : balls) {
        Subset s;
        for (const auto& label : ball) s = s | Subset::singleton(*g.index_of(label));
        family.push_back(s);
    }
    return BallSpace(std::move(g), std::move(family));
}

// The running examples: i1 is the two-overlapping-pairs space, i2 the chain,
// w4 the two-maximal-balls space.
inline BallSpace i1() { return space({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}}); }

inline BallSpace i2() { return space({"1", "2", "3"}, {{"1"}, {"1", "2"}, {"1", "2", "3"}}); }

inline BallSpace w4() {
    return space({"1", "2", "3", "4"}, {{"1", "2", "3"}, {"1", "2", "4"}, {"1"}, {"2"}});
}

} // namespace testutil
