#pragma once

#include "apa/core.hpp"

namespace fixtures {

inline apa::Framework elma() {
    return apa::make_framework({{"a2", "a3", "a4", "a5"}, {"a2", "a3", "a4"}, {{"a2", "a3"}}, {{"a3", "a4", "a5"}}});
}

inline apa::Framework alice_core() {
    return apa::make_framework({{"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"},
                                {"a1", "a2", "a3"},
                                {},
                                {{"a2", "a1", "a4"}, {"a3", "a1", "a5"}}});
}

/// Two conversions and two inducements over a1..a4, no attacks.
inline apa::Framework oscillation() {
    return apa::make_framework({{"a1", "a2", "a3", "a4"},
                                {"a1", "a2"},
                                {},
                                {{"a1", "a2", "a4"}, {"a2", "a1", "a3"}, {"a3", "", "a2"}, {"a4", "", "a1"}}});
}

/// Static a -> b.
inline apa::Framework dung_ab() { return apa::make_framework({{"a", "b"}, {"a", "b"}, {{"a", "b"}}, {}}); }

inline apa::ArgSet set(const apa::Framework& fw, std::initializer_list<const char*> names) {
    apa::ArgSet out;
    for (auto n : names) out.insert(*fw.find(n));
    return out;
}

}  // namespace fixtures
