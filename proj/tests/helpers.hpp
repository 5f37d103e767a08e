#pragma once

#include "tori/error.hpp"
#include "tori/rootdata.hpp"

#include <string>

namespace testing {

template <class F>
std::string kind_of(F&& f) {
    try {
        f();
    } catch (const tori::Error& e) {
        return e.kind();
    }
    return "";
}

inline tori::GroupContext group(const std::string& type, const std::string& iso = "sc",
                                const std::string& sigma = "id", const std::string& fr = "id", long q = 0) {
    tori::GroupSpec s;
    s.type = type;
    s.isogeny = iso;
    s.sigma = sigma;
    s.fr = fr;
    s.q = q;
    return tori::build_group(s);
}

inline tori::RatVec rv(std::initializer_list<std::pair<long, long>> xs) {
    tori::RatVec v;
    for (auto [a, b] : xs) v.push_back(tori::frac(a, b));
    return v;
}

} // namespace testing
