#pragma once

#include "tori/rootdata.hpp"

#include <string>
#include <vector>

namespace tori::cli {

// A group spec file plus the q values it lists.
struct SpecFile {
    GroupSpec group; // group.q stays 0; q values live in `qs`
    std::vector<long> qs;
};

// Errors: Error("SpecError", "<path>:<line>:<col>: message").
SpecFile parse_spec_text(const std::string& text, const std::string& name = "<spec>");
SpecFile load_spec(const std::string& path);

// "5,7,11" -> {5, 7, 11}
std::vector<long> parse_q_list(const std::string& text);

} // namespace tori::cli
