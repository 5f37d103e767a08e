#pragma once

#include "tori/rootdata.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tori::cli {

struct Options {
    std::string spec_path;
    std::vector<long> qs; // from --q; overrides the spec file
    std::string format = "text"; // text | machine
    std::string out;             // output file (alcove-svg)
    size_t max_weyl_order = 1152;
    bool inject_fault = false; // selftest only
};

// Exit codes
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

int cmd_classes(const Options& o, std::ostream& out, std::ostream& err);
int cmd_kac(const Options& o, std::ostream& out, std::ostream& err);
int cmd_classify(const Options& o, std::ostream& out, std::ostream& err);
int cmd_alcove_svg(const Options& o, std::ostream& out, std::ostream& err);
int cmd_selftest(const Options& o, std::ostream& out, std::ostream& err);

// Exit code for a library error kind.
int exit_code_for(const std::string& kind);

// SVG drawing of the closed alcove with the points of all tame elliptic
// classes.  errors: RankTooLarge, UnsupportedConfiguration
std::string alcove_svg(const GroupSpec& spec);

} // namespace tori::cli
