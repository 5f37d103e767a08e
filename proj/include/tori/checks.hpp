#pragma once

#include "tori/chevalley.hpp"
#include "tori/classify.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tori {

struct CheckResult {
    std::string suite;   // e.g. "braid"
    std::string subject; // e.g. "C2"
    bool ok = false;
    std::string detail;
};

// Split types covered by the structural suites.
const std::vector<std::string>& structural_types();

// Copy of the model with one structure constant sign flipped (if any pair exists).
ChevalleyModel corrupt_structure_constants(const ChevalleyModel& m);

CheckResult check_tits_relations(const std::string& type, bool inject_fault = false);
CheckResult check_weyl_rationality(const std::string& type);
CheckResult check_elliptic_order(const std::string& type);
CheckResult check_kottwitz_cardinality(const std::string& type);
CheckResult check_component_sequence(const std::string& type);
CheckResult check_kac_uniqueness(const std::string& type, const std::string& sigma = "id");
CheckResult check_minus_one(const std::string& type);
CheckResult check_coxeter(const std::string& type);

// All structural checks for one type.
std::vector<CheckResult> structural_suite(const std::string& type, bool inject_fault = false);

// Golden tables.  Each returns one result per (group, q, class) item.
std::vector<CheckResult> golden_kac_points();
std::vector<CheckResult> golden_special_linear();
std::vector<CheckResult> golden_sp4();
std::vector<CheckResult> golden_psp4();
std::vector<CheckResult> golden_g2();
std::vector<CheckResult> golden_ramified_su3();

// Reports for a group rebuilt with random choices must equal the canonical one.
std::vector<CheckResult> choice_fuzz(int runs, unsigned seed);

struct SelftestOptions {
    bool inject_fault = false;
    std::function<void(const CheckResult&)> on_result; // progress callback
};
std::vector<CheckResult> selftest(const SelftestOptions& opt);

std::unique_ptr<Workspace> make_workspace(const std::string& type, const std::string& isogeny = "sc",
                                          const std::string& sigma = "id", const std::string& fr = "id");

} // namespace tori
