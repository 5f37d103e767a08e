// One PASS/FAIL line per acceptance criterion; failing items are listed below it.
#include "tori/checks.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace tori;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<std::vector<CheckResult>()> run;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string timing(double secs, double limit) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s (limit %.0f s)", secs, limit);
    return buf;
}

bool report(int id, const std::string& name, bool in_time, const std::string& timing,
            const std::vector<CheckResult>& res) {
    size_t bad = 0;
    for (auto& r : res) bad += !r.ok;
    bool ok = bad == 0 && !res.empty() && in_time;
    std::printf("%s  %d  %-28s %zu/%zu checks  %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), res.size() - bad,
                res.size(), timing.c_str());
    for (auto& r : res)
        if (!r.ok) std::printf("        %s  %s  %s\n", r.suite.c_str(), r.subject.c_str(), r.detail.c_str());
    std::fflush(stdout);
    return ok;
}

} // namespace

int main() {
    std::vector<Criterion> simple = {
        {1, "kac points", 5, golden_kac_points},
        {2, "SL_n / SU_n counts", 10, golden_special_linear},
        {3, "Sp4 table", 60, golden_sp4},
        {4, "PSp4 by isogeny transfer", 60, golden_psp4},
        {5, "G2 table", 120, golden_g2},
        {6, "ramified SU3", 30, golden_ramified_su3},
    };
    int failed = 0;
    for (auto& c : simple) {
        auto t0 = Clock::now();
        std::vector<CheckResult> res;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            res.push_back({"error", c.name, false, e.what()});
        }
        double secs = seconds_since(t0);
        failed += !report(c.id, c.name, secs <= c.limit_s, timing(secs, c.limit_s), res);
    }

    // 7: every suite on every type; F4 gets its own time budget
    {
        std::vector<CheckResult> all;
        double worst_other = 0, f4 = 0, total = 0;
        for (const auto& type : structural_types()) {
            auto t0 = Clock::now();
            std::vector<CheckResult> res;
            try {
                res = structural_suite(type);
            } catch (const std::exception& e) {
                res.push_back({"error", type, false, e.what()});
            }
            double s = seconds_since(t0);
            total += s;
            if (type == "F4")
                f4 = s;
            else
                worst_other = std::max(worst_other, s);
            all.insert(all.end(), res.begin(), res.end());
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.2f s total; F4 %.2f s (limit 600 s), slowest other %.2f s (limit 60 s)",
                      total, f4, worst_other);
        failed += !report(7, "structural suites", f4 <= 600 && worst_other <= 60, buf, all);
    }

    {
        auto t0 = Clock::now();
        std::vector<CheckResult> res;
        try {
            res = choice_fuzz(100, 20261018u);
        } catch (const std::exception& e) {
            res.push_back({"error", "fuzz", false, e.what()});
        }
        double secs = seconds_since(t0);
        failed += !report(8, "choice independence (100)", secs <= 300, timing(secs, 300), res);
    }

    std::printf("%d of 8 criteria failed\n", failed);
    return failed ? 1 : 0;
}
