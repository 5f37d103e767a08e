#include "doctest.h"
#include "helpers.hpp"

#include "../tools/commands.hpp"
#include "../tools/spec_file.hpp"
#include "tori/checks.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace tori;
using namespace tori::cli;
using testing::kind_of;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("tori-cli-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        auto p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

struct Run {
    int code;
    std::string out, err;
};

template <class Cmd>
Run run(Cmd cmd, const Options& o) {
    std::ostringstream out, err;
    int code = cmd(o, out, err);
    return {code, out.str(), err.str()};
}

Options opts(const std::string& spec, std::vector<long> qs = {}, const std::string& format = "text") {
    Options o;
    o.spec_path = spec;
    o.qs = std::move(qs);
    o.format = format;
    return o;
}

std::string spec_error(const std::string& text) {
    try {
        parse_spec_text(text, "s.yaml");
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("spec parsing") {
    auto s = parse_spec_text("type: C2\nisogeny: ad\nq: [3, 5]\n");
    CHECK(s.group.type == "C2");
    CHECK(s.group.isogeny == "ad");
    CHECK(s.qs == std::vector<long>{3, 5});

    auto m = parse_spec_text("type: A1\nisogeny: [[1/2]]\nq: 3\n");
    CHECK(m.group.isogeny == "matrix");
    REQUIRE(m.group.lattice.size() == 1);
    CHECK(m.group.lattice[0][0] == frac(1, 2));
    CHECK(m.qs == std::vector<long>{3});

    auto t = parse_spec_text("type: A2\nsigma: flip\n");
    CHECK(t.group.sigma == "flip");
    CHECK(t.qs.empty());
}

TEST_CASE("spec errors carry positions") {
    CHECK(spec_error("type: C2\ncolour: red\n").find("s.yaml:2:1: unknown key 'colour'") != std::string::npos);
    CHECK(spec_error("type: C2\nq: five\n").find("s.yaml:2:4:") != std::string::npos);
    CHECK(spec_error("isogeny: sc\n").find("missing key 'type'") != std::string::npos);
    CHECK(spec_error("type: C2\nisogeny: half\n").find("s.yaml:2:10:") != std::string::npos);
    CHECK(spec_error("type: [C2\n").find("s.yaml:") != std::string::npos);
    CHECK(spec_error("type: C2\np: -3\n").find("p must be") != std::string::npos);
    CHECK(spec_error("type: B2\nsigma: flip\n").find("InvalidTwist") != std::string::npos);
    CHECK(kind_of([] { parse_spec_text("type: C2\nq: 1\n"); }) == "SpecError");
    CHECK(kind_of([] { load_spec("/nonexistent/spec.yaml"); }) == "SpecError");
}

TEST_CASE("q lists") {
    CHECK(parse_q_list("5,7, 11") == std::vector<long>{5, 7, 11});
    CHECK(kind_of([] { parse_q_list("5,x"); }) == "SpecError");
    CHECK(kind_of([] { parse_q_list(""); }) == "SpecError");
    CHECK(kind_of([] { parse_q_list("1"); }) == "SpecError");
}

TEST_CASE("exit codes") {
    CHECK(exit_code_for("SpecError") == kInputError);
    CHECK(exit_code_for("TamenessViolation") == kInputError);
    CHECK(exit_code_for("NotDefinedOverK") == kInputError);
    CHECK(exit_code_for("RankTooLarge") == kInputError);
    CHECK(exit_code_for("InternalError") == kCheckFailed);
}

TEST_CASE("classify output") {
    TempDir dir;
    auto c2 = dir.write("c2.yaml", "type: C2\nq: [3, 5]\n");
    auto text = run(cmd_classify, opts(c2, {5}));
    CHECK(text.code == kOk);
    CHECK(text.out.find("2:4/4 2:2/2 2:2/2 1:4/3 1:4/3  14") != std::string::npos);
    // deterministic
    CHECK(run(cmd_classify, opts(c2, {5})).out == text.out);

    auto machine = run(cmd_classify, opts(c2, {5}, "machine"));
    CHECK(machine.code == kOk);
    auto j = nlohmann::json::parse(machine.out);
    REQUIRE(j["reports"].size() == 1);
    CHECK(j["reports"][0]["q"] == 5);
    for (auto& row : j["reports"][0]["rows"]) {
        // the numbers in the text table match the machine output
        CHECK(text.out.find(row["rep"].get<std::string>()) != std::string::npos);
        std::string tail = "  " + std::to_string(row["rational"].get<long>()) + "  ";
        CHECK(text.out.find(tail) != std::string::npos);
        long sum = 0;
        for (auto& s : row["stable"]) sum += s["rational"].get<long>();
        CHECK(sum == row["rational"].get<long>());
    }

    // q values from the spec when --q is absent
    auto both = run(cmd_classify, opts(c2, {}, "machine"));
    CHECK(nlohmann::json::parse(both.out)["reports"].size() == 2);

    // adjoint C2 fails the exact-sequence check on the -1 row
    auto ad = dir.write("c2ad.yaml", "type: C2\nisogeny: ad\n");
    auto r = run(cmd_classify, opts(ad, {5}));
    CHECK(r.code == kCheckFailed);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("input errors exit 2") {
    TempDir dir;
    auto bad = dir.write("bad.yaml", "type: C2\nfoo: 1\n");
    auto r = run(cmd_classify, opts(bad, {5}));
    CHECK(r.code == kInputError);
    CHECK(r.err.find("bad.yaml:2:1") != std::string::npos);

    auto c2 = dir.write("c2.yaml", "type: C2\n");
    CHECK(run(cmd_classify, opts(c2, {6})).code == kInputError);
    CHECK(run(cmd_classify, opts(c2, {4})).code == kInputError);
    CHECK(run(cmd_classify, opts(c2, {})).code == kInputError); // no q anywhere
    CHECK(run(cmd_classes, opts(dir.path.string() + "/missing.yaml")).code == kInputError);

    auto f4 = dir.write("f4.yaml", "type: F4\n");
    Options o = opts(f4);
    o.max_weyl_order = 100;
    CHECK(run(cmd_classes, o).code == kInputError);
}

TEST_CASE("classes and kac") {
    TempDir dir;
    auto g2 = dir.write("g2.yaml", "type: G2\n");
    auto cl = run(cmd_classes, opts(g2, {7}, "machine"));
    REQUIRE(cl.code == kOk);
    auto j = nlohmann::json::parse(cl.out);
    CHECK(j["weyl_order"] == 12);
    CHECK(j["classes"].size() == 6);
    long total = 0;
    for (auto& c : j["classes"]) total += c["size"].get<long>();
    CHECK(total == 12);

    auto kac = run(cmd_kac, opts(g2, {}, "machine"));
    REQUIRE(kac.code == kOk);
    auto k = nlohmann::json::parse(kac.out);
    CHECK(k["walls"].size() == 3);
    CHECK(k["points"].size() == 3);
    bool found = false;
    for (auto& p : k["points"])
        if (p["label"] == "G2") {
            found = true;
            CHECK(p["point"] == nlohmann::json{"1/2", "5/6"});
            CHECK(p["kac"] == nlohmann::json{"1", "1", "1"});
            CHECK(p["j"] == "6");
        }
    CHECK(found);
    auto text = run(cmd_kac, opts(g2));
    CHECK(text.code == kOk);
    CHECK(text.out == run(cmd_kac, opts(g2)).out);
}

TEST_CASE("alcove svg") {
    for (auto [type, sigma] : std::vector<std::pair<std::string, std::string>>{
             {"C2", "id"}, {"G2", "id"}, {"A1", "id"}, {"A2", "flip"}}) {
        CAPTURE(type);
        GroupSpec s;
        s.type = type;
        s.sigma = sigma;
        auto svg = alcove_svg(s);
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(svg == alcove_svg(s));
    }
    GroupSpec b3;
    b3.type = "B3";
    CHECK(kind_of([&] { alcove_svg(b3); }) == "RankTooLarge");

    TempDir dir;
    auto c2 = dir.write("c2.yaml", "type: C2\n");
    Options o = opts(c2);
    o.out = (dir.path / "c2.svg").string();
    CHECK(run(cmd_alcove_svg, o).code == kOk);
    CHECK(fs::file_size(o.out) > 0);
    o.out.clear();
    CHECK(run(cmd_alcove_svg, o).code == kInputError);
}

TEST_CASE("fault injection is detected") {
    CHECK(check_tits_relations("C2").ok);
    auto bad = check_tits_relations("C2", true);
    CHECK(!bad.ok);
    CHECK(!check_tits_relations("G2", true).ok);
    CHECK(check_tits_relations("G2").ok);
}
