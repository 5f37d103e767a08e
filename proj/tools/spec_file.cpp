#include "spec_file.hpp"

#include "tori/error.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace tori::cli {

namespace {

[[noreturn]] void spec_error(const std::string& name, const YAML::Mark& m, const std::string& what) {
    std::string where = name;
    if (!m.is_null()) where += ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
    fail("SpecError", where + ": " + what);
}

std::string scalar(const std::string& name, const YAML::Node& n, const std::string& key) {
    if (!n.IsScalar()) spec_error(name, n.Mark(), "'" + key + "' must be a scalar");
    return n.Scalar();
}

long integer(const std::string& name, const YAML::Node& n, const std::string& key) {
    std::string s = scalar(name, n, key);
    size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) spec_error(name, n.Mark(), "'" + key + "' must be an integer, got '" + s + "'");
    return v;
}

Rat rational(const std::string& name, const YAML::Node& n) {
    std::string s = scalar(name, n, "isogeny");
    Rat r;
    if (s.empty() || r.set_str(s, 10) != 0) spec_error(name, n.Mark(), "bad lattice entry '" + s + "'");
    if (r.get_den() == 0) spec_error(name, n.Mark(), "zero denominator");
    r.canonicalize();
    return r;
}

} // namespace

SpecFile parse_spec_text(const std::string& text, const std::string& name) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        spec_error(name, e.mark, e.msg);
    }
    if (!root.IsMap()) spec_error(name, root.Mark(), "top level must be a mapping");
    static const std::set<std::string> known = {"type", "isogeny", "sigma", "fr", "p", "q"};
    SpecFile out;
    bool have_type = false;
    for (auto it = root.begin(); it != root.end(); ++it) {
        std::string key = it->first.IsScalar() ? it->first.Scalar() : "";
        const YAML::Node& v = it->second;
        if (!known.count(key)) spec_error(name, it->first.Mark(), "unknown key '" + key + "'");
        if (key == "type") {
            out.group.type = scalar(name, v, key);
            have_type = true;
        } else if (key == "isogeny") {
            if (v.IsScalar()) {
                out.group.isogeny = v.Scalar();
                if (out.group.isogeny != "sc" && out.group.isogeny != "ad")
                    spec_error(name, v.Mark(), "isogeny must be sc, ad or a list of basis vectors");
            } else if (v.IsSequence()) {
                out.group.isogeny = "matrix";
                for (const auto& row : v) {
                    if (!row.IsSequence()) spec_error(name, row.Mark(), "basis vector must be a list");
                    RatVec r;
                    for (const auto& x : row) r.push_back(rational(name, x));
                    out.group.lattice.push_back(r);
                }
            } else {
                spec_error(name, v.Mark(), "isogeny must be sc, ad or a list of basis vectors");
            }
        } else if (key == "sigma") {
            out.group.sigma = scalar(name, v, key);
        } else if (key == "fr") {
            out.group.fr = scalar(name, v, key);
        } else if (key == "p") {
            out.group.p = integer(name, v, key);
            if (out.group.p < 0) spec_error(name, v.Mark(), "p must be >= 0");
        } else if (key == "q") {
            if (v.IsSequence()) {
                for (const auto& x : v) out.qs.push_back(integer(name, x, key));
            } else {
                out.qs.push_back(integer(name, v, key));
            }
            for (long q : out.qs)
                if (q < 2) spec_error(name, v.Mark(), "q must be a prime power");
        }
    }
    if (!have_type) spec_error(name, root.Mark(), "missing key 'type'");
    // surface group errors with the file name attached
    try {
        build_group(out.group);
    } catch (const Error& e) {
        fail("SpecError", name + ": " + e.what());
    }
    return out;
}

SpecFile load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("SpecError", path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str(), path);
}

std::vector<long> parse_q_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used == 0 || used != item.size() || v < 2) fail("SpecError", "bad q value '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) fail("SpecError", "empty q list");
    return out;
}

} // namespace tori::cli
