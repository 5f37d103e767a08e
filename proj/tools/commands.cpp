#include "commands.hpp"

#include "spec_file.hpp"
#include "tori/checks.hpp"
#include "tori/classify.hpp"
#include "tori/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace tori::cli {

using json = nlohmann::ordered_json;

namespace {

struct Loaded {
    SpecFile spec;
    std::unique_ptr<Workspace> ws;
};

Loaded load(const Options& o) {
    if (o.spec_path.empty()) fail("SpecError", "--spec is required");
    Loaded l;
    l.spec = load_spec(o.spec_path);
    l.spec.group.max_weyl_order = o.max_weyl_order;
    if (!o.qs.empty()) l.spec.qs = o.qs;
    l.ws = Workspace::build(build_group(l.spec.group));
    return l;
}

json header(const Loaded& l) {
    const auto& g = l.spec.group;
    json h;
    h["type"] = l.ws->lattice.type_name;
    h["isogeny"] = g.isogeny;
    h["sigma"] = l.ws->sc.sigma.str();
    h["fr"] = l.ws->sc.fr.str();
    return h;
}

std::string header_text(const json& h) {
    return "type " + h["type"].get<std::string>() + "  isogeny " + h["isogeny"].get<std::string>() + "  sigma " +
           h["sigma"].get<std::string>() + "  fr " + h["fr"].get<std::string>() + "\n";
}

// left-aligned columns, two spaces apart
std::string table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> width;
    for (auto& r : rows)
        for (size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], r[i].size());
        }
    std::ostringstream s;
    for (auto& r : rows) {
        std::string line;
        for (size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        s << line << "\n";
    }
    return s.str();
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string rat_str(const Rat& x) {
    Rat y = x;
    y.canonicalize();
    return y.get_str();
}

json vec_json(const RatVec& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(rat_str(x));
    return a;
}

std::string vec_text(const RatVec& v) {
    std::vector<std::string> s;
    for (auto& x : v) s.push_back(rat_str(x));
    return "(" + join(s, ",") + ")";
}

template <class F>
int guarded(std::ostream& err, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
}

void emit(const Options& o, std::ostream& out, const json& j, const std::string& text) {
    if (o.format == "machine")
        out << j.dump(2) << "\n";
    else
        out << text;
}

void check_format(const Options& o) {
    if (o.format != "text" && o.format != "machine") fail("SpecError", "--format must be text or machine");
}

} // namespace

int exit_code_for(const std::string& kind) {
    static const std::set<std::string> input = {
        "SpecError",      "InvalidSpec",    "InvalidCartan",          "InvalidLattice",      "InvalidTwist",
        "InvalidArgument", "TamenessViolation", "IncompatibleTwists", "GroupTooLarge",       "BadKernel",
        "RankTooLarge",   "UnsupportedConfiguration", "UnsupportedTwist", "NotDefinedOverK"};
    return input.count(kind) ? kInputError : kCheckFailed;
}

// ---------------------------------------------------------------- classes

int cmd_classes(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_format(o);
        Loaded l = load(o);
        const auto& ws = *l.ws;
        const auto& W = ws.W;
        std::vector<long> ps;
        for (long q : l.spec.qs) ps.push_back(residue_characteristic(ws.sc, q));
        json j = header(l);
        j["weyl_order"] = W.size;
        json arr = json::array();
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> head = {"class", "rep", "size", "order", "elliptic", "label"};
        for (long q : l.spec.qs) head.push_back("q=" + std::to_string(q));
        rows.push_back(head);
        size_t n_ell = 0;
        for (size_t c = 0; c < ws.classes.classes.size(); ++c) {
            int w = ws.classes.rep[c];
            bool ell = is_elliptic(W, w);
            n_ell += ell;
            long ord = twisted_order(W, w);
            json e;
            e["class"] = c;
            e["rep"] = W.word_str(w);
            e["size"] = ws.classes.classes[c].size();
            e["order"] = ord;
            e["elliptic"] = ell;
            e["label"] = class_label(ws, w);
            std::vector<std::string> row = {std::to_string(c), W.word_str(w),
                                            std::to_string(ws.classes.classes[c].size()), std::to_string(ord),
                                            ell ? "yes" : "no", class_label(ws, w)};
            json per_q = json::array();
            for (size_t k = 0; k < l.spec.qs.size(); ++k) {
                long q = l.spec.qs[k];
                bool tame = is_tame_class(W, w, ps[k]);
                bool stable = ws.classes.class_of.at(fr_norm(W, w, q)) == static_cast<int>(c);
                per_q.push_back({{"q", q}, {"tame", tame}, {"fr_stable", stable}});
                row.push_back(!tame ? "wild" : stable ? "stable" : "moved");
            }
            e["per_q"] = per_q;
            arr.push_back(e);
            rows.push_back(row);
        }
        j["classes"] = arr;
        std::string text = header_text(j) + "|W| = " + std::to_string(W.size) + ", " +
                           std::to_string(ws.classes.classes.size()) + " sigma-classes, " + std::to_string(n_ell) +
                           " elliptic\n" + table(rows);
        emit(o, out, j, text);
        return kOk;
    });
}

// ---------------------------------------------------------------- kac

int cmd_kac(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_format(o);
        Loaded l = load(o);
        const auto& ws = *l.ws;
        const auto& ctx = ws.sc;
        auto pts = all_points(ctx, ws.W, ws.model, ws.classes);
        const auto& walls = simple_affine_roots(ctx);
        json j = header(l);
        std::vector<std::string> wl;
        for (auto& w : walls) wl.push_back(w.label);
        j["walls"] = wl;
        json arr = json::array();
        std::vector<std::vector<std::string>> rows = {{"class", "label", "rep", "l", "lambda", "point", "j", "kac"}};
        for (auto& kp : pts) {
            int w = ws.classes.rep[kp.class_id];
            std::vector<std::string> kc;
            for (auto& c : kp.coords) kc.push_back(c.get_str());
            json e;
            e["class"] = kp.class_id;
            e["label"] = class_label(ws, w);
            e["rep"] = ws.W.word_str(w);
            e["l"] = kp.l;
            e["lambda"] = vec_json(kp.lambda);
            e["point"] = vec_json(kp.point);
            e["point_str"] = kp.str(ctx);
            e["j"] = kp.j.get_str();
            e["kac"] = kc;
            arr.push_back(e);
            rows.push_back({std::to_string(kp.class_id), class_label(ws, w), ws.W.word_str(w), std::to_string(kp.l),
                            vec_text(kp.lambda), kp.str(ctx), kp.j.get_str(), "(" + join(kc, ",") + ")"});
        }
        j["points"] = arr;
        emit(o, out, j, header_text(j) + "walls: " + join(wl, ", ") + "\n" + table(rows));
        return kOk;
    });
}

// ---------------------------------------------------------------- classify

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_format(o);
        Loaded l = load(o);
        if (l.spec.qs.empty()) fail("SpecError", "no q given (spec key 'q' or --q)");
        json j = header(l);
        json reports = json::array();
        std::string text = header_text(j);
        bool all_ok = true;
        for (long q : l.spec.qs) {
            auto rep = full_report(*l.ws, q);
            json rj;
            rj["q"] = q;
            json rows = json::array();
            std::vector<std::vector<std::string>> t = {
                {"class", "label", "rep", "point", "stable", "size:emb/rat", "rational", "checks"}};
            for (auto& r : rep.rows) {
                json e;
                e["class"] = r.class_id;
                e["label"] = r.label;
                e["rep"] = r.rep;
                e["point"] = r.point;
                e["l"] = r.kac.l;
                e["defined_over_k"] = r.defined_over_k;
                std::string checks = "-";
                if (r.defined_over_k) {
                    e["stable_count"] = r.stable_count;
                    json st = json::array();
                    std::vector<std::string> cells;
                    for (auto& s : r.stable) {
                        json sj = {{"size", s.size}, {"embeddings", s.embeddings}};
                        std::string cell = std::to_string(s.size) + ":" + std::to_string(s.embeddings);
                        if (s.rational >= 0) {
                            sj["rational"] = s.rational;
                            cell += "/" + std::to_string(s.rational);
                        }
                        st.push_back(sj);
                        cells.push_back(cell);
                    }
                    e["stable"] = st;
                    if (r.rational)
                        e["rational"] = *r.rational;
                    else
                        e["rational"] = nullptr;
                    e["fibers_ok"] = r.fibers_ok;
                    e["sequence_ok"] = r.sequence_ok;
                    checks = r.checks_ok() ? "ok" : std::string("FAIL") + (r.fibers_ok ? "" : " fibers") +
                                                        (r.sequence_ok ? "" : " sequence");
                    all_ok = all_ok && r.checks_ok();
                    t.push_back({std::to_string(r.class_id), r.label, r.rep, r.point, std::to_string(r.stable_count),
                                 join(cells, " "), r.rational ? std::to_string(*r.rational) : "unsupported", checks});
                } else {
                    t.push_back({std::to_string(r.class_id), r.label, r.rep, r.point, "-", "-", "-", r.note});
                }
                if (!r.note.empty()) e["note"] = r.note;
                rows.push_back(e);
            }
            rj["rows"] = rows;
            reports.push_back(rj);
            text += "\nq = " + std::to_string(q) + "\n" + table(t);
        }
        j["reports"] = reports;
        emit(o, out, j, text);
        if (!all_ok) {
            err << "check failure in at least one row\n";
            return kCheckFailed;
        }
        return kOk;
    });
}

// ---------------------------------------------------------------- alcove figure

namespace {

struct Frame {
    std::vector<RatVec> basis; // of the sigma-fixed subspace, coroot coordinates
    std::vector<std::vector<double>> embed; // Euclidean images of the basis vectors
};

Frame fixed_frame(const GroupContext& ctx) {
    Frame f;
    std::vector<bool> seen(ctx.rank, false);
    for (size_t i = 0; i < ctx.rank; ++i) {
        if (seen[i]) continue;
        RatVec b(ctx.rank, Rat(0));
        for (int k = static_cast<int>(i); !seen[k]; k = ctx.sigma.perm[k]) {
            seen[k] = true;
            b[k] = 1;
        }
        f.basis.push_back(b);
    }
    size_t d = f.basis.size();
    if (d > 2) fail("RankTooLarge", "relative rank " + std::to_string(d) + " exceeds 2");
    // Gram matrix of the coroot form: (a_i^v, a_j^v) = 4 (a_i, a_j) / (|a_i|^2 |a_j|^2)
    auto coroot_form = [&](const RatVec& x, const RatVec& y) {
        double s = 0;
        for (size_t i = 0; i < ctx.rank; ++i)
            for (size_t j = 0; j < ctx.rank; ++j) {
                if (x[i] == 0 || y[j] == 0) continue;
                RatVec ei(ctx.rank, Rat(0)), ej(ctx.rank, Rat(0));
                ei[i] = 1;
                ej[j] = 1;
                double aij = ctx.form(ei, ej).get_d();
                double ni = ctx.form(ei, ei).get_d(), nj = ctx.form(ej, ej).get_d();
                s += x[i].get_d() * y[j].get_d() * 4 * aij / (ni * nj);
            }
        return s;
    };
    if (d == 1) {
        f.embed = {{std::sqrt(coroot_form(f.basis[0], f.basis[0])), 0}};
    } else {
        double g11 = coroot_form(f.basis[0], f.basis[0]), g12 = coroot_form(f.basis[0], f.basis[1]),
               g22 = coroot_form(f.basis[1], f.basis[1]);
        double a = std::sqrt(g11);
        f.embed = {{a, 0}, {g12 / a, std::sqrt(g22 - g12 * g12 / g11)}};
    }
    return f;
}

// coordinates c with x = sum c_k basis_k
RatVec frame_coords(const Frame& f, const RatVec& x) {
    RatVec c;
    for (auto& b : f.basis) {
        size_t i = 0;
        while (b[i] == 0) ++i;
        c.push_back(x[i]);
    }
    return c;
}

std::pair<double, double> to_plane(const Frame& f, const RatVec& c) {
    double x = 0, y = 0;
    for (size_t k = 0; k < c.size(); ++k) {
        x += c[k].get_d() * f.embed[k][0];
        y += c[k].get_d() * f.embed[k][1];
    }
    return {x, y};
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '<') o += "&lt;";
        else if (c == '>') o += "&gt;";
        else if (c == '&') o += "&amp;";
        else o += c;
    }
    return o;
}

} // namespace

std::string alcove_svg(const GroupSpec& spec) {
    GroupContext g = build_group(spec);
    auto ws = Workspace::build(g);
    const auto& ctx = ws->sc;
    Frame f = fixed_frame(ctx);
    const auto& walls = simple_affine_roots(ctx);
    size_t d = f.basis.size();
    // psi(sum c_k b_k) = sum c_k lin_k + level
    std::vector<std::pair<RatVec, Rat>> lin;
    RatVec zero(ctx.rank, Rat(0));
    for (auto& w : walls) {
        Rat c0 = ctx.eval(w, zero);
        RatVec a;
        for (auto& b : f.basis) a.push_back(ctx.eval(w, b) - c0);
        lin.push_back({a, c0});
    }
    auto inside = [&](const RatVec& c) {
        for (auto& [a, c0] : lin) {
            Rat s = c0;
            for (size_t k = 0; k < d; ++k) s += a[k] * c[k];
            if (s < 0) return false;
        }
        return true;
    };
    // vertices: d walls vanish
    std::vector<RatVec> verts;
    auto add_vertex = [&](const RatVec& c) {
        if (inside(c) && std::find(verts.begin(), verts.end(), c) == verts.end()) verts.push_back(c);
    };
    for (size_t i = 0; i < lin.size(); ++i) {
        if (d == 1) {
            if (lin[i].first[0] != 0) add_vertex({-lin[i].second / lin[i].first[0]});
            continue;
        }
        for (size_t j = i + 1; j < lin.size(); ++j) {
            auto& [a, c0] = lin[i];
            auto& [b, e0] = lin[j];
            Rat det = a[0] * b[1] - a[1] * b[0];
            if (det == 0) continue;
            Rat x = (-c0 * b[1] + e0 * a[1]) / det, y = (-a[0] * e0 + b[0] * c0) / det;
            x.canonicalize();
            y.canonicalize();
            add_vertex({x, y});
        }
    }
    std::vector<std::pair<double, double>> vp;
    for (auto& v : verts) vp.push_back(to_plane(f, v));
    // order around the centroid
    double cx = 0, cy = 0;
    for (auto& [x, y] : vp) cx += x, cy += y;
    cx /= static_cast<double>(vp.size());
    cy /= static_cast<double>(vp.size());
    std::vector<size_t> idx(vp.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return std::atan2(vp[a].second - cy, vp[a].first - cx) < std::atan2(vp[b].second - cy, vp[b].first - cx);
    });
    double minx = 1e9, maxx = -1e9, miny = 1e9, maxy = -1e9;
    for (auto& [x, y] : vp) minx = std::min(minx, x), maxx = std::max(maxx, x), miny = std::min(miny, y), maxy = std::max(maxy, y);
    const double scale = 400.0 / std::max(maxx - minx, std::max(maxy - miny, 1e-9)), margin = 60;
    auto px = [&](double x) { return margin + (x - minx) * scale; };
    auto py = [&](double y) { return margin + (maxy - y) * scale; };
    double width = 2 * margin + (maxx - minx) * scale, height = 2 * margin + (maxy - miny) * scale;

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    s << "  <title>alcove " << xml_escape(ctx.type_name) << (ctx.split() ? "" : " sigma=" + ctx.sigma.str())
      << "</title>\n";
    if (d == 1) {
        s << "  <line x1=\"" << num(px(minx)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(maxx)) << "\" y2=\""
          << num(py(0)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    } else {
        s << "  <polygon points=\"";
        for (size_t k = 0; k < idx.size(); ++k)
            s << (k ? " " : "") << num(px(vp[idx[k]].first)) << "," << num(py(vp[idx[k]].second));
        s << "\" fill=\"#eef3fb\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    for (size_t k = 0; k < verts.size(); ++k) {
        auto [x, y] = vp[k];
        s << "  <circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"2.5\" fill=\"black\"/>\n";
    }
    auto pts = all_points(ctx, ws->W, ws->model, ws->classes);
    for (auto& kp : pts) {
        auto [x, y] = to_plane(f, frame_coords(f, kp.point));
        std::string label = class_label(*ws, ws->classes.rep[kp.class_id]) + ": " + kp.str(ctx);
        s << "  <circle class=\"point\" cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
          << "\" r=\"5\" fill=\"#c0392b\"/>\n";
        s << "  <text x=\"" << num(px(x) + 8) << "\" y=\"" << num(py(y) - 8)
          << "\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(label) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

int cmd_alcove_svg(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (o.out.empty()) fail("SpecError", "--out is required");
        Loaded l = load(o);
        std::string svg = alcove_svg(l.spec.group);
        std::ofstream f(o.out, std::ios::binary);
        if (!f) fail("SpecError", "cannot write " + o.out);
        f << svg;
        out << "wrote " << o.out << "\n";
        return kOk;
    });
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        SelftestOptions opt;
        opt.inject_fault = o.inject_fault;
        json arr = json::array();
        opt.on_result = [&](const CheckResult& r) {
            if (o.format == "machine")
                arr.push_back({{"suite", r.suite}, {"subject", r.subject}, {"ok", r.ok}, {"detail", r.detail}});
            else
                out << (r.ok ? "PASS  " : "FAIL  ") << r.suite << "  " << r.subject << "  " << r.detail << "\n"
                    << std::flush;
        };
        auto res = selftest(opt);
        size_t bad = std::count_if(res.begin(), res.end(), [](const CheckResult& r) { return !r.ok; });
        if (o.format == "machine")
            out << json{{"passed", res.size() - bad}, {"failed", bad}, {"results", arr}}.dump(2) << "\n";
        else
            out << res.size() - bad << " passed, " << bad << " failed\n";
        return bad ? kCheckFailed : kOk;
    });
}

} // namespace tori::cli
