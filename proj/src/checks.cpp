#include "tori/checks.hpp"

#include "tori/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace tori {

namespace {

std::string join(const std::vector<long>& v) {
    std::ostringstream s;
    s << "{";
    for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    s << "}";
    return s.str();
}

std::vector<long> sorted_desc(std::vector<long> v) {
    std::sort(v.rbegin(), v.rend());
    return v;
}

// Two smallest odd primes not dividing |W x| Aut|.
std::vector<long> tame_primes(const GroupContext& ctx) {
    Int order = weyl_order(ctx.factors) * diagram_aut_order(ctx.factors);
    std::vector<long> out;
    for (long p = 3; out.size() < 2; p += 2) {
        bool prime = true;
        for (long d = 3; d * d <= p; d += 2)
            if (p % d == 0) prime = false;
        if (prime && order % p != 0) out.push_back(p);
    }
    return out;
}

// Run f, turning library errors into a failed result.
template <class F>
CheckResult guarded(const std::string& suite, const std::string& subject, F&& f) {
    CheckResult r{suite, subject, false, ""};
    try {
        f(r);
    } catch (const Error& e) {
        r.ok = false;
        r.detail = e.what();
    }
    return r;
}

std::vector<int> elliptic_reps(const Workspace& ws) {
    std::vector<int> out;
    for (int w : ws.classes.rep)
        if (is_elliptic(ws.W, w)) out.push_back(w);
    return out;
}

int braid_order(const GroupContext& ctx, int i, int j) {
    long prod = ctx.cartan(i, j).get_si() * ctx.cartan(j, i).get_si();
    switch (prod) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    }
    fail("InvalidCartan", "bad Cartan product");
}

const ReportRow* find_row(const ClassificationReport& rep, const std::string& label) {
    for (auto& r : rep.rows)
        if (r.label == label) return &r;
    return nullptr;
}

std::vector<long> row_embeddings(const ReportRow& r) {
    std::vector<long> v;
    for (auto& s : r.stable) v.push_back(s.embeddings);
    return sorted_desc(v);
}

// embeddings keyed by stable-class size
std::map<size_t, std::vector<long>> embeddings_by_size(const ReportRow& r) {
    std::map<size_t, std::vector<long>> m;
    for (auto& s : r.stable) m[s.size].push_back(s.embeddings);
    return m;
}

bool all_equal(const ReportRow& r, long e) {
    return !r.stable.empty() && std::all_of(r.stable.begin(), r.stable.end(),
                                            [&](const StableRow& s) { return s.embeddings == e; });
}

std::string row_summary(const ReportRow& r) {
    std::ostringstream s;
    s << "stable=" << r.stable_count << " emb=" << join(row_embeddings(r));
    if (r.rational) s << " rational=" << *r.rational;
    return s.str();
}

CheckResult expect(const std::string& suite, const std::string& subject, bool ok, const std::string& got,
                   const std::string& want) {
    return {suite, subject, ok, ok ? got : "got " + got + ", expected " + want};
}

} // namespace

std::unique_ptr<Workspace> make_workspace(const std::string& type, const std::string& isogeny,
                                          const std::string& sigma, const std::string& fr) {
    GroupSpec s;
    s.type = type;
    s.isogeny = isogeny;
    s.sigma = sigma;
    s.fr = fr;
    return Workspace::build(build_group(s));
}

const std::vector<std::string>& structural_types() {
    static const std::vector<std::string> t = {"A1", "A2", "A3", "A4", "B2", "C2", "B3", "C3", "D4", "G2", "F4"};
    return t;
}

// ---------------------------------------------------------------- Tits group

ChevalleyModel corrupt_structure_constants(const ChevalleyModel& m) {
    ChevalleyModel c = m;
    const auto& ctx = *m.ctx;
    for (size_t a = 0; a < ctx.npos; ++a)
        for (size_t b = a + 1; b < ctx.npos; ++b)
            if (c.N(static_cast<int>(a), static_cast<int>(b)) != 0) {
                c.N.N[a * c.N.n + b] *= -1;
                c.N.N[b * c.N.n + a] *= -1;
                rebuild_adjoint(c);
                return c;
            }
    return c;
}

CheckResult check_tits_relations(const std::string& type, bool inject_fault) {
    return guarded("tits-braid", type, [&](CheckResult& r) {
        auto ws = make_workspace(type);
        const auto& ctx = ws->sc;
        ChevalleyModel m = inject_fault ? corrupt_structure_constants(ws->model) : ws->model;
        size_t rank = ctx.rank;
        int bad = 0, total = 0;
        std::string first;
        for (size_t i = 0; i < rank; ++i) {
            RatVec half(rank, Rat(0));
            half[i] = Rat(1, 2);
            ++total;
            if (!(m.n_simple[i] * m.n_simple[i] == torus_element(m, half))) {
                ++bad;
                if (first.empty()) first = "n_" + std::to_string(i + 1) + "^2";
            }
            for (size_t j = i + 1; j < rank; ++j) {
                int mij = braid_order(ctx, static_cast<int>(i), static_cast<int>(j));
                SignedPerm x = SignedPerm::identity(ctx), y = SignedPerm::identity(ctx);
                for (int k = 0; k < mij; ++k) {
                    x = x * m.n_simple[k % 2 ? j : i];
                    y = y * m.n_simple[k % 2 ? i : j];
                }
                ++total;
                if (!(x == y)) {
                    ++bad;
                    if (first.empty()) first = "braid(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                }
            }
        }
        r.ok = bad == 0;
        r.detail = std::to_string(total - bad) + "/" + std::to_string(total) + " relations hold";
        if (!first.empty()) r.detail += "; first failure " + first;
    });
}

// ---------------------------------------------------------------- Weyl group

CheckResult check_weyl_rationality(const std::string& type) {
    return guarded("weyl-rational", type, [&](CheckResult& r) {
        auto ws = make_workspace(type);
        const auto& W = ws->W;
        long pairs = 0;
        for (size_t w = 0; w < W.size; ++w) {
            int c = ws->classes.class_of.at(static_cast<int>(w));
            long o = W.order(static_cast<int>(w));
            for (long j = 2; j < o; ++j) {
                if (std::gcd(j, o) != 1) continue;
                ++pairs;
                if (ws->classes.class_of.at(W.power(static_cast<int>(w), j)) != c) {
                    r.ok = false;
                    r.detail = W.word_str(static_cast<int>(w)) + " not conjugate to its power " + std::to_string(j);
                    return;
                }
            }
        }
        r.ok = true;
        r.detail = std::to_string(W.size) + " elements, " + std::to_string(pairs) + " powers";
    });
}

CheckResult check_elliptic_order(const std::string& type) {
    return guarded("elliptic-order", type, [&](CheckResult& r) {
        auto ad = make_workspace(type, "ad");
        auto omega = fundamental_group(ad->lattice).omega;
        long exponent = omega.trivial() ? 1 : omega.invariant_factors.back().get_si();
        auto reps = elliptic_reps(*ad);
        for (int w : reps) {
            long o = ad->W.order(w);
            if (o % exponent) {
                r.ok = false;
                r.detail = "order " + std::to_string(o) + " of " + ad->W.word_str(w) + " not divisible by " +
                           std::to_string(exponent);
                return;
            }
        }
        r.ok = true;
        r.detail = std::to_string(reps.size()) + " elliptic classes, exponent " + std::to_string(exponent);
    });
}

CheckResult check_kottwitz_cardinality(const std::string& type) {
    return guarded("sc-ad-coker", type, [&](CheckResult& r) {
        auto ad = make_workspace(type, "ad");
        const auto& W = ad->W;
        size_t rank = W.rank;
        auto reps = elliptic_reps(*ad);
        for (int w : reps) {
            IntMatrix m = W.matrix(w);
            Int sc = cokernel(m - IntMatrix::identity(rank)).order();
            Int adj = cokernel(ad->lattice.to_lattice(m) - IntMatrix::identity(rank)).order();
            if (sc != adj) {
                r.ok = false;
                r.detail = W.word_str(w) + ": " + sc.get_str() + " vs " + adj.get_str();
                return;
            }
        }
        r.ok = true;
        r.detail = std::to_string(reps.size()) + " elliptic classes";
    });
}

// ---------------------------------------------------------------- torus counts

CheckResult check_component_sequence(const std::string& type) {
    return guarded("omega-sequence", type, [&](CheckResult& r) {
        auto ws = make_workspace(type, "ad");
        int total = 0, bad = 0;
        std::string first;
        for (long q : tame_primes(ws->sc)) {
            for (size_t c = 0; c < ws->classes.classes.size(); ++c) {
                int w = ws->classes.rep[c];
                if (!is_elliptic(ws->W, w)) continue;
                ToriOrbit o = make_orbit(*ws, static_cast<int>(c), q);
                int y = o.wfr_coset.front();
                for (auto& s : stable_classes(o, y)) {
                    auto cs = component_sequence_check(o, s.rep, y, ws->lattice);
                    ++total;
                    if (!cs.ok()) {
                        ++bad;
                        if (first.empty())
                            first = "q=" + std::to_string(q) + " class " + class_label(*ws, w) + " w'=" +
                                    ws->W.word_str(s.rep) + ": " + cs.total.get_str() + " != " + cs.tbar.get_str() +
                                    "*" + cs.omega.get_str();
                    }
                }
            }
        }
        r.ok = bad == 0;
        r.detail = std::to_string(total - bad) + "/" + std::to_string(total) + " identities hold";
        if (!first.empty()) r.detail += "; first failure " + first;
    });
}

CheckResult check_kac_uniqueness(const std::string& type, const std::string& sigma) {
    std::string subject = sigma == "id" ? type : type + "/" + sigma;
    return guarded("kac-unique", subject, [&](CheckResult& r) {
        auto ws = make_workspace(type, "sc", sigma);
        auto pts = all_points(ws->sc, ws->W, ws->model, ws->classes);
        r.ok = true;
        r.detail = std::to_string(pts.size()) + " points";
    });
}

CheckResult check_minus_one(const std::string& type) {
    return guarded("minus-one", type, [&](CheckResult& r) {
        auto ws = make_workspace(type);
        const auto& W = ws->W;
        size_t rank = W.rank;
        std::vector<int> minus(rank * rank, 0);
        for (size_t i = 0; i < rank; ++i) minus[i * rank + i] = -1;
        int w0 = W.index_of(minus);
        if (w0 < 0) {
            r.ok = true;
            r.detail = "-1 not in W";
            return;
        }
        KacPoint kp = assign_point(ws->sc, W, ws->model, w0);
        auto rep = minus_one_checks(W, kp.lambda, kp.l, 8, 1u);
        r.ok = rep.ok();
        std::ostringstream s;
        s << "order " << rep.order << " n4=" << rep.n4_trivial << " central=" << rep.n2_central
          << " lambda=" << rep.n2_matches_lambda << " nt=" << rep.nt_square << " fixed=" << rep.modified_fixed
          << " generate=" << rep.modified_generate;
        r.detail = s.str();
    });
}

CheckResult check_coxeter(const std::string& type) {
    return guarded("coxeter", type, [&](CheckResult& r) {
        auto ws = make_workspace(type);
        std::ostringstream s;
        r.ok = true;
        for (long q : tame_primes(ws->sc)) {
            auto rep = coxeter_report(*ws, q);
            s << "q=" << q << ": coker " << rep.coker << " stable " << rep.stable << "/" << rep.expected_stable
              << "; ";
            r.ok = r.ok && rep.ok();
        }
        r.detail = s.str();
    });
}

std::vector<CheckResult> structural_suite(const std::string& type, bool inject_fault) {
    return {check_tits_relations(type, inject_fault), check_weyl_rationality(type), check_elliptic_order(type),
            check_kottwitz_cardinality(type),           check_component_sequence(type), check_kac_uniqueness(type),
            check_minus_one(type),                      check_coxeter(type)};
}

// ---------------------------------------------------------------- goldens

std::vector<CheckResult> golden_kac_points() {
    struct Want {
        std::string type, sigma, label;
        RatVec point;
    };
    auto v = [](long a, long b, long d) { return RatVec{frac(a, d), frac(b, d)}; };
    std::vector<Want> want = {
        {"C2", "id", "C2", v(3, 4, 8)},     {"C2", "id", "-1", v(1, 2, 4)},
        {"G2", "id", "G2", v(3, 5, 6)},     {"G2", "id", "A2", v(1, 2, 3)},
        {"G2", "id", "A1xA1~", v(1, 2, 2)},     {"A2", "flip", "twA2", v(1, 1, 6)},
        {"A2", "flip", "-1", v(0, 0, 1)},
    };
    std::vector<CheckResult> out;
    std::map<std::string, std::unique_ptr<Workspace>> cache;
    for (auto& x : want) {
        std::string subject = x.type + (x.sigma == "id" ? "" : "/" + x.sigma) + " " + x.label;
        out.push_back(guarded("kac-golden", subject, [&](CheckResult& r) {
            auto& ws = cache[x.type + x.sigma];
            if (!ws) ws = make_workspace(x.type, "sc", x.sigma);
            const KacPoint* hit = nullptr;
            auto pts = all_points(ws->sc, ws->W, ws->model, ws->classes);
            for (auto& kp : pts) {
                std::string lab = class_label(*ws, ws->classes.rep[kp.class_id]);
                if (lab == x.label) hit = &kp;
            }
            if (!hit) {
                r.detail = "class not found";
                return;
            }
            RatVec pt = hit->point;
            for (auto& c : pt) c.canonicalize();
            r.ok = pt == x.point;
            r.detail = "got " + hit->str(ws->sc) + " = " + vec_str(pt) + ", expected " + vec_str(x.point);
        }));
    }
    return out;
}

std::vector<CheckResult> golden_special_linear() {
    std::vector<CheckResult> out;
    for (int n : {2, 3, 4}) {
        for (std::string fr : {"id", "flip"}) {
            if (fr == "flip" && n == 2) continue; // A1 has no diagram automorphism
            std::string type = "A" + std::to_string(n - 1);
            auto ws = make_workspace(type, "sc", "id", fr);
            for (long q : {3L, 5L, 7L, 11L, 13L}) {
                if (n % q == 0) continue;
                std::string subject = (fr == "id" ? "SL" : "SU") + std::to_string(n) + " q=" + std::to_string(q);
                out.push_back(guarded("sl-su", subject, [&](CheckResult& r) {
                    int w = coxeter_element(*ws);
                    ToriOrbit o = make_orbit(*ws, ws->classes.class_of.at(w), q, w);
                    int y = o.wfr_coset.front();
                    auto st = stable_classes(o, y);
                    long stable_want = std::gcd<long>(n, q - 1);
                    long emb_want = std::gcd<long>(n, fr == "id" ? q - 1 : q + 1);
                    std::vector<long> emb;
                    for (auto& s : st) emb.push_back(embedding_count(o, s.rep, y));
                    bool ok = static_cast<long>(st.size()) == stable_want &&
                              std::all_of(emb.begin(), emb.end(), [&](long e) { return e == emb_want; });
                    r = expect("sl-su", subject, ok,
                               "stable=" + std::to_string(st.size()) + " emb=" + join(emb),
                               "stable=" + std::to_string(stable_want) + " emb=" + std::to_string(emb_want) + " each");
                }));
            }
        }
    }
    return out;
}

std::vector<CheckResult> golden_sp4() {
    std::vector<CheckResult> out;
    auto ws = make_workspace("C2");
    for (long q : {3L, 5L, 7L, 9L, 11L, 13L}) {
        std::string qs = " q=" + std::to_string(q);
        ClassificationReport rep;
        try {
            rep = full_report(*ws, q);
        } catch (const Error& e) {
            out.push_back({"sp4", "Sp4" + qs, false, e.what()});
            continue;
        }
        const ReportRow* cox = find_row(rep, "C2");
        const ReportRow* m1 = find_row(rep, "-1");
        long g4 = std::gcd(q - 1, 4L), g8 = std::gcd(q - 1, 8L);
        if (!cox || !m1) {
            out.push_back({"sp4", "Sp4" + qs, false, "missing rows"});
            continue;
        }
        out.push_back(expect("sp4", "Sp4" + qs + " Coxeter",
                             cox->stable_count == g4 && all_equal(*cox, 2) && cox->rational == g8, row_summary(*cox),
                             "stable=" + std::to_string(g4) + " emb=2 each rational=" + std::to_string(g8)));
        long rat = (q - 1) % 4 == 0 ? 14 : 6;
        out.push_back(expect("sp4", "Sp4" + qs + " -1",
                             m1->stable_count == 5 && row_embeddings(*m1) == std::vector<long>{4, 4, 4, 2, 2} &&
                                 m1->rational == rat,
                             row_summary(*m1), "stable=5 emb={4,4,4,2,2} rational=" + std::to_string(rat)));
    }
    return out;
}

std::vector<CheckResult> golden_psp4() {
    std::vector<CheckResult> out;
    auto ws = make_workspace("C2");
    GroupSpec s;
    s.type = "C2";
    s.isogeny = "ad";
    GroupContext ad = build_group(s);
    for (long q : {3L, 5L, 7L, 9L, 11L, 13L}) {
        for (std::string label : {"C2", "-1"}) {
            std::string subject = "PSp4 q=" + std::to_string(q) + " " + (label == "C2" ? "Coxeter" : label);
            out.push_back(guarded("psp4", subject, [&](CheckResult& r) {
                int c = -1;
                for (size_t k = 0; k < ws->classes.rep.size(); ++k)
                    if (is_elliptic(ws->W, ws->classes.rep[k]) && class_label(*ws, ws->classes.rep[k]) == label)
                        c = static_cast<int>(k);
                ToriOrbit o = make_orbit(*ws, c, q);
                auto tr = isogeny_transfer(o, ad);
                long stable = static_cast<long>(tr.embeddings.size());
                std::string got = "stable=" + std::to_string(stable) + " emb=" + join(sorted_desc(tr.embeddings)) +
                                  " rational=" + (tr.rational ? std::to_string(*tr.rational) : "-");
                bool ok;
                std::string want;
                if (label == "C2") {
                    long g = std::gcd(q - 1, 4L);
                    ok = stable == g && tr.rational == g &&
                         std::all_of(tr.embeddings.begin(), tr.embeddings.end(), [](long e) { return e == 1; });
                    want = "stable=" + std::to_string(g) + " emb=1 each rational=" + std::to_string(g);
                } else {
                    long rat = (q - 1) % 4 == 0 ? 10 : 6;
                    ok = stable == 5 && sorted_desc(tr.embeddings) == std::vector<long>{2, 2, 2, 1, 1} &&
                         tr.rational == rat;
                    want = "stable=5 emb={2,2,2,1,1} rational=" + std::to_string(rat);
                }
                r = expect("psp4", subject, ok, got, want);
            }));
        }
    }
    return out;
}

std::vector<CheckResult> golden_g2() {
    std::vector<CheckResult> out;
    auto ws = make_workspace("G2");
    for (long q : {5L, 7L, 11L, 13L}) {
        std::string qs = " q=" + std::to_string(q);
        ClassificationReport rep;
        try {
            rep = full_report(*ws, q);
        } catch (const Error& e) {
            out.push_back({"g2", "G2" + qs, false, e.what()});
            continue;
        }
        const ReportRow *cox = find_row(rep, "G2"), *m1 = find_row(rep, "A1xA1~"), *a2 = find_row(rep, "A2");
        if (!cox || !m1 || !a2) {
            out.push_back({"g2", "G2" + qs, false, "missing rows"});
            continue;
        }
        long g6 = std::gcd(q - 1, 6L);
        out.push_back(expect("g2", "G2" + qs + " Coxeter",
                             cox->stable_count == g6 && cox->rational == g6 && all_equal(*cox, 1), row_summary(*cox),
                             "stable=" + std::to_string(g6) + " emb=1 each rational=" + std::to_string(g6)));
        bool one = q % 3 == 1;
        long st = one ? 6 : 2, rat = one ? 12 : 3;
        std::vector<long> emb = one ? std::vector<long>{3, 3, 3, 1, 1, 1} : std::vector<long>{3, 1};
        out.push_back(expect("g2", "G2" + qs + " A2",
                             a2->stable_count == st && a2->rational == rat && row_embeddings(*a2) == emb,
                             row_summary(*a2),
                             "stable=" + std::to_string(st) + " emb=" + join(emb) + " rational=" + std::to_string(rat)));
        auto by = embeddings_by_size(*m1);
        std::map<size_t, std::vector<long>> want_by = {{1, {4, 4}}, {3, {2, 2}}, {2, {1, 1}}};
        out.push_back(expect("g2", "G2" + qs + " A1xA1~", m1->stable_count == 6 && m1->rational == 10 && by == want_by,
                             row_summary(*m1), "stable=6 sizes 1,3,2 -> emb 4,2,1 rational=10"));
    }
    return out;
}

std::vector<CheckResult> golden_ramified_su3() {
    std::vector<CheckResult> out;
    auto ws = make_workspace("A2", "sc", "flip");
    for (long q : {5L, 7L, 13L}) {
        std::string qs = " q=" + std::to_string(q);
        ClassificationReport rep;
        try {
            rep = full_report(*ws, q);
        } catch (const Error& e) {
            out.push_back({"su3-ram", "SU3" + qs, false, e.what()});
            continue;
        }
        const ReportRow *cox = find_row(rep, "twA2"), *m1 = find_row(rep, "-1");
        if (!cox || !m1) {
            out.push_back({"su3-ram", "SU3" + qs, false, "missing rows"});
            continue;
        }
        long mu3 = std::gcd(q - 1, 3L);
        out.push_back(expect("su3-ram", "SU3" + qs + " twisted Coxeter", cox->stable_count == mu3 && all_equal(*cox, 1),
                             row_summary(*cox), "stable=" + std::to_string(mu3) + " emb=1 each"));
        auto by = embeddings_by_size(*m1);
        std::map<size_t, std::vector<long>> want_by = {{1, {4}}, {3, {2}}, {2, {1}}};
        out.push_back(expect("su3-ram", "SU3" + qs + " w0", m1->stable_count == 3 && by == want_by, row_summary(*m1),
                             "stable=3 sizes 1,3,2 -> emb 4,2,1"));
    }
    return out;
}

// ---------------------------------------------------------------- fuzzing

std::vector<CheckResult> choice_fuzz(int runs, unsigned seed) {
    struct Case {
        std::string type, iso, sigma, fr;
        long q;
    };
    std::vector<Case> cases = {{"C2", "sc", "id", "id", 5},   {"C2", "ad", "id", "id", 5},
                               {"G2", "sc", "id", "id", 7},   {"A2", "sc", "flip", "id", 7},
                               {"A3", "sc", "id", "id", 5},   {"A2", "sc", "id", "flip", 5},
                               {"C2", "sc", "id", "id", 3},   {"A1", "sc", "id", "id", 3}};
    std::vector<std::unique_ptr<Workspace>> ws;
    std::vector<ClassificationReport> canon;
    std::vector<CheckResult> out;
    for (auto& c : cases) {
        ws.push_back(make_workspace(c.type, c.iso, c.sigma, c.fr));
        canon.push_back(full_report(*ws.back(), c.q));
    }
    std::mt19937 rng(seed);
    std::vector<int> bad(cases.size(), 0), done(cases.size(), 0);
    for (int i = 0; i < runs; ++i) {
        size_t k = static_cast<size_t>(i) % cases.size();
        Choices ch{&rng};
        ++done[k];
        if (!(full_report(*ws[k], cases[k].q, ch) == canon[k])) ++bad[k];
    }
    for (size_t k = 0; k < cases.size(); ++k) {
        auto& c = cases[k];
        std::string subject = c.type + " " + c.iso + (c.sigma != "id" ? " sigma=" + c.sigma : "") +
                              (c.fr != "id" ? " fr=" + c.fr : "") + " q=" + std::to_string(c.q);
        out.push_back({"fuzz", subject, bad[k] == 0,
                       std::to_string(done[k] - bad[k]) + "/" + std::to_string(done[k]) + " reruns identical"});
    }
    return out;
}

// ---------------------------------------------------------------- selftest

std::vector<CheckResult> selftest(const SelftestOptions& opt) {
    std::vector<CheckResult> out;
    auto add = [&](const CheckResult& r) {
        out.push_back(r);
        if (opt.on_result) opt.on_result(r);
    };
    for (auto& t : structural_types())
        for (auto& r : structural_suite(t, opt.inject_fault)) add(r);
    add(check_kac_uniqueness("A2", "flip"));
    for (auto* g : {&golden_kac_points, &golden_special_linear, &golden_sp4, &golden_psp4, &golden_g2,
                    &golden_ramified_su3})
        for (auto& r : (*g)()) add(r);
    for (auto& r : choice_fuzz(16, 7u)) add(r);
    return out;
}

} // namespace tori
