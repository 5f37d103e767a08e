#include "doctest.h"
#include "helpers.hpp"

#include "tori/checks.hpp"

#include <algorithm>
#include <numeric>

using namespace tori;
using testing::group;
using testing::kind_of;

namespace {

int class_with_label(const Workspace& ws, const std::string& label) {
    for (size_t c = 0; c < ws.classes.rep.size(); ++c) {
        int w = ws.classes.rep[c];
        if (is_elliptic(ws.W, w) && class_label(ws, w) == label) return static_cast<int>(c);
    }
    return -1;
}

const ReportRow* row(const ClassificationReport& r, const std::string& label) {
    for (auto& x : r.rows)
        if (x.label == label) return &x;
    return nullptr;
}

} // namespace

TEST_CASE("labels") {
    auto c2 = make_workspace("C2");
    CHECK(class_with_label(*c2, "C2") >= 0);
    CHECK(class_with_label(*c2, "-1") >= 0);
    auto g2 = make_workspace("G2");
    CHECK(class_with_label(*g2, "G2") >= 0);
    CHECK(class_with_label(*g2, "A2") >= 0);
    CHECK(class_with_label(*g2, "A1xA1~") >= 0);
    auto su3 = make_workspace("A2", "sc", "flip");
    CHECK(class_with_label(*su3, "twA2") >= 0);
    CHECK(class_with_label(*su3, "-1") >= 0);
}

TEST_CASE("simply connected form") {
    auto ad = group("C2", "ad");
    auto sc = simply_connected_form(ad);
    CHECK(sc.simply_connected());
    CHECK(sc.rank == 2);
    auto ws = Workspace::build(ad);
    CHECK(ws->sc.simply_connected());
    CHECK(!ws->lattice.simply_connected());
}

TEST_CASE("orbits") {
    auto ws = make_workspace("C2");
    int cox = class_with_label(*ws, "C2");
    auto o = make_orbit(*ws, cox, 5);
    CHECK(o.p == 5);
    CHECK(o.centralizer.size() == 4);
    CHECK(!o.wfr_coset.empty());
    CHECK(o.kac.point == testing::rv({{3, 8}, {1, 2}}));

    // identity is not elliptic
    int id_class = ws->classes.class_of.at(0);
    CHECK(kind_of([&] { make_orbit(*ws, id_class, 5); }) == "InvalidArgument");
    // the Coxeter class of C2 has order 4: wild at p = 2 only, q = 3 is tame
    CHECK(kind_of([&] { make_orbit(*ws, cox, 3); }) == "");
}

TEST_CASE("classes not defined over k") {
    // Fr swaps the two factors; a class with different components is not Fr-stable
    auto ws = make_workspace("G2xG2", "sc", "id", "flip");
    int mixed = -1;
    for (size_t c = 0; c < ws->classes.rep.size(); ++c) {
        int w = ws->classes.rep[c];
        if (!is_elliptic(ws->W, w)) continue;
        int image = ws->W.fr_img[w];
        if (ws->classes.class_of.at(image) != static_cast<int>(c)) {
            mixed = static_cast<int>(c);
            break;
        }
    }
    REQUIRE(mixed >= 0);
    CHECK(kind_of([&] { make_orbit(*ws, mixed, 7); }) == "NotDefinedOverK");
}

TEST_CASE("stable classes and embeddings of Sp4") {
    auto ws = make_workspace("C2");
    for (long q : {3L, 5L, 7L, 9L}) {
        CAPTURE(q);
        auto o = make_orbit(*ws, class_with_label(*ws, "C2"), q);
        auto st = stable_classes(o);
        CHECK(static_cast<long>(st.size()) == std::gcd(q - 1, 4L));
        size_t members = 0;
        for (auto& s : st) {
            members += s.members.size();
            CHECK(embedding_count(o, s.rep, o.wfr_coset.front()) == 2);
        }
        CHECK(members == o.centralizer.size());
    }
}

TEST_CASE("two embedding routes agree") {
    for (auto [type, sigma, fr, q] : std::vector<std::tuple<std::string, std::string, std::string, long>>{
             {"C2", "id", "id", 5}, {"G2", "id", "id", 7}, {"A2", "flip", "id", 5}, {"A2", "id", "flip", 5},
             {"A3", "id", "id", 5}, {"B3", "id", "id", 7}}) {
        CAPTURE(type);
        CAPTURE(q);
        auto ws = make_workspace(type, "sc", sigma, fr);
        for (int c : fr_stable_elliptic_classes(ws->W, ws->classes, q)) {
            ToriOrbit o;
            try {
                o = make_orbit(*ws, c, q);
            } catch (const Error& e) {
                continue; // wild class
            }
            int y = o.wfr_coset.front();
            for (auto& s : stable_classes(o, y)) {
                CHECK(embedding_count(o, s.rep, y) == embedding_count_lattice(o, s.rep, y));
            }
        }
    }
}

TEST_CASE("stable counts do not depend on w_Fr") {
    auto ws = make_workspace("G2");
    auto o = make_orbit(*ws, class_with_label(*ws, "A1xA1~"), 7);
    size_t n = stable_classes(o, o.wfr_coset.front()).size();
    for (int y : o.wfr_coset) CHECK(stable_classes(o, y).size() == n);
}

TEST_CASE("rational classes") {
    std::string reason;
    CHECK(rational_supported(group("C2")));
    CHECK(rational_supported(group("A2", "sc", "flip")));
    CHECK(!rational_supported(group("A2", "sc", "id", "flip"), &reason));
    CHECK(!reason.empty());

    auto ws = make_workspace("C2");
    auto o = make_orbit(*ws, class_with_label(*ws, "-1"), 5);
    auto rr = rational_class_count(o);
    REQUIRE(rr.supported);
    CHECK(rr.total == 14);
    CHECK(std::accumulate(rr.fibers.begin(), rr.fibers.end(), 0L) == rr.total);
    CHECK(rr.fibers.size() == rr.stable.size());
    for (auto f : rr.fibers) CHECK(f >= 1);
}

TEST_CASE("isogeny transfer") {
    auto ws = make_workspace("C2");
    auto o = make_orbit(*ws, class_with_label(*ws, "-1"), 7);
    // trivial kernel: the simply connected group itself
    auto same = isogeny_transfer(o, ws->sc);
    int y = o.wfr_coset.front();
    auto st = stable_classes(o, y);
    REQUIRE(same.embeddings.size() == st.size());
    for (size_t i = 0; i < st.size(); ++i) CHECK(same.embeddings[i] == embedding_count(o, st[i].rep, y));
    REQUIRE(same.rational);
    CHECK(*same.rational == rational_class_count(o).total);

    auto ad = group("C2", "ad");
    auto tr = isogeny_transfer(o, ad);
    long total = std::accumulate(tr.embeddings.begin(), tr.embeddings.end(), 0L);
    long sc_total = 0;
    for (auto& s : st) sc_total += embedding_count(o, s.rep, y);
    CHECK(total * 2 == sc_total);
    // same numbers straight from the adjoint lattice
    REQUIRE(tr.embeddings.size() == st.size());
    for (size_t i = 0; i < st.size(); ++i) CHECK(tr.embeddings[i] == embedding_count(o, st[i].rep, y, ad));
}

TEST_CASE("component sequence") {
    auto sc = make_workspace("C2");
    for (long q : {5L, 7L}) {
        for (std::string label : {"C2", "-1"}) {
            auto o = make_orbit(*sc, class_with_label(*sc, label), q);
            int y = o.wfr_coset.front();
            for (auto& s : stable_classes(o, y)) {
                auto cs = component_sequence_check(o, s.rep, y, sc->sc);
                CHECK(cs.omega == 1);
                CHECK(cs.ok());
            }
        }
    }
    // on the adjoint lattice the Coxeter class satisfies the product identity
    auto ad = make_workspace("C2", "ad");
    auto o = make_orbit(*ad, class_with_label(*ad, "C2"), 5);
    int y = o.wfr_coset.front();
    for (auto& s : stable_classes(o, y)) CHECK(component_sequence_check(o, s.rep, y, ad->lattice).ok());
}

TEST_CASE("Coxeter report") {
    auto a2 = make_workspace("A2");
    int c = coxeter_element(*a2);
    CHECK(is_elliptic(a2->W, c));
    CHECK(a2->W.order(c) == 3);
    auto r = coxeter_report(*a2, 7);
    CHECK(r.coker == 3);
    CHECK(r.connection_index == 3);
    CHECK(r.type_a);
    CHECK(r.barycenter);
    CHECK(r.ok());

    for (std::string t : {"C2", "G2", "B3", "D4"}) {
        CAPTURE(t);
        auto ws = make_workspace(t);
        auto cr = coxeter_report(*ws, 13);
        CHECK(cr.coker == ws->sc.connection_index());
        CHECK(!cr.type_a);
    }
}

TEST_CASE("full report") {
    auto ws = make_workspace("C2");
    auto rep = full_report(*ws, 5);
    CHECK(rep.rows.size() == 2);
    auto* m1 = row(rep, "-1");
    REQUIRE(m1);
    CHECK(m1->defined_over_k);
    CHECK(m1->stable_count == 5);
    CHECK(m1->rational == 14);
    CHECK(m1->checks_ok());
    long sum = 0;
    for (auto& s : m1->stable) sum += s.size;
    CHECK(sum == 8);
    // stable rows are sorted largest first
    CHECK(std::is_sorted(m1->stable.rbegin(), m1->stable.rend()));

    CHECK(full_report(*ws, 5) == rep);
    std::mt19937 rng(3);
    CHECK(full_report(*ws, 5, Choices{&rng}) == rep);

    // the adjoint -1 row carries the failed exact-sequence flag
    auto ad = make_workspace("C2", "ad");
    auto arep = full_report(*ad, 5);
    auto* am1 = row(arep, "-1");
    REQUIRE(am1);
    CHECK(am1->fibers_ok);
    CHECK(!am1->sequence_ok);
    CHECK(am1->rational == 10);
    REQUIRE(row(arep, "C2"));
    CHECK(row(arep, "C2")->checks_ok());
}

TEST_CASE("unramified SU3 report") {
    auto ws = make_workspace("A2", "sc", "id", "flip");
    auto rep = full_report(*ws, 5);
    REQUIRE(rep.rows.size() == 1);
    auto& r = rep.rows[0];
    CHECK(r.defined_over_k);
    CHECK(r.stable_count == std::gcd(3L, 5L - 1));
    REQUIRE(!r.stable.empty());
    CHECK(r.stable[0].embeddings == std::gcd(3L, 5L + 1));
    CHECK(!r.rational);
}
