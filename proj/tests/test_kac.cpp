#include "doctest.h"
#include "helpers.hpp"

#include "tori/checks.hpp"
#include "tori/kac.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace tori;
using testing::group;
using testing::kind_of;
using testing::rv;

namespace {

std::set<RatVec> points_of(const std::vector<KacPoint>& ps) {
    std::set<RatVec> out;
    for (auto& p : ps) out.insert(p.point);
    return out;
}

const KacPoint* by_label(const Workspace& ws, const std::vector<KacPoint>& ps, const std::string& label) {
    for (auto& p : ps)
        if (class_label(ws, ws.classes.rep[p.class_id]) == label) return &p;
    return nullptr;
}

} // namespace

TEST_CASE("candidate points") {
    auto a1 = group("A1");
    // lambda in {0, 1} * coroot with lambda/2 in [0, 1/2]
    auto c2 = candidate_points(a1, 2);
    CHECK(c2.size() == 2);
    for (auto& lam : c2) {
        RatVec x = lam;
        for (auto& v : x) v /= 2;
        CHECK(alcove_membership(a1, x).kind != Membership::Outside);
    }
    auto g2 = group("G2");
    for (long l : {1L, 2L, 3L, 6L}) {
        for (auto& lam : candidate_points(g2, l)) {
            CHECK(is_integral(lam));
            RatVec x = lam;
            for (auto& v : x) v /= l;
            CHECK(alcove_membership(g2, x).kind != Membership::Outside);
        }
    }
    CHECK(candidate_points(g2, 1).size() == 1);

    // twisted: only sigma-fixed lambda
    auto su3 = group("A2", "sc", "flip");
    for (auto& lam : candidate_points(su3, 6)) CHECK(su3.sigma_fixed(lam));
}

TEST_CASE("torus sigma order") {
    auto a1 = group("A1");
    // coroot(zeta_4) = diag(i, -i)
    CHECK(torus_sigma_order(a1, rv({{1, 1}}), 4) == 4);
    CHECK(torus_sigma_order(a1, rv({{1, 1}}), 2) == 2);
    CHECK(torus_sigma_order(a1, rv({{2, 1}}), 4) == 2);
    auto su3 = group("A2", "sc", "flip");
    CHECK(torus_sigma_order(su3, rv({{0, 1}, {0, 1}}), 1) == 2);
}

TEST_CASE("Kac points of split groups") {
    auto c2 = make_workspace("C2");
    auto pts = all_points(c2->sc, c2->W, c2->model, c2->classes);
    CHECK(pts.size() == 2);
    CHECK(points_of(pts) == std::set<RatVec>{rv({{3, 8}, {1, 2}}), rv({{1, 4}, {1, 2}})});
    auto* cox = by_label(*c2, pts, "C2");
    REQUIRE(cox);
    CHECK(cox->l == 8);
    auto* m1 = by_label(*c2, pts, "-1");
    REQUIRE(m1);
    CHECK(m1->point == rv({{1, 4}, {1, 2}}));
    CHECK(m1->l == 4);

    auto g2 = make_workspace("G2");
    auto gp = all_points(g2->sc, g2->W, g2->model, g2->classes);
    CHECK(gp.size() == 3);
    REQUIRE(by_label(*g2, gp, "G2"));
    CHECK(by_label(*g2, gp, "G2")->point == rv({{1, 2}, {5, 6}}));
    REQUIRE(by_label(*g2, gp, "A2"));
    CHECK(by_label(*g2, gp, "A2")->point == rv({{1, 3}, {2, 3}}));
    REQUIRE(by_label(*g2, gp, "A1xA1~"));
    CHECK(by_label(*g2, gp, "A1xA1~")->point == rv({{1, 2}, {1, 1}}));

    auto a2 = make_workspace("A2");
    auto ap = all_points(a2->sc, a2->W, a2->model, a2->classes);
    REQUIRE(ap.size() == 1);
    CHECK(ap[0].point == rv({{1, 3}, {1, 3}}));
}

TEST_CASE("Kac points of ramified SU3") {
    auto su3 = make_workspace("A2", "sc", "flip");
    auto pts = all_points(su3->sc, su3->W, su3->model, su3->classes);
    CHECK(pts.size() == 2);
    CHECK(points_of(pts) == std::set<RatVec>{rv({{1, 6}, {1, 6}}), rv({{0, 1}, {0, 1}})});
}

TEST_CASE("Kac coordinates") {
    auto g2 = group("G2");
    auto [j, coords] = kac_coordinates(g2, rv({{1, 2}, {5, 6}}));
    CHECK(j == 6);
    CHECK(coords == std::vector<Int>{1, 1, 1});

    // Kac mark identity: sum mark * s_i = j
    for (std::string t : {"C2", "G2", "B3", "F4"}) {
        CAPTURE(t);
        auto ws = make_workspace(t);
        const auto& walls = simple_affine_roots(ws->sc);
        for (auto& p : all_points(ws->sc, ws->W, ws->model, ws->classes)) {
            Int s = 0;
            for (size_t i = 0; i < walls.size(); ++i) s += walls[i].mark * p.coords[i];
            CHECK(s == p.j);
            // order in the adjoint group divides the order of the lift
            CHECK(Int(p.l) % p.j == 0);
        }
    }
}

TEST_CASE("assignment does not depend on the primitive root") {
    for (std::string t : {"C2", "G2", "A3"}) {
        CAPTURE(t);
        auto ws = make_workspace(t);
        for (size_t c = 0; c < ws->classes.classes.size(); ++c) {
            int w = ws->classes.rep[c];
            if (!is_elliptic(ws->W, w)) continue;
            auto base = assign_point(ws->sc, ws->W, ws->model, w, 1);
            for (long u = 2; u < base.l; ++u) {
                if (std::gcd(u, base.l) != 1) continue;
                CHECK(assign_point(ws->sc, ws->W, ws->model, w, u).point == base.point);
            }
            // and not on the class representative
            for (int v : ws->classes.classes[c])
                CHECK(assign_point(ws->sc, ws->W, ws->model, v).point == base.point);
        }
    }
}

TEST_CASE("non-elliptic classes are rejected") {
    auto ws = make_workspace("C2");
    CHECK(kind_of([&] { assign_point(ws->sc, ws->W, ws->model, 0); }) != "");
}

TEST_CASE("rendering") {
    auto ws = make_workspace("C2");
    auto pts = all_points(ws->sc, ws->W, ws->model, ws->classes);
    auto* m1 = by_label(*ws, pts, "-1");
    REQUIRE(m1);
    CHECK(!m1->str(ws->sc).empty());
}
