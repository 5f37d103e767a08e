#include "doctest.h"
#include "helpers.hpp"

using namespace tori;
using testing::group;
using testing::kind_of;
using testing::rv;

TEST_CASE("build_group basics") {
    auto c2 = group("C2", "sc", "id", "id", 5);
    CHECK(c2.roots.size() == 8);
    CHECK(c2.npos == 4);
    CHECK(c2.connection_index() == 2);
    CHECK(c2.p == 5);
    CHECK(c2.simply_connected());

    auto a1 = group("A1", "sc", "id", "id", 3);
    CHECK(a1.roots.size() == 2);
    CHECK(weyl_order(a1.factors) == 2);

    auto su3 = group("A2", "sc", "flip", "id", 7);
    CHECK(!su3.split());
    CHECK(su3.sigma.perm == std::vector<int>{1, 0});

    CHECK(group("G2").roots.size() == 12);
    CHECK(group("F4").roots.size() == 48);
    CHECK(group("D4").connection_index() == 4);
    CHECK(group("A1xA1").rank == 2);
    CHECK(!group("C2", "ad").simply_connected());
}

TEST_CASE("C2 short root comes first") {
    auto c2 = group("C2");
    CHECK(c2.norm2[0] < c2.norm2[1]);
    // A[i][j] = <alpha_j, coroot_i>
    CHECK(c2.cartan(0, 1) == -2);
    CHECK(c2.cartan(1, 0) == -1);
}

TEST_CASE("build_group errors") {
    CHECK(kind_of([] { group("C2", "sc", "id", "id", 4); }) == "TamenessViolation");
    CHECK(kind_of([] { group("G2", "sc", "id", "id", 3); }) == "TamenessViolation");
    CHECK(kind_of([] { group("A2", "sc", "id", "id", 6); }) == "InvalidSpec");
    CHECK(kind_of([] { group("B2", "sc", "flip"); }) == "InvalidTwist");
    CHECK(kind_of([] { group("Q3"); }) != "");

    GroupSpec bad;
    bad.type = "A1";
    bad.isogeny = "matrix";
    bad.lattice = {rv({{1, 4}})};
    CHECK(kind_of([&] { build_group(bad); }) == "InvalidLattice");
    bad.lattice = {rv({{1, 2}})};
    CHECK(kind_of([&] { build_group(bad); }) == "");
    bad.lattice = {rv({{2, 1}})};
    CHECK(kind_of([&] { build_group(bad); }) == "InvalidLattice");
}

TEST_CASE("twists must be compatible with q") {
    // ramified SU3 with the flip as Frobenius twist is fine for any q; a
    // three-cycle on A2xA2xA2 needs sigma^q = Fr^-1 sigma Fr
    GroupSpec s;
    s.type = "A1xA1xA1";
    s.sigma = "(1 2 3)";
    s.q = 5;
    CHECK(kind_of([&] { build_group(s); }) == "IncompatibleTwists");
    s.q = 7;
    CHECK(kind_of([&] { build_group(s); }) == "");
}

TEST_CASE("simple affine roots") {
    auto g2 = group("G2");
    const auto& walls = simple_affine_roots(g2);
    REQUIRE(walls.size() == 3);
    std::vector<int> marks;
    for (auto& w : walls) marks.push_back(w.mark);
    CHECK(marks == std::vector<int>{1, 3, 2});

    auto a1 = group("A1");
    const auto& w1 = simple_affine_roots(a1);
    REQUIRE(w1.size() == 2);
    CHECK(w1[0].level == 1);
    CHECK(w1[1].level == 0);

    auto su3 = group("A2", "sc", "flip");
    const auto& w3 = simple_affine_roots(su3);
    REQUIRE(w3.size() == 2);
    CHECK(w3[0].level == Rat(1, 2));
    CHECK(w3[1].level == 0);

    // mark identity at the base vertex and at a random rational point
    for (std::string t : {"A3", "B3", "C3", "D4", "G2", "F4"}) {
        auto g = group(t);
        const auto& ws = simple_affine_roots(g);
        CHECK(ws.size() == g.rank + 1);
        RatVec x(g.rank);
        for (size_t i = 0; i < g.rank; ++i) x[i] = frac(static_cast<long>(i + 1), 7);
        Rat s = 0;
        for (auto& w : ws) s += w.mark * g.eval(w, x);
        CHECK(s == g.mark_constant[0]);
    }
    CHECK(kind_of([] { simple_affine_roots(group("A3", "sc", "flip")); }) == "UnsupportedTwist");
}

TEST_CASE("alcove membership") {
    auto g2 = group("G2");
    CHECK(alcove_membership(g2, rv({{3, 6}, {5, 6}})).kind == Membership::Interior);
    auto base = alcove_membership(g2, rv({{0, 1}, {0, 1}}));
    CHECK(base.kind == Membership::Boundary);
    CHECK(base.vanishing.size() == 2);
    CHECK(alcove_membership(g2, rv({{2, 1}, {0, 1}})).kind == Membership::Outside);
    // same point, larger denominator
    CHECK(alcove_membership(g2, rv({{6, 12}, {10, 12}})).kind == Membership::Interior);

    // the -1 point of C2 lies on exactly one wall
    auto c2 = group("C2");
    auto m = alcove_membership(c2, rv({{1, 4}, {2, 4}}));
    CHECK(m.kind == Membership::Boundary);
    CHECK(m.vanishing.size() == 1);
}

TEST_CASE("local root subsystems") {
    auto g2 = group("G2");
    auto loc = local_root_subsystem(g2, rv({{1, 2}, {1, 1}}), rv({{1, 1}, {2, 1}}), 2);
    CHECK(loc.type.str() == "A1xA1");
    CHECK(local_root_subsystem(g2, rv({{0, 1}, {0, 1}})).type.str() == "G2");
    CHECK(local_root_subsystem(g2, rv({{3, 6}, {5, 6}})).type.str() == "empty");

    auto c2 = group("C2");
    // only the short simple root pairs integrally with (1/4, 1/2)
    CHECK(local_root_subsystem(c2, rv({{1, 4}, {2, 4}})).type.str() == "A1");
    CHECK(local_root_subsystem(c2, rv({{1, 2}, {1, 2}})).type.str() == "A1xA1");
}

TEST_CASE("fundamental group") {
    CHECK(fundamental_group(group("C2")).omega.trivial());
    CHECK(fundamental_group(group("C2", "ad")).omega.invariant_factors == std::vector<Int>{2});
    CHECK(fundamental_group(group("A2", "sc", "id", "flip")).omega.trivial());
    CHECK(fundamental_group(group("A3", "ad")).omega.invariant_factors == std::vector<Int>{4});
    CHECK(fundamental_group(group("D4", "ad")).omega.invariant_factors == std::vector<Int>{2, 2});
    // flip acts on Z/3 by -1: coinvariants Z/3 / 2(Z/3) = 0
    CHECK(fundamental_group(group("A2", "ad", "id", "flip")).fr_coinvariants.trivial());
    for (std::string t : {"A1", "A3", "B3", "C3", "D4", "G2", "F4"}) {
        auto ad = group(t, "ad");
        CHECK(fundamental_group(ad).omega.order() == ad.connection_index());
    }
}

TEST_CASE("residue characteristic") {
    auto c2 = group("C2");
    CHECK(residue_characteristic(c2, 9) == 3);
    CHECK(residue_characteristic(c2, 25) == 5);
    CHECK(kind_of([&] { residue_characteristic(c2, 2); }) == "TamenessViolation");
    CHECK(residue_characteristic(c2, 2, false) == 2);
    CHECK(kind_of([&] { residue_characteristic(c2, 12); }) == "InvalidSpec");
}
