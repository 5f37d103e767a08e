#include "doctest.h"
#include "tori/error.hpp"
#include "tori/intlin.hpp"

#include <random>

using namespace tori;

namespace {

std::vector<Int> factors(const IntMatrix& m) {
    Smith s = smith(m);
    std::vector<Int> d;
    for (size_t i = 0; i < std::min(m.rows, m.cols); ++i) d.push_back(s.D(i, i));
    return d;
}

std::string kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

} // namespace

TEST_CASE("smith normal form") {
    CHECK(factors(IntMatrix::identity(2)) == std::vector<Int>{1, 1});
    CHECK(factors(IntMatrix::from({{2, 1}, {0, 2}})) == std::vector<Int>{1, 4});
    CHECK(factors(IntMatrix::from({{2, 0}, {0, 2}})) == std::vector<Int>{2, 2});
    CHECK(factors(IntMatrix::from({{6, 0}, {0, 4}})) == std::vector<Int>{2, 12});

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
        IntMatrix m(r, c);
        for (auto& x : m.a) x = dist(rng);
        Smith s = smith(m);
        CHECK(s.U * m * s.V == s.D);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j)
                if (i != j) CHECK(s.D(i, j) == 0);
        for (size_t i = 0; i + 1 < std::min(r, c); ++i)
            if (s.D(i + 1, i + 1) != 0) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
    }
}

TEST_CASE("cokernel order equals |det|") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = 1 + trial % 4;
        IntMatrix m(n, n);
        for (auto& x : m.a) x = dist(rng);
        Int d = abs(determinant(m));
        if (d == 0) {
            CHECK(kind_of([&] { cokernel(m); }) == "InfiniteCokernel");
            continue;
        }
        auto g = cokernel(m);
        CHECK(g.order() == d);
        // every lattice vector maps to coordinates; columns of m map to zero
        for (size_t j = 0; j < n; ++j) {
            RatVec col(n);
            for (size_t i = 0; i < n; ++i) col[i] = m(i, j);
            for (auto& c : g.coords(col)) CHECK(c == 0);
        }
        for (size_t i = 0; i < g.ngens(); ++i) {
            auto c = g.coords(g.lift[i]);
            for (size_t k = 0; k < g.ngens(); ++k) CHECK(c[k] == (k == i ? 1 : 0));
        }
    }
}

TEST_CASE("cokernel of coxeter elements") {
    // s_1 s_2 on coroot coordinates for A2 and G2
    auto a2 = IntMatrix::from({{-1, 1}, {-1, 0}}) - IntMatrix::identity(2);
    CHECK(cokernel(a2).invariant_factors == std::vector<Int>{3});
    auto g2 = IntMatrix::from({{-1, 1}, {-3, 2}}) - IntMatrix::identity(2);
    CHECK(cokernel(g2).trivial());
    CHECK(kind_of([] { cokernel(IntMatrix(1, 1)); }) == "InfiniteCokernel");
}

TEST_CASE("torsion fixed points") {
    auto a2 = IntMatrix::from({{-1, 1}, {-1, 0}});
    CHECK(torsion_fixed_points(a2, 5).invariant_factors == std::vector<Int>{3});
    CHECK(torsion_fixed_points(a2, 3).trivial());
    auto minus = IntMatrix::from({{-1}});
    auto g = torsion_fixed_points(minus, 3);
    CHECK(g.invariant_factors == std::vector<Int>{2});
    CHECK(g.lift[0] == RatVec{Rat(1, 2)});
    auto c2 = IntMatrix::from({{-1, 2}, {-1, 1}});
    CHECK(torsion_fixed_points(c2, 3).invariant_factors == std::vector<Int>{2});
    CHECK(kind_of([] { torsion_fixed_points(IntMatrix::identity(2), 0); }) == "NonElliptic");

    // generators really are fixed modulo the lattice
    auto f = torsion_fixed_points(IntMatrix::from({{-1, 0}, {0, -1}}), 0);
    CHECK(f.invariant_factors == std::vector<Int>{2, 2});
    for (auto& l : f.lift) {
        RatVec d = mat_apply(IntMatrix::from({{-1, 0}, {0, -1}}), l);
        for (size_t i = 0; i < 2; ++i) d[i] -= l[i];
        CHECK(is_integral(d));
    }
}

TEST_CASE("coinvariants") {
    FiniteAbelianGroup z3;
    z3.invariant_factors = {3};
    z3.lift = {{Rat(1, 3)}};
    z3.coord_map = {{3}};
    CHECK(coinvariants(z3, IntMatrix::identity(1)).order() == 3);
    CHECK(coinvariants(z3, IntMatrix::from({{7}})).order() == 3);
    CHECK(coinvariants(z3, IntMatrix::from({{5}})).trivial());

    FiniteAbelianGroup z2z4;
    z2z4.invariant_factors = {2, 4};
    z2z4.lift = {{Rat(1, 2), 0}, {0, Rat(1, 4)}};
    z2z4.coord_map = {{2, 0}, {0, 4}};
    CHECK(kind_of([&] { coinvariants(z2z4, IntMatrix::from({{1, 0}, {1, 1}})); }) == "IllDefinedEndo");
    auto swapish = IntMatrix::from({{1, 0}, {2, 1}});
    auto c = coinvariants(z2z4, swapish);
    CHECK(c.order() == 4);
    // order divides |G|, and coinvariants of e and e^-1 agree in size
    auto inv = IntMatrix::from({{1, 0}, {-2, 1}});
    CHECK(coinvariants(z2z4, inv).order() == c.order());
    CHECK(coinvariants(z2z4, IntMatrix::from({{1, 0}, {0, 3}})).order() == 4);
    CHECK(coinvariants(z2z4, IntMatrix::from({{1, 0}, {0, -1}})).order() == 4);

    auto q = quotient(z2z4, {{0, 2}});
    CHECK(q.invariant_factors == std::vector<Int>{2, 2});
}

TEST_CASE("torsion equations") {
    auto s0 = solve_torsion_equation(IntMatrix(1, 1), {Rat(2, 5)});
    CHECK(s0.solvable);
    CHECK(s0.base == RatVec{Rat(2, 5)});
    CHECK(s0.stabilizer.trivial());

    auto s1 = solve_torsion_equation(IntMatrix::from({{-1}}), {Rat(1, 2)});
    CHECK(s1.solvable);
    CHECK(s1.base == RatVec{Rat(1, 4)});
    CHECK(s1.stabilizer.invariant_factors == std::vector<Int>{2});

    auto s2 = solve_torsion_equation(IntMatrix::identity(1), {Rat(1, 3)});
    CHECK_FALSE(s2.solvable);
    auto s3 = solve_torsion_equation(IntMatrix::identity(1), {Rat(0)});
    CHECK(s3.solvable);
    CHECK_FALSE(s3.finite_stabilizer);
}
