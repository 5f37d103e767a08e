#include "doctest.h"
#include "helpers.hpp"

#include "tori/chevalley.hpp"

#include <map>

using namespace tori;
using testing::group;
using testing::kind_of;
using testing::rv;

namespace {

using Vec = std::map<int, long long>;

Vec bracket(const ChevalleyModel& m, const Vec& x, const Vec& y) {
    Vec out;
    for (auto [i, a] : x)
        for (auto [j, b] : y)
            for (auto [k, c] : m.bracket(i, j)) out[k] += a * b * c;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Vec add(Vec a, const Vec& b) {
    for (auto [k, v] : b) a[k] += v;
    std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
    return a;
}

SignedPerm power(const SignedPerm& g, int k, const GroupContext& ctx) {
    SignedPerm out = SignedPerm::identity(ctx);
    for (int i = 0; i < k; ++i) out = out * g;
    return out;
}

} // namespace

TEST_CASE("dimensions") {
    for (auto [t, d] : std::vector<std::pair<std::string, size_t>>{
             {"A1", 3}, {"A2", 8}, {"C2", 10}, {"G2", 14}, {"D4", 28}, {"F4", 52}}) {
        auto ctx = group(t);
        CHECK(build_adjoint(ctx).dim == d);
    }
}

TEST_CASE("structure constants") {
    for (std::string t : {"C2", "G2", "B3"}) {
        CAPTURE(t);
        auto ctx = group(t);
        auto N = structure_constants(ctx);
        for (size_t a = 0; a < ctx.roots.size(); ++a)
            for (size_t b = 0; b < ctx.roots.size(); ++b) {
                int ia = static_cast<int>(a), ib = static_cast<int>(b);
                CHECK(N(ia, ib) == -N(ib, ia));
                std::vector<int> s(ctx.rank);
                for (size_t i = 0; i < ctx.rank; ++i) s[i] = ctx.roots[a][i] + ctx.roots[b][i];
                if (ctx.root_index(s) < 0) {
                    CHECK(N(ia, ib) == 0);
                    continue;
                }
                // |N(a,b)| = k + 1 where b - k a is the start of the a-string
                int k = 0;
                while (true) {
                    std::vector<int> d(ctx.rank);
                    for (size_t i = 0; i < ctx.rank; ++i) d[i] = ctx.roots[b][i] - (k + 1) * ctx.roots[a][i];
                    if (ctx.root_index(d) < 0) break;
                    ++k;
                }
                CHECK(std::abs(N(ia, ib)) == k + 1);
            }
    }
}

TEST_CASE("Jacobi identity") {
    for (std::string t : {"C2", "G2"}) {
        CAPTURE(t);
        auto ctx = group(t);
        auto m = build_adjoint(ctx);
        int n = static_cast<int>(m.dim);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    Vec X{{x, 1}}, Y{{y, 1}}, Z{{z, 1}};
                    auto j = add(add(bracket(m, X, bracket(m, Y, Z)), bracket(m, Y, bracket(m, Z, X))),
                                 bracket(m, Z, bracket(m, X, Y)));
                    CHECK(j.empty());
                }
    }
}

TEST_CASE("Tits generators") {
    for (std::string t : {"A2", "C2", "G2", "B3", "D4"}) {
        CAPTURE(t);
        auto ctx = group(t);
        auto m = build_adjoint(ctx);
        size_t r = ctx.rank;
        for (size_t i = 0; i < r; ++i) {
            // n_i^2 = alpha_i^v(-1)
            RatVec half(r, Rat(0));
            half[i] = frac(1, 2);
            CHECK(m.n_simple[i] * m.n_simple[i] == torus_element(m, half));
            CHECK(tits_generator_matrix(m, static_cast<int>(i)) == m.n_simple[i].dense());
            for (size_t j = i + 1; j < r; ++j) {
                long a = ctx.cartan(i, j).get_si() * ctx.cartan(j, i).get_si();
                int mij = a == 0 ? 2 : a == 1 ? 3 : a == 2 ? 4 : 6;
                std::vector<int> u, v;
                for (int k = 0; k < mij; ++k) {
                    u.push_back(static_cast<int>(k % 2 ? j : i));
                    v.push_back(static_cast<int>(k % 2 ? i : j));
                }
                CHECK(tits_lift(m, u) == tits_lift(m, v));
            }
        }
    }
}

TEST_CASE("lifts do not depend on the reduced word") {
    auto ctx = group("C2");
    auto m = build_adjoint(ctx);
    // both reduced words of w0; the two length-3 words are different elements
    CHECK(tits_lift(m, {0, 1, 0, 1}) == tits_lift(m, {1, 0, 1, 0}));
    CHECK(!(tits_lift(m, {0, 1, 0}) == tits_lift(m, {1, 0, 1})));
    // inverse
    auto g = tits_lift(m, {0, 1});
    CHECK(g * g.inverse() == SignedPerm::identity(ctx));
}

TEST_CASE("eigenvalue profiles") {
    auto a1 = group("A1");
    auto m = build_adjoint(a1);
    auto prof = eigenvalue_profile(m.n_simple[0].dense().to_int());
    CHECK(prof.mult == std::map<long, long>{{1, 1}, {2, 2}});

    CHECK(char_poly(IntMatrix::identity(2)) == std::vector<Int>{1, -2, 1});
    CHECK(cyclotomic(6) == std::vector<Int>{1, -1, 1});
    CHECK(cyclotomic(1) == std::vector<Int>{-1, 1});
    CHECK(euler_phi(12) == 4);

    IntMatrix shear = IntMatrix::from({{1, 1}, {0, 1}});
    CHECK(kind_of([&] { eigenvalue_profile(shear); }) != "");

    EigenProfile p;
    p.mult = {{1, 2}, {3, 1}, {4, 1}};
    auto s = spectrum_of_profile(p);
    CHECK(s.size() == 6);
    CHECK(profile_of_spectrum(s).mult == p.mult);
    CHECK(kind_of([] { profile_of_spectrum({frac(1, 3)}); }) == "NotGaloisStable");
}

TEST_CASE("Coxeter lifts") {
    for (auto [t, h] : std::vector<std::pair<std::string, long>>{{"A2", 3}, {"C2", 4}, {"G2", 6}, {"B3", 6}}) {
        CAPTURE(t);
        auto ctx = group(t);
        auto m = build_adjoint(ctx);
        std::vector<int> word;
        for (size_t i = 0; i < ctx.rank; ++i) word.push_back(static_cast<int>(i));
        auto g = tits_lift(m, word);
        CHECK(multiplicative_order(g.dense()) == h);
        // a primitive h-th root of unity occurs
        auto prof = eigenvalue_profile(g.dense().to_int());
        CHECK(prof.mult.count(h));
    }
}

TEST_CASE("pinned automorphisms") {
    auto ctx = group("A2", "sc", "flip");
    auto m = build_adjoint(ctx);
    CHECK(!(m.sigma_hat == SignedPerm::identity(ctx)));
    CHECK(m.sigma_hat * m.sigma_hat == SignedPerm::identity(ctx));
    CHECK(pinned_sigma(m, ctx.sigma) == m.sigma_hat);
    // simple root vectors are permuted without signs
    CHECK(m.sigma_sign[0] == 1);
    CHECK(m.sigma_sign[1] == 1);

    auto d4 = group("D4", "sc", "(1 3 4)");
    auto md = build_adjoint(d4);
    CHECK(power(md.sigma_hat, 3, d4) == SignedPerm::identity(d4));
    CHECK(!(power(md.sigma_hat, 1, d4) == SignedPerm::identity(d4)));
}

TEST_CASE("torus and sigma spectra") {
    auto a1 = group("A1");
    auto m = build_adjoint(a1);
    // lambda = coroot, l = 2: e_a picks up zeta_2^2 = 1
    CHECK(torus_sigma_profile(a1, m.sigma_hat, rv({{1, 1}}), 2).mult == std::map<long, long>{{1, 3}});
    // l = 4: e_a and e_-a get -1
    CHECK(torus_sigma_profile(a1, m.sigma_hat, rv({{1, 1}}), 4).mult == std::map<long, long>{{1, 1}, {2, 2}});

    // ramified SU3: sigma alone has eigenvalues 1 (dim 3) and -1 (dim 5)
    auto su3 = group("A2", "sc", "flip");
    auto ms = build_adjoint(su3);
    CHECK(torus_sigma_profile(su3, ms.sigma_hat, rv({{0, 1}, {0, 1}}), 1).mult ==
          std::map<long, long>{{1, 3}, {2, 5}});
    // cycle spectrum of n sigma agrees with the dense characteristic polynomial
    auto g = tits_lift(ms, {0}) * ms.sigma_hat;
    CHECK(profile_of_spectrum(spectrum(su3, g)) == eigenvalue_profile(g.dense().to_int()));
}
