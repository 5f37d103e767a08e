#include "tori/kac.hpp"

#include "tori/error.hpp"
#include "tori/tits.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <numeric>
#include <set>
#include <sstream>

namespace tori {

std::string KacPoint::str(const GroupContext& ctx) const {
    if (is_integral(lambda) && std::all_of(lambda.begin(), lambda.end(), [](const Rat& x) { return x == 0; }))
        return "x0";
    RatVec x(lambda.size());
    for (size_t i = 0; i < x.size(); ++i) x[i] = lambda[i] / l;
    return ctx.coroot_combo(x);
}

std::vector<RatVec> candidate_points(const GroupContext& ctx, long l) {
    if (l < 1) fail("InvalidArgument", "l must be positive");
    size_t r = ctx.rank;
    auto cw = ctx.coweights();
    // sigma-orbits of simple roots; <alpha_i, x> = k_O / l with 0 <= k_O <= l
    std::vector<int> orbit_of(r, -1);
    std::vector<std::vector<int>> orbits;
    for (size_t i = 0; i < r; ++i) {
        if (orbit_of[i] >= 0) continue;
        std::vector<int> o;
        for (int j = static_cast<int>(i); orbit_of[j] < 0; j = ctx.sigma.perm[j]) {
            orbit_of[j] = static_cast<int>(orbits.size());
            o.push_back(j);
        }
        orbits.push_back(o);
    }
    // highest-root coefficients bound sum_i c_i k_i <= l within each factor
    std::vector<int> theta(r, 0);
    for (size_t f = 0; f < ctx.factors.size(); ++f)
        for (size_t i = 0; i < r; ++i)
            if (ctx.factor_of[i] == static_cast<int>(f)) theta[i] = ctx.roots[ctx.highest[f]][i];
    std::vector<long> budget(ctx.factors.size(), l);
    std::vector<long> k(orbits.size(), 0);
    std::vector<RatVec> out;
    std::function<void(size_t)> rec = [&](size_t o) {
        if (o == orbits.size()) {
            RatVec lam(r, Rat(0));
            for (size_t i = 0; i < r; ++i)
                for (size_t c = 0; c < r; ++c) lam[c] += cw[i][c] * k[orbit_of[i]];
            if (!is_integral(lam)) return;
            RatVec x(r);
            for (size_t c = 0; c < r; ++c) x[c] = lam[c] / l;
            if (alcove_membership(ctx, x).kind == Membership::Outside) return;
            out.push_back(lam);
            return;
        }
        for (long v = 0; v <= l; ++v) {
            bool ok = true;
            for (int i : orbits[o]) {
                budget[ctx.factor_of[i]] -= theta[i] * v;
                if (budget[ctx.factor_of[i]] < 0) ok = false;
            }
            if (ok) {
                k[o] = v;
                rec(o + 1);
            }
            for (int i : orbits[o]) budget[ctx.factor_of[i]] += theta[i] * v;
            if (!ok) break;
        }
    };
    rec(0);
    return out;
}

namespace {

// reduced row echelon form in place; returns pivot columns
std::vector<size_t> rref(std::vector<RatVec>& rows) {
    std::vector<size_t> piv;
    size_t n = rows.empty() ? 0 : rows[0].size(), rk = 0;
    for (size_t c = 0; c < n && rk < rows.size(); ++c) {
        size_t p = rk;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rk]);
        Rat inv = 1 / rows[rk][c];
        for (auto& x : rows[rk]) x *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rk || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (size_t k = c; k < n; ++k) rows[i][k] -= f * rows[rk][k];
        }
        piv.push_back(c);
        ++rk;
    }
    rows.resize(rk);
    return piv;
}

// dim [g0, g0] for the fixed subalgebra g0 of the monomial automorphism g
size_t fixed_derived_dim(const ChevalleyModel& model, const SignedPerm& g) {
    Mat M = g.dense();
    size_t n = M.n;
    std::vector<RatVec> rows(n, RatVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) rows[i][j] = Rat(static_cast<long>(M(i, j) - (i == j ? 1 : 0)));
    auto piv = rref(rows);
    std::vector<bool> is_piv(n, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<RatVec> basis;
    for (size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        RatVec v(n, Rat(0));
        v[f] = 1;
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -rows[k][f];
        basis.push_back(v);
    }
    std::vector<RatVec> br;
    for (size_t a = 0; a < basis.size(); ++a)
        for (size_t b = a + 1; b < basis.size(); ++b) {
            RatVec out(n, Rat(0));
            for (size_t i = 0; i < n; ++i) {
                if (basis[a][i] == 0) continue;
                for (size_t j = 0; j < n; ++j) {
                    if (basis[b][j] == 0) continue;
                    for (auto& [k, c] : model.bracket(static_cast<int>(i), static_cast<int>(j)))
                        out[k] += basis[a][i] * basis[b][j] * static_cast<long>(c);
                }
            }
            br.push_back(out);
        }
    return rref(br).size();
}

// same quantity for exp(2 pi i x) in the split case: |Phi_x| + rank Phi_x
size_t torus_derived_dim(const GroupContext& ctx, const RatVec& x) {
    std::vector<RatVec> span;
    size_t count = 0;
    for (size_t a = 0; a < ctx.roots.size(); ++a) {
        if (ctx.pair(static_cast<int>(a), x).get_den() != 1) continue;
        ++count;
        RatVec v;
        for (int c : ctx.roots[a]) v.push_back(Rat(c));
        span.push_back(v);
    }
    return count + rref(span).size();
}

} // namespace

long torus_sigma_order(const GroupContext& ctx, const RatVec& lambda, long l) {
    RatVec x(lambda.size());
    for (size_t i = 0; i < x.size(); ++i) x[i] = lambda[i] / l;
    Int d = lcm_denominators(x);
    return std::lcm(static_cast<long>(ctx.sigma.order()), d.get_si());
}

std::pair<Int, std::vector<Int>> kac_coordinates(const GroupContext& ctx, const RatVec& point) {
    const auto& walls = simple_affine_roots(ctx);
    RatVec vals;
    for (const auto& psi : walls) vals.push_back(ctx.eval(psi, point));
    Int j = lcm_denominators(vals);
    std::vector<Int> coords;
    for (auto& v : vals) {
        Rat c = v * j;
        coords.push_back(c.get_num());
    }
    return {j, coords};
}

KacPoint assign_point(const GroupContext& ctx, const WeylGroup& W, const ChevalleyModel& model, int w, long u) {
    if (!is_elliptic(W, w)) fail("InvalidArgument", "class is not elliptic");
    KacPoint kp;
    kp.rep = w;
    kp.l = tits_twisted_order(W, w);
    if (std::gcd(u, kp.l) != 1) fail("InvalidArgument", "primitive-root exponent not coprime to l");
    SignedPerm g = tits_lift(model, W.word[w]) * model.sigma_hat;
    // spectra of (n sigma)^d for the proper divisors d of l; (lambda/l sigma)^d = (d lambda/l) sigma^d
    std::vector<long> divs;
    for (long d = 1; d < kp.l; ++d)
        if (kp.l % d == 0) divs.push_back(d);
    std::vector<Spectrum> target;
    std::vector<SignedPerm> sig_pow;
    SignedPerm gd = g, sd = model.sigma_hat;
    for (long d = 1, k = 0; d < kp.l && k < static_cast<long>(divs.size()); ++d) {
        if (d == divs[k]) {
            target.push_back(spectrum(ctx, gd));
            sig_pow.push_back(sd);
            ++k;
        }
        gd = gd * g;
        sd = sd * model.sigma_hat;
    }
    std::vector<RatVec> matches;
    for (auto& lam : candidate_points(ctx, kp.l)) {
        if (torus_sigma_order(ctx, lam, kp.l) != kp.l) continue;
        bool ok = true;
        for (size_t k = 0; k < divs.size() && ok; ++k)
            ok = torus_sigma_spectrum(ctx, sig_pow[k], lam, kp.l, u * divs[k]) == target[k];
        if (ok) matches.push_back(lam);
    }
    if (matches.size() > 1 && ctx.split()) {
        // adjoint spectra can coincide (F4); the fixed subalgebra separates them
        size_t dn = fixed_derived_dim(model, g);
        std::vector<RatVec> kept;
        for (auto& lam : matches) {
            RatVec x(ctx.rank);
            for (size_t i = 0; i < ctx.rank; ++i) x[i] = lam[i] / kp.l;
            if (torus_derived_dim(ctx, x) == dn) kept.push_back(lam);
        }
        matches = kept;
    }
    if (matches.empty()) fail("NoMatch", "no alcove point matches class " + W.word_str(w));
    if (matches.size() > 1) {
        std::ostringstream os;
        os << "class " << W.word_str(w) << " matches";
        for (auto& m : matches) os << " " << vec_str(m) << "/" << kp.l;
        fail("AmbiguousMatch", os.str());
    }
    kp.lambda = matches[0];
    kp.point.resize(ctx.rank);
    for (size_t i = 0; i < ctx.rank; ++i) kp.point[i] = kp.lambda[i] / kp.l;
    std::tie(kp.j, kp.coords) = kac_coordinates(ctx, kp.point);
    return kp;
}

std::vector<KacPoint> all_points(const GroupContext& ctx, const WeylGroup& W, const ChevalleyModel& model,
                                 const TwistedClassTable& classes) {
    std::vector<KacPoint> out;
    std::set<RatVec> seen;
    for (size_t c = 0; c < classes.classes.size(); ++c) {
        int w = classes.rep[c];
        if (!is_elliptic(W, w) || !is_tame_class(W, w, ctx.p)) continue;
        KacPoint kp = assign_point(ctx, W, model, w);
        kp.class_id = static_cast<int>(c);
        if (!seen.insert(kp.point).second)
            fail("CheckFailed", "two classes share the alcove point " + vec_str(kp.point));
        out.push_back(kp);
    }
    return out;
}

} // namespace tori
