#pragma once

#include "tori/weyl.hpp"

#include <cstdint>
#include <vector>

namespace tori {

// t * n_v with t a torsion point of the simply connected torus, stored as
// coroot coordinates in (1/D)Z^r / Z^r (numerators mod D).
struct TitsElement {
    std::vector<long long> t;
    int v = 0;
    bool operator==(const TitsElement& o) const { return v == o.v && t == o.t; }
    bool operator<(const TitsElement& o) const { return v != o.v ? v < o.v : t < o.t; }
};

// Normalizer of the torus in the simply connected group, restricted to torsion
// points with denominator dividing D.  Canonical lifts n_v follow the reduced
// words of the Weyl enumeration; n_v n_w = c(v, w) n_vw with c in (1/2)Q^/Q^.
class TitsGroup {
public:
    TitsGroup(const WeylGroup& W, long long D, long q = -1); // q < 0: ctx.q

    const WeylGroup& W;
    const GroupContext& ctx;
    long long D;
    size_t r;

    TitsElement identity() const;
    TitsElement lift(int v) const { return TitsElement{std::vector<long long>(r, 0), v}; }
    TitsElement torus(const RatVec& t) const; // fails when the denominator does not divide D
    RatVec torus_part(const TitsElement& x) const;
    std::vector<long long> act(int v, const std::vector<long long>& t) const;

    TitsElement mul(const TitsElement& a, const TitsElement& b) const;
    TitsElement inv(const TitsElement& a) const;
    TitsElement conj(const TitsElement& g, const TitsElement& x) const; // g x g^-1
    TitsElement pow(const TitsElement& a, long k) const;
    long order(const TitsElement& a) const;
    bool is_central_torus(const TitsElement& a) const;

    // pinned diagram automorphism and Frobenius (q^-1 on torsion points)
    TitsElement sigma(const TitsElement& a) const;
    TitsElement sigma_pow(const TitsElement& a, long k) const;
    TitsElement fr(const TitsElement& a) const;
    // order of a * sigma in the semidirect product
    long twisted_order(const TitsElement& a) const;
    // a sigma(a) ... sigma^{d-1}(a)
    TitsElement norm(const TitsElement& a, long d) const;

    std::vector<long long> cocycle(int v, int w) const;
    std::string str(const TitsElement& a) const;

private:
    std::vector<uint32_t> cocycle_;
    std::vector<long long> reduce(std::vector<long long> t) const;
    std::vector<long long> apply_perm(const DiagramAut& d, const std::vector<long long>& t) const;
    long long qinv_ = 0;
};

// Order of the Tits lift of w times sigma, computed with an adequate denominator.
long tits_twisted_order(const WeylGroup& W, int w);

struct MinusOneReport {
    bool applicable = false;
    bool n4_trivial = false;         // n^4 = 1
    bool n2_central = false;         // n^2 central
    bool n2_matches_lambda = false;  // n^2 = lambda_n(xi^2): lambda_n(-1) when l = 4, 1 when l = 2
    bool nt_square = false;          // (nt)^2 = n^2 for sampled t
    bool modified_fixed = false;     // n_a^t fixed by nt
    bool modified_generate = false;  // <n_a^t> has order |W| 2^r and covers W
    long order = 0;
    bool ok() const {
        return applicable && n4_trivial && n2_central && n2_matches_lambda && nt_square && modified_fixed &&
               modified_generate;
    }
};

// Checks on the lift n of -1 (split, simply connected).  lambda is the Kac
// cocharacter of the -1 class and samples the number of torus points t tried.
MinusOneReport minus_one_checks(const WeylGroup& W, const RatVec& lambda, long l, int samples, unsigned seed);

} // namespace tori
