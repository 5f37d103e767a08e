#include "tori/tits.hpp"

#include "tori/error.hpp"

#include <deque>
#include <tuple>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace tori {

namespace {

long long mod(long long a, long long m) {
    a %= m;
    return a < 0 ? a + m : a;
}

long long inverse_mod(long long a, long long m) {
    long long r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        long long qq = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - qq * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - qq * s1);
    }
    if (r0 != 1) fail("InternalError", "q is not invertible modulo the torus denominator");
    return mod(s0, m);
}

} // namespace

TitsGroup::TitsGroup(const WeylGroup& W_, long long D_, long q) : W(W_), ctx(*W_.ctx), D(D_), r(W_.rank) {
    if (D % 2 != 0) fail("InternalError", "Tits group denominator must be even");
    if (r > 32) fail("UnsupportedType", "rank too large for the Tits group model");
    size_t n = W.size;
    cocycle_.assign(n * n, 0);
    for (size_t v1 = 0; v1 < n; ++v1) {
        for (size_t v2 = 1; v2 < n; ++v2) {
            int par = W.parent[v2], s = W.last[v2];
            int u = W.mul(static_cast<int>(v1), par);
            int us = W.mul(u, W.simple(s));
            uint32_t c = cocycle_[v1 * n + par];
            if (W.length[us] < W.length[u]) {
                // n_u n_s = (us)(coroot_s)(-1) n_us
                uint32_t bits = 0;
                for (size_t i = 0; i < r; ++i)
                    if (W.mat[us][i * r + s] % 2 != 0) bits |= (1u << i);
                c ^= bits;
            }
            cocycle_[v1 * n + v2] = c;
        }
    }
    if (q < 0) q = ctx.q;
    // qinv_ = 0 leaves Frobenius unavailable
    if (q > 0 && std::gcd(static_cast<long long>(q), D) == 1) qinv_ = inverse_mod(q, D);
}

std::vector<long long> TitsGroup::reduce(std::vector<long long> t) const {
    for (auto& x : t) x = mod(x, D);
    return t;
}

TitsElement TitsGroup::identity() const { return lift(0); }

TitsElement TitsGroup::torus(const RatVec& t) const {
    TitsElement x{std::vector<long long>(r, 0), 0};
    for (size_t i = 0; i < r; ++i) {
        Rat s = t[i] * static_cast<long>(D);
        if (s.get_den() != 1) fail("InternalError", "torus point denominator does not divide " + std::to_string(D));
        Int num = s.get_num() % Int(static_cast<long>(D));
        x.t[i] = mod(num.get_si(), D);
    }
    return x;
}

RatVec TitsGroup::torus_part(const TitsElement& x) const {
    RatVec out(r);
    for (size_t i = 0; i < r; ++i) out[i] = frac(Int(static_cast<long>(x.t[i])), Int(static_cast<long>(D)));
    return out;
}

std::vector<long long> TitsGroup::act(int v, const std::vector<long long>& t) const {
    std::vector<long long> out(r, 0);
    const auto& m = W.mat[v];
    for (size_t i = 0; i < r; ++i) {
        long long s = 0;
        for (size_t j = 0; j < r; ++j) s += m[i * r + j] * t[j];
        out[i] = mod(s, D);
    }
    return out;
}

std::vector<long long> TitsGroup::cocycle(int v, int w) const {
    std::vector<long long> out(r, 0);
    uint32_t c = cocycle_[static_cast<size_t>(v) * W.size + w];
    for (size_t i = 0; i < r; ++i)
        if (c & (1u << i)) out[i] = D / 2;
    return out;
}

TitsElement TitsGroup::mul(const TitsElement& a, const TitsElement& b) const {
    TitsElement out;
    out.v = W.mul(a.v, b.v);
    out.t = act(a.v, b.t);
    uint32_t c = cocycle_[static_cast<size_t>(a.v) * W.size + b.v];
    for (size_t i = 0; i < r; ++i) {
        long long s = out.t[i] + a.t[i] + ((c & (1u << i)) ? D / 2 : 0);
        out.t[i] = mod(s, D);
    }
    return out;
}

TitsElement TitsGroup::inv(const TitsElement& a) const {
    int vi = W.inv[a.v];
    auto c = cocycle(a.v, vi);
    std::vector<long long> s(r);
    for (size_t i = 0; i < r; ++i) s[i] = -a.t[i] - c[i];
    return TitsElement{act(vi, s), vi};
}

TitsElement TitsGroup::conj(const TitsElement& g, const TitsElement& x) const { return mul(mul(g, x), inv(g)); }

TitsElement TitsGroup::pow(const TitsElement& a, long k) const {
    TitsElement base = k < 0 ? inv(a) : a, out = identity();
    for (long e = k < 0 ? -k : k; e > 0; e >>= 1) {
        if (e & 1) out = mul(out, base);
        base = mul(base, base);
    }
    return out;
}

long TitsGroup::order(const TitsElement& a) const {
    TitsElement x = a, id = identity();
    long k = 1;
    while (!(x == id)) {
        x = mul(x, a);
        if (++k > 1000000) fail("InternalError", "element order too large");
    }
    return k;
}

bool TitsGroup::is_central_torus(const TitsElement& a) const {
    if (a.v != 0) return false;
    RatVec t = torus_part(a);
    for (size_t b = 0; b < ctx.npos; ++b)
        if (ctx.pair(static_cast<int>(b), t).get_den() != 1) return false;
    return true;
}

std::vector<long long> TitsGroup::apply_perm(const DiagramAut& d, const std::vector<long long>& t) const {
    std::vector<long long> out(r, 0);
    for (size_t i = 0; i < r; ++i) out[d.perm[i]] = t[i];
    return out;
}

TitsElement TitsGroup::sigma(const TitsElement& a) const {
    return TitsElement{apply_perm(ctx.sigma, a.t), W.sigma_img[a.v]};
}

TitsElement TitsGroup::sigma_pow(const TitsElement& a, long k) const {
    long o = ctx.sigma.order();
    k = ((k % o) + o) % o;
    TitsElement x = a;
    for (long i = 0; i < k; ++i) x = sigma(x);
    return x;
}

TitsElement TitsGroup::fr(const TitsElement& a) const {
    if (qinv_ == 0) fail("InternalError", "q shares a factor with the torus denominator");
    auto t = apply_perm(ctx.fr, a.t);
    for (auto& x : t) x = mod(x * qinv_, D);
    return TitsElement{t, W.fr_img[a.v]};
}

long TitsGroup::twisted_order(const TitsElement& a) const {
    long so = ctx.sigma.order();
    TitsElement x = identity(), id = identity();
    TitsElement y = a; // sigma^k(a)
    for (long k = 1; k <= 1000000; ++k) {
        x = mul(x, y);
        y = sigma(y);
        if (k % so == 0 && x == id) return k;
    }
    fail("InternalError", "twisted order too large");
}

TitsElement TitsGroup::norm(const TitsElement& a, long d) const {
    TitsElement x = identity(), y = a;
    for (long k = 0; k < d; ++k) {
        x = mul(x, y);
        y = sigma(y);
    }
    return x;
}

std::string TitsGroup::str(const TitsElement& a) const {
    std::ostringstream os;
    os << "(" << vec_str(torus_part(a)) << ", " << W.word_str(a.v) << ")";
    return os.str();
}

long tits_twisted_order(const WeylGroup& W, int w) {
    // n sigma has order dividing 2 * (order of w sigma); denominators stay 2-power
    TitsGroup T(W, 2);
    return T.twisted_order(T.lift(w));
}

MinusOneReport minus_one_checks(const WeylGroup& W, const RatVec& lambda, long l, int samples, unsigned seed) {
    MinusOneReport rep;
    const auto& ctx = *W.ctx;
    size_t r = W.rank;
    std::vector<int> minus(r * r, 0);
    for (size_t i = 0; i < r; ++i) minus[i * r + i] = -1;
    int w0 = W.index_of(minus);
    if (w0 < 0 || !ctx.split()) {
        rep.applicable = false;
        return rep;
    }
    rep.applicable = true;
    // t samples have denominator dividing 12; square roots need a further factor 4
    long long D = std::lcm(4LL * l, 48LL);
    TitsGroup T(W, D);
    TitsElement n = T.lift(w0);
    rep.order = T.order(n);
    TitsElement n2 = T.mul(n, n);
    rep.n4_trivial = T.mul(n2, n2) == T.identity();
    rep.n2_central = T.is_central_torus(n2);
    RatVec half(r);
    for (size_t i = 0; i < r; ++i) half[i] = lambda[i] / 2;
    TitsElement lam_minus = T.torus(frac_part(half));
    if (l == 4) {
        rep.n2_matches_lambda = n2 == lam_minus;
    } else {
        // order two: n^2 = lambda(xi^2) = 1
        rep.n2_matches_lambda = n2 == T.identity();
    }

    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, 11);
    rep.nt_square = true;
    rep.modified_fixed = true;
    rep.modified_generate = true;
    for (int sample = 0; sample < samples; ++sample) {
        RatVec t(r);
        for (size_t i = 0; i < r; ++i) t[i] = frac(dist(rng), 12);
        if (sample == 0) t.assign(r, Rat(0));
        TitsElement nt = T.mul(n, T.torus(t));
        if (!(T.mul(nt, nt) == n2)) rep.nt_square = false;
        std::vector<TitsElement> gens;
        for (size_t a = 0; a < r; ++a) {
            TitsElement na = T.lift(W.simple(static_cast<int>(a)));
            TitsElement conj_na = T.conj(n, na);
            Rat at = ctx.pair(static_cast<int>(a), t); // a(t) as an exponent
            Rat y;
            if (conj_na == na) {
                y = at / 2;
            } else {
                RatVec cor(r, Rat(0));
                cor[a] = frac(1, 2);
                if (!(conj_na == T.mul(na, T.torus(cor)))) {
                    rep.modified_fixed = false;
                    continue;
                }
                y = (at + frac(1, 2)) / 2;
            }
            RatVec ya(r, Rat(0));
            ya[a] = y;
            TitsElement nat = T.mul(na, T.torus(frac_part(ya)));
            if (!(T.conj(nt, nat) == nat)) rep.modified_fixed = false;
            gens.push_back(nat);
        }
        if (gens.size() != r) {
            rep.modified_generate = false;
            continue;
        }
        // closure of the modified generators
        std::set<TitsElement> seen{T.identity()};
        std::deque<TitsElement> q{T.identity()};
        while (!q.empty()) {
            auto x = q.front();
            q.pop_front();
            for (const auto& g : gens) {
                auto y = T.mul(x, g);
                if (seen.insert(y).second) q.push_back(y);
            }
        }
        std::set<int> weyl;
        bool kernel_two = true;
        for (const auto& x : seen) {
            weyl.insert(x.v);
            if (x.v == 0)
                for (auto c : x.t)
                    if (mod(2 * c, D) != 0) kernel_two = false;
        }
        size_t expected = W.size << r;
        if (seen.size() != expected || weyl.size() != W.size || !kernel_two) rep.modified_generate = false;
    }
    return rep;
}

} // namespace tori
