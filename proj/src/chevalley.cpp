#include "tori/chevalley.hpp"

#include "tori/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace tori {

// ---------------------------------------------------------------- structure constants

StructureConstants structure_constants(const GroupContext& ctx) {
    size_t n = ctx.roots.size(), r = ctx.rank;
    StructureConstants sc;
    sc.n = n;
    sc.N.assign(n * n, 0);
    std::vector<int> sum(n * n, -1);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            std::vector<int> c(r);
            for (size_t i = 0; i < r; ++i) c[i] = ctx.roots[a][i] + ctx.roots[b][i];
            sum[a * n + b] = ctx.root_index(c);
        }
    auto positive = [&](int a) { return a < static_cast<int>(ctx.npos); };
    auto ratio = [&](int num, int den, int v) {
        Rat x = frac(ctx.norm2[num] * v, ctx.norm2[den]);
        x.canonicalize();
        if (x.get_den() != 1) fail("InternalError", "non-integral structure constant");
        return static_cast<int>(x.get_num().get_si());
    };
    std::function<int(int, int)> get = [&](int a, int b) -> int {
        int s = sum[a * n + b];
        if (s < 0) return 0;
        if (positive(a) && positive(b)) return sc.N[a * n + b];
        if (!positive(a) && !positive(b)) return -get(ctx.neg[a], ctx.neg[b]);
        int t = ctx.neg[s];
        if (positive(t) == positive(b)) return ratio(t, a, get(b, t));
        return ratio(t, b, get(t, a));
    };
    for (size_t xi = r; xi < ctx.npos; ++xi) {
        // extraspecial pair: first simple root alpha with xi - alpha positive
        int al = -1, be = -1;
        for (size_t i = 0; i < r && al < 0; ++i) {
            std::vector<int> c = ctx.roots[xi];
            c[i] -= 1;
            int b = ctx.root_index(c);
            if (b >= 0 && positive(b)) al = static_cast<int>(i), be = b;
        }
        int p = 0;
        for (;;) {
            std::vector<int> c = ctx.roots[be];
            for (size_t i = 0; i < r; ++i) c[i] -= (p + 1) * ctx.roots[al][i];
            if (ctx.root_index(c) < 0) break;
            ++p;
        }
        sc.N[al * n + be] = p + 1;
        sc.N[be * n + al] = -(p + 1);
        for (size_t g = 0; g < ctx.npos; ++g)
            for (size_t d = g + 1; d < ctx.npos; ++d) {
                if (sum[g * n + d] != static_cast<int>(xi)) continue;
                int gi = static_cast<int>(g), di = static_cast<int>(d);
                if ((gi == al && di == be) || (gi == be && di == al)) continue;
                Rat v = 0;
                int bg = sum[be * n + ctx.neg[gi]];
                if (bg >= 0)
                    v += frac(get(be, ctx.neg[gi]) * get(al, ctx.neg[di]), ctx.norm2[bg]);
                int ag = sum[al * n + ctx.neg[gi]];
                if (ag >= 0)
                    v += frac(get(ctx.neg[gi], al) * get(be, ctx.neg[di]), ctx.norm2[ag]);
                v *= frac(ctx.norm2[xi], sc.N[al * n + be]);
                v.canonicalize();
                if (v.get_den() != 1 || v == 0) fail("InternalError", "structure constant recursion failed");
                int val = static_cast<int>(v.get_num().get_si());
                sc.N[g * n + d] = val;
                sc.N[d * n + g] = -val;
            }
    }
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (!(positive(a) && positive(b))) sc.N[a * n + b] = get(static_cast<int>(a), static_cast<int>(b));
    return sc;
}

std::vector<int> pinned_signs(const GroupContext& ctx, const StructureConstants& N, const DiagramAut& d) {
    size_t n = ctx.roots.size(), r = ctx.rank;
    std::vector<int> img(n);
    for (size_t a = 0; a < n; ++a) {
        std::vector<int> c(r);
        for (size_t i = 0; i < r; ++i) c[d.perm[i]] = ctx.roots[a][i];
        img[a] = ctx.root_index(c);
    }
    std::vector<int> sign(n, 1);
    for (size_t g = r; g < ctx.npos; ++g) {
        for (size_t i = 0; i < r; ++i) {
            std::vector<int> c = ctx.roots[g];
            c[i] -= 1;
            int dl = ctx.root_index(c);
            if (dl < 0 || dl >= static_cast<int>(ctx.npos)) continue;
            int ai = static_cast<int>(i);
            int s = N(img[ai], img[dl]) * sign[dl];
            int den = N(ai, dl);
            if (s % den != 0 || std::abs(s / den) != 1) fail("InternalError", "pinned automorphism is not monomial");
            sign[g] = s / den;
            break;
        }
    }
    for (size_t a = 0; a < ctx.npos; ++a) sign[ctx.neg[a]] = sign[a];
    return sign;
}

// ---------------------------------------------------------------- dense matrices

Mat Mat::identity(size_t n) {
    Mat m(n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    Mat r(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            long long x = (*this)(i, k);
            if (!x) continue;
            for (size_t j = 0; j < n; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

IntMatrix Mat::to_int() const {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n * n; ++i) m.a[i] = Int(static_cast<long>(a[i]));
    return m;
}

Mat exp_nilpotent(const Mat& x) {
    size_t n = x.n;
    Mat result = Mat::identity(n), term = Mat::identity(n);
    for (long k = 1; k <= static_cast<long>(n) + 1; ++k) {
        term = term * x;
        bool zero = true;
        for (auto& v : term.a) {
            if (v % k != 0) fail("InternalError", "exp(ad e) is not integral");
            v /= k;
            if (v) zero = false;
        }
        if (zero) return result;
        for (size_t i = 0; i < n * n; ++i) result.a[i] += term.a[i];
    }
    fail("InternalError", "ad e is not nilpotent");
}

// ---------------------------------------------------------------- signed permutations

SignedPerm SignedPerm::identity(const GroupContext& ctx) {
    SignedPerm s;
    s.cartan = IntMatrix::identity(ctx.rank);
    s.perm.resize(ctx.roots.size());
    std::iota(s.perm.begin(), s.perm.end(), 0);
    s.sign.assign(ctx.roots.size(), 1);
    return s;
}

SignedPerm SignedPerm::operator*(const SignedPerm& o) const {
    SignedPerm r;
    r.cartan = cartan * o.cartan;
    size_t n = perm.size();
    r.perm.resize(n);
    r.sign.resize(n);
    for (size_t b = 0; b < n; ++b) {
        r.perm[b] = perm[o.perm[b]];
        r.sign[b] = o.sign[b] * sign[o.perm[b]];
    }
    return r;
}

bool SignedPerm::operator==(const SignedPerm& o) const {
    return cartan == o.cartan && perm == o.perm && sign == o.sign;
}

SignedPerm SignedPerm::inverse() const {
    SignedPerm r;
    auto inv = rational_inverse(cartan);
    r.cartan = IntMatrix(cartan.rows, cartan.cols);
    for (size_t i = 0; i < cartan.rows; ++i)
        for (size_t j = 0; j < cartan.cols; ++j) r.cartan(i, j) = inv[i][j].get_num();
    size_t n = perm.size();
    r.perm.resize(n);
    r.sign.resize(n);
    for (size_t b = 0; b < n; ++b) r.perm[perm[b]] = static_cast<int>(b), r.sign[perm[b]] = sign[b];
    return r;
}

Mat SignedPerm::dense() const {
    size_t r = cartan.rows, n = perm.size();
    Mat m(r + n);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) m(i, j) = cartan(i, j).get_si();
    for (size_t b = 0; b < n; ++b) m(r + perm[b], r + b) = sign[b];
    return m;
}

// ---------------------------------------------------------------- adjoint model

std::vector<std::pair<int, long long>> ChevalleyModel::bracket(int x, int y) const {
    const GroupContext& c = *ctx;
    int r = static_cast<int>(c.rank);
    std::vector<std::pair<int, long long>> out;
    if (x < r && y < r) return out;
    if (x < r) { // [h_x, e_b] = <b, coroot_x> e_b
        int b = y - r;
        long long v = 0;
        for (int j = 0; j < r; ++j) v += c.roots[b][j] * c.cartan(x, j).get_si();
        if (v) out.push_back({y, v});
        return out;
    }
    if (y < r) {
        auto o = bracket(y, x);
        for (auto& p : o) p.second = -p.second;
        return o;
    }
    int a = x - r, b = y - r;
    if (c.neg[a] == b) {
        for (int i = 0; i < r; ++i)
            if (c.coroots[a][i]) out.push_back({i, c.coroots[a][i]});
        return out;
    }
    int v = N(a, b);
    if (v) {
        std::vector<int> s(r);
        for (int i = 0; i < r; ++i) s[i] = c.roots[a][i] + c.roots[b][i];
        out.push_back({r + c.root_index(s), v});
    }
    return out;
}

namespace {

SignedPerm monomial_from(const GroupContext& ctx, const Mat& m) {
    size_t r = ctx.rank, n = ctx.roots.size();
    SignedPerm s;
    s.cartan = IntMatrix(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) s.cartan(i, j) = Int(static_cast<long>(m(i, j)));
    s.perm.assign(n, -1);
    s.sign.assign(n, 0);
    for (size_t b = 0; b < n; ++b) {
        for (size_t i = 0; i < r + n; ++i) {
            long long v = m(i, r + b);
            if (!v) continue;
            if (i < r || s.perm[b] >= 0 || std::abs(v) != 1) fail("InternalError", "Tits generator is not monomial");
            s.perm[b] = static_cast<int>(i - r);
            s.sign[b] = static_cast<int>(v);
        }
        if (s.perm[b] < 0) fail("InternalError", "Tits generator is singular");
    }
    for (size_t j = 0; j < r; ++j)
        for (size_t i = r; i < r + n; ++i)
            if (m(i, j)) fail("InternalError", "Tits generator mixes Cartan and root spaces");
    return s;
}

} // namespace

ChevalleyModel build_adjoint(const GroupContext& ctx) {
    ChevalleyModel m;
    m.ctx = &ctx;
    m.N = structure_constants(ctx);
    rebuild_adjoint(m);
    return m;
}

void rebuild_adjoint(ChevalleyModel& m) {
    const GroupContext& ctx = *m.ctx;
    size_t r = ctx.rank, n = ctx.roots.size();
    m.dim = r + n;
    m.ad_e.clear();
    m.n_simple.clear();
    m.ad_e.reserve(n);
    for (size_t a = 0; a < n; ++a) {
        Mat ad(m.dim);
        for (size_t y = 0; y < m.dim; ++y)
            for (auto& [idx, v] : m.bracket(static_cast<int>(r + a), static_cast<int>(y))) ad(idx, y) += v;
        m.ad_e.push_back(ad);
    }
    for (size_t i = 0; i < r; ++i) m.n_simple.push_back(monomial_from(ctx, tits_generator_matrix(m, static_cast<int>(i))));
    m.sigma_sign = pinned_signs(ctx, m.N, ctx.sigma);
    m.fr_sign = pinned_signs(ctx, m.N, ctx.fr);
    m.sigma_hat = pinned_sigma(m, ctx.sigma);
    m.fr_hat = pinned_sigma(m, ctx.fr);
}

Mat tits_generator_matrix(const ChevalleyModel& m, int i) {
    const GroupContext& c = *m.ctx;
    Mat e = exp_nilpotent(m.ad_e[i]);
    Mat f = m.ad_e[c.neg[i]];
    for (auto& v : f.a) v = -v;
    Mat ef = exp_nilpotent(f);
    return e * ef * e;
}

SignedPerm tits_lift(const ChevalleyModel& m, const std::vector<int>& word) {
    SignedPerm s = SignedPerm::identity(*m.ctx);
    for (int i : word) s = s * m.n_simple[i];
    return s;
}

SignedPerm pinned_sigma(const ChevalleyModel& m, const DiagramAut& d) {
    const GroupContext& c = *m.ctx;
    SignedPerm s;
    s.cartan = d.matrix();
    s.sign = pinned_signs(c, m.N, d);
    s.perm.resize(c.roots.size());
    for (size_t a = 0; a < c.roots.size(); ++a) {
        std::vector<int> v(c.rank);
        for (size_t i = 0; i < c.rank; ++i) v[d.perm[i]] = c.roots[a][i];
        s.perm[a] = c.root_index(v);
    }
    return s;
}

SignedPerm torus_element(const ChevalleyModel& m, const RatVec& t) {
    const GroupContext& c = *m.ctx;
    SignedPerm s = SignedPerm::identity(c);
    for (size_t a = 0; a < c.roots.size(); ++a) {
        Rat v = c.pair(static_cast<int>(a), t) * 2;
        v.canonicalize();
        if (v.get_den() != 1) fail("InvalidArgument", "torus element is not 2-torsion on the roots");
        s.sign[a] = v.get_num() % 2 == 0 ? 1 : -1;
    }
    return s;
}

// ---------------------------------------------------------------- polynomials and spectra

std::vector<Int> char_poly(const IntMatrix& A) {
    size_t n = A.rows;
    std::vector<RatVec> H(n, RatVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) H[i][j] = A(i, j);
    // reduce to upper Hessenberg form by similarity
    for (size_t m = 1; m + 1 < n; ++m) {
        size_t piv = m;
        while (piv < n && H[piv][m - 1] == 0) ++piv;
        if (piv == n) continue;
        if (piv != m) {
            std::swap(H[piv], H[m]);
            for (size_t i = 0; i < n; ++i) std::swap(H[i][piv], H[i][m]);
        }
        for (size_t i = m + 1; i < n; ++i) {
            if (H[i][m - 1] == 0) continue;
            Rat u = H[i][m - 1] / H[m][m - 1];
            for (size_t j = 0; j < n; ++j) H[i][j] -= u * H[m][j];
            for (size_t j = 0; j < n; ++j) H[j][m] += u * H[j][i];
        }
    }
    std::vector<std::vector<Rat>> p(n + 1);
    p[0] = {Rat(1)};
    for (size_t m = 1; m <= n; ++m) {
        std::vector<Rat> q(m + 1, 0);
        for (size_t k = 0; k < p[m - 1].size(); ++k) {
            q[k + 1] += p[m - 1][k];
            q[k] -= H[m - 1][m - 1] * p[m - 1][k];
        }
        Rat t = 1;
        for (size_t i = 1; i < m; ++i) {
            t *= H[m - i][m - i - 1];
            Rat f = t * H[m - i - 1][m - 1];
            if (f == 0) continue;
            for (size_t k = 0; k < p[m - i - 1].size(); ++k) q[k] -= f * p[m - i - 1][k];
        }
        p[m] = q;
    }
    std::vector<Int> out;
    for (auto& x : p[n]) {
        x.canonicalize();
        if (x.get_den() != 1) fail("InternalError", "non-integral characteristic polynomial");
        out.push_back(x.get_num());
    }
    return out;
}

namespace {

// divide a by monic b; returns false if the remainder is nonzero
bool divide_exact(const std::vector<Int>& a, const std::vector<Int>& b, std::vector<Int>& quot) {
    std::vector<Int> rem = a;
    size_t db = b.size() - 1;
    if (rem.size() < b.size()) return false;
    quot.assign(rem.size() - db, 0);
    for (size_t k = rem.size(); k-- > db;) {
        Int c = rem[k];
        quot[k - db] = c;
        if (c == 0) continue;
        for (size_t j = 0; j <= db; ++j) rem[k - db + j] -= c * b[j];
    }
    for (size_t k = 0; k < db; ++k)
        if (rem[k] != 0) return false;
    return true;
}

} // namespace

std::vector<Int> cyclotomic(long d) {
    std::vector<Int> p(d + 1, 0);
    p[0] = -1, p[d] = 1;
    for (long e = 1; e < d; ++e) {
        if (d % e) continue;
        std::vector<Int> q;
        if (!divide_exact(p, cyclotomic(e), q)) fail("InternalError", "cyclotomic division");
        p = q;
    }
    return p;
}

long euler_phi(long d) {
    long r = d, x = d;
    for (long p = 2; p * p <= x; ++p)
        if (x % p == 0) {
            while (x % p == 0) x /= p;
            r -= r / p;
        }
    if (x > 1) r -= r / x;
    return r;
}

EigenProfile eigenvalue_profile(const IntMatrix& m) {
    size_t n = m.rows;
    IntMatrix pw = m, id = IntMatrix::identity(n);
    long M = 1;
    while (!(pw == id)) {
        pw = pw * m;
        if (++M > 100000) fail("NonTorsion", "matrix has no finite order below the search bound");
    }
    std::vector<Int> cp = char_poly(m);
    EigenProfile prof;
    prof.total_order = M;
    for (long d = 1; d <= M; ++d) {
        if (M % d) continue;
        auto phi = cyclotomic(d);
        std::vector<Int> q;
        while (cp.size() > 1 && divide_exact(cp, phi, q)) {
            ++prof.mult[d];
            cp = q;
        }
    }
    if (cp.size() != 1 || cp[0] != 1) fail("NonTorsion", "characteristic polynomial is not a product of cyclotomics");
    return prof;
}

std::string EigenProfile::str() const {
    std::string s;
    for (auto& [d, m] : mult) s += (s.empty() ? "" : " ") + std::string("P") + std::to_string(d) + "^" + std::to_string(m);
    return s;
}

EigenProfile profile_of_spectrum(const Spectrum& s) {
    std::map<long, std::map<long, long>> by_den;
    EigenProfile p;
    for (auto x : s) {
        x.canonicalize();
        long d = x.get_den().get_si();
        by_den[d][x.get_num().get_si()]++;
        p.total_order = std::lcm(p.total_order, d);
    }
    for (auto& [d, nums] : by_den) {
        long ph = euler_phi(d);
        if (static_cast<long>(nums.size()) != ph) fail("NotGaloisStable", "spectrum is not closed under Galois conjugation");
        long c = nums.begin()->second;
        for (auto& [k, m] : nums)
            if (m != c) fail("NotGaloisStable", "spectrum is not closed under Galois conjugation");
        p.mult[d] = c;
    }
    return p;
}

Spectrum spectrum_of_profile(const EigenProfile& p) {
    Spectrum s;
    for (auto& [d, m] : p.mult)
        for (long k = 0; k < d; ++k)
            if (std::gcd(k, d) == 1)
                for (long i = 0; i < m; ++i) s.push_back(frac(k, d));
    for (auto& x : s) x.canonicalize();
    std::sort(s.begin(), s.end());
    return s;
}

Spectrum spectrum(const GroupContext& ctx, const SignedPerm& g, const RatVec& t) {
    size_t n = ctx.roots.size();
    Spectrum s = spectrum_of_profile(eigenvalue_profile(g.cartan));
    std::vector<bool> seen(n, false);
    for (size_t b0 = 0; b0 < n; ++b0) {
        if (seen[b0]) continue;
        Rat theta = 0;
        long L = 0;
        size_t b = b0;
        do {
            seen[b] = true;
            if (g.sign[b] < 0) theta += Rat(1, 2);
            b = g.perm[b];
            if (!t.empty()) theta += ctx.pair(static_cast<int>(b), t);
            ++L;
        } while (b != b0);
        for (long j = 0; j < L; ++j) {
            Rat e = (theta + j) / L;
            s.push_back(frac_part({e})[0]);
        }
    }
    std::sort(s.begin(), s.end());
    return s;
}

Spectrum torus_sigma_spectrum(const GroupContext& ctx, const SignedPerm& sigma_hat, const RatVec& lambda, long l, long u) {
    RatVec t = lambda;
    for (auto& x : t) x = x * u / l;
    return spectrum(ctx, sigma_hat, t);
}

EigenProfile torus_sigma_profile(const GroupContext& ctx, const SignedPerm& sigma_hat, const RatVec& lambda, long l) {
    return profile_of_spectrum(torus_sigma_spectrum(ctx, sigma_hat, lambda, l));
}

long multiplicative_order(const Mat& m, long bound) {
    Mat id = Mat::identity(m.n), p = m;
    long k = 1;
    while (!(p == id)) {
        p = p * m;
        if (++k > bound) fail("NonTorsion", "matrix order exceeds the bound");
    }
    return k;
}

} // namespace tori
