#include "tori/rootdata.hpp"

#include "tori/chevalley.hpp"
#include "tori/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace tori {

// ---------------------------------------------------------------- DiagramAut

DiagramAut DiagramAut::identity(size_t r) {
    DiagramAut d;
    d.perm.resize(r);
    std::iota(d.perm.begin(), d.perm.end(), 0);
    return d;
}

bool DiagramAut::is_identity() const {
    for (size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != static_cast<int>(i)) return false;
    return true;
}

int DiagramAut::order() const {
    DiagramAut x = *this;
    int k = 1;
    while (!x.is_identity()) x = x * *this, ++k;
    return k;
}

DiagramAut DiagramAut::operator*(const DiagramAut& o) const {
    DiagramAut r;
    r.perm.resize(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) r.perm[i] = perm[o.perm[i]];
    return r;
}

DiagramAut DiagramAut::inverse() const {
    DiagramAut r;
    r.perm.resize(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) r.perm[perm[i]] = static_cast<int>(i);
    return r;
}

DiagramAut DiagramAut::power(long k) const {
    int o = order();
    long e = ((k % o) + o) % o;
    DiagramAut r = identity(perm.size());
    for (long i = 0; i < e; ++i) r = r * *this;
    return r;
}

IntMatrix DiagramAut::matrix() const {
    IntMatrix m(perm.size(), perm.size());
    for (size_t i = 0; i < perm.size(); ++i) m(perm[i], i) = 1;
    return m;
}

std::string DiagramAut::str() const {
    if (is_identity()) return "id";
    std::string s;
    std::vector<bool> seen(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i] || perm[i] == static_cast<int>(i)) continue;
        s += "(";
        for (size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            s += (j == i ? "" : " ") + std::to_string(j + 1);
        }
        s += ")";
    }
    return s;
}

// ---------------------------------------------------------------- Cartan types

IntMatrix cartan_matrix(char letter, int n) {
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = 2;
    auto link = [&](int i, int j) { a(i, j) = -1, a(j, i) = -1; };
    switch (letter) {
    case 'A':
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        break;
    case 'B':
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        a(n - 1, n - 2) = -2;
        break;
    case 'C':
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        a(n - 2, n - 1) = -2;
        break;
    case 'D':
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(n - 3, n - 1);
        break;
    case 'E':
        link(0, 2), link(2, 3), link(3, 4), link(1, 3);
        for (int i = 4; i + 1 < n; ++i) link(i, i + 1);
        break;
    case 'F':
        link(0, 1), link(1, 2), link(2, 3);
        a(2, 1) = -2;
        break;
    case 'G':
        a(0, 1) = -3, a(1, 0) = -1;
        break;
    default:
        fail("InvalidCartan", std::string("unknown letter ") + letter);
    }
    return a;
}

std::vector<SimpleFactor> parse_type(const std::string& type) {
    std::vector<SimpleFactor> out;
    std::string t = std::regex_replace(type, std::regex("×"), "x");
    std::regex tok("\\s*([A-Ga-g])\\s*([0-9]+)\\s*");
    int offset = 0;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        std::smatch m;
        if (!std::regex_match(part, m, tok)) fail("InvalidCartan", "cannot parse type '" + type + "'");
        char L = static_cast<char>(std::toupper(m[1].str()[0]));
        int n = std::stoi(m[2]);
        bool ok = (L == 'A' && n >= 1) || ((L == 'B' || L == 'C') && n >= 2) || (L == 'D' && n >= 4) ||
                  (L == 'E' && n >= 6 && n <= 8) || (L == 'F' && n == 4) || (L == 'G' && n == 2);
        if (!ok) fail("InvalidCartan", "unsupported simple type " + part);
        out.push_back({L, n, offset});
        offset += n;
    }
    if (out.empty()) fail("InvalidCartan", "rank-0 input is not supported");
    return out;
}

CartanType classify_cartan(const IntMatrix& A) {
    size_t n = A.rows;
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<size_t> st{s};
        comp[s] = nc;
        while (!st.empty()) {
            size_t i = st.back();
            st.pop_back();
            for (size_t j = 0; j < n; ++j)
                if (A(i, j) != 0 && comp[j] < 0) comp[j] = nc, st.push_back(j);
        }
        ++nc;
    }
    CartanType t;
    for (int c = 0; c < nc; ++c) {
        std::vector<size_t> v;
        for (size_t i = 0; i < n; ++i)
            if (comp[i] == c) v.push_back(i);
        int k = static_cast<int>(v.size());
        std::vector<int> deg(n, 0);
        int maxprod = 1;
        size_t dbl_i = 0, dbl_j = 0;
        for (size_t i : v)
            for (size_t j : v) {
                if (i == j || A(i, j) == 0) continue;
                ++deg[i];
                long prod = A(i, j).get_si() * A(j, i).get_si();
                if (prod > maxprod) maxprod = static_cast<int>(prod), dbl_i = i, dbl_j = j;
            }
        char L = 'A';
        if (k == 1) {
            L = 'A';
        } else if (maxprod == 3) {
            L = 'G';
        } else if (maxprod == 2) {
            if (k == 2) {
                L = 'C';
            } else if (deg[dbl_i] == 1 || deg[dbl_j] == 1) {
                size_t leaf = deg[dbl_i] == 1 ? dbl_i : dbl_j;
                size_t other = leaf == dbl_i ? dbl_j : dbl_i;
                // A(i,j) = -2 means alpha_i is the short one
                L = A(leaf, other) == -2 ? 'B' : 'C';
            } else {
                L = 'F';
            }
        } else {
            size_t branch = n;
            for (size_t i : v)
                if (deg[i] >= 3) branch = i;
            if (branch == n) {
                L = 'A';
            } else {
                std::vector<int> arms;
                for (size_t j : v) {
                    if (j == branch || A(branch, j) == 0) continue;
                    int len = 1;
                    size_t prev = branch, cur = j;
                    for (;;) {
                        size_t nxt = n;
                        for (size_t m : v)
                            if (m != prev && m != cur && A(cur, m) != 0) nxt = m;
                        if (nxt == n) break;
                        prev = cur, cur = nxt, ++len;
                    }
                    arms.push_back(len);
                }
                std::sort(arms.begin(), arms.end());
                L = (arms[0] == 1 && arms[1] == 1) ? 'D' : 'E';
            }
        }
        t.factors.push_back({L, k, 0});
    }
    std::sort(t.factors.begin(), t.factors.end(), [](const SimpleFactor& a, const SimpleFactor& b) {
        if (a.rank != b.rank) return a.rank > b.rank;
        return a.letter < b.letter;
    });
    return t;
}

std::string CartanType::str() const {
    if (factors.empty()) return "empty";
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) s += (i ? "x" : "") + factors[i].name();
    return s;
}

Int weyl_order(const std::vector<SimpleFactor>& factors) {
    Int w = 1;
    for (auto& f : factors) {
        Int fact = 1;
        for (int i = 2; i <= f.rank + (f.letter == 'A'); ++i) fact *= i;
        switch (f.letter) {
        case 'A': w *= fact; break;
        case 'B':
        case 'C': w *= fact * (Int(1) << f.rank); break;
        case 'D': w *= fact * (Int(1) << (f.rank - 1)); break;
        case 'E': w *= f.rank == 6 ? Int(51840) : f.rank == 7 ? Int(2903040) : Int(696729600); break;
        case 'F': w *= 1152; break;
        case 'G': w *= 12; break;
        }
    }
    return w;
}

Int diagram_aut_order(const std::vector<SimpleFactor>& factors) {
    Int a = 1;
    std::map<std::string, int> mult;
    for (auto& f : factors) {
        ++mult[f.name()];
        if ((f.letter == 'A' && f.rank >= 2) || (f.letter == 'D' && f.rank >= 5) || (f.letter == 'E' && f.rank == 6))
            a *= 2;
        if (f.letter == 'D' && f.rank == 4) a *= 6;
    }
    for (auto& [k, m] : mult)
        for (int i = 2; i <= m; ++i) a *= i;
    return a;
}

DiagramAut parse_diagram_aut(const std::string& text, const std::vector<SimpleFactor>& factors, size_t rank) {
    DiagramAut d = DiagramAut::identity(rank);
    std::string t = std::regex_replace(text, std::regex("^\\s+|\\s+$"), "");
    if (t.empty() || t == "id") return d;
    if (t == "flip") {
        if (factors.size() == 2 && factors[0].name() == factors[1].name()) {
            int n = factors[0].rank;
            for (int i = 0; i < n; ++i) d.perm[i] = i + n, d.perm[i + n] = i;
            return d;
        }
        if (factors.size() != 1) fail("InvalidTwist", "'flip' needs one simple factor or two equal ones");
        const auto& f = factors[0];
        int n = f.rank;
        if (f.letter == 'A' && n >= 2) {
            for (int i = 0; i < n; ++i) d.perm[i] = n - 1 - i;
        } else if (f.letter == 'D') {
            std::swap(d.perm[n - 2], d.perm[n - 1]);
        } else if (f.letter == 'E' && n == 6) {
            d.perm = {5, 1, 4, 3, 2, 0};
        } else {
            fail("InvalidTwist", "type " + f.name() + " has no diagram flip");
        }
        return d;
    }
    std::regex cyc("\\(([^)]*)\\)");
    std::string rest = std::regex_replace(t, cyc, "");
    if (rest.find_first_not_of(" \t") != std::string::npos) fail("InvalidTwist", "cannot parse twist '" + text + "'");
    std::vector<bool> used(rank, false);
    for (std::sregex_iterator it(t.begin(), t.end(), cyc), end; it != end; ++it) {
        std::stringstream ss((*it)[1].str());
        std::vector<int> c;
        int x;
        while (ss >> x) {
            if (x < 1 || x > static_cast<int>(rank) || used[x - 1]) fail("InvalidTwist", "bad cycle in '" + text + "'");
            used[x - 1] = true;
            c.push_back(x - 1);
        }
        for (size_t i = 0; i < c.size(); ++i) d.perm[c[i]] = c[(i + 1) % c.size()];
    }
    return d;
}

// ---------------------------------------------------------------- GroupContext

int GroupContext::root_index(const std::vector<int>& c) const {
    auto it = root_lookup.find(c);
    return it == root_lookup.end() ? -1 : it->second;
}

Rat GroupContext::pair(int root, const RatVec& x) const {
    Rat s = 0;
    const auto& c = roots[root];
    for (size_t i = 0; i < rank; ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < rank; ++j)
            if (cartan(j, i) != 0 && x[j] != 0) s += c[i] * x[j] * cartan(j, i);
    }
    return s;
}

int GroupContext::pair_root_coroot(int a, int b) const {
    long s = 0;
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j) s += roots[a][i] * coroots[b][j] * cartan(j, i).get_si();
    return static_cast<int>(s);
}

Rat GroupContext::form(const RatVec& u, const RatVec& v) const {
    Rat s = 0;
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j)
            if (cartan(i, j) != 0) s += u[i] * v[j] * sym[i] * cartan(i, j);
    return s;
}

Int GroupContext::connection_index() const { return determinant(cartan); }

bool GroupContext::simply_connected() const {
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j)
            if (basis_inv[i][j].get_den() != 1) return false;
    return abs(determinant([&] {
               IntMatrix m(rank, rank);
               for (size_t i = 0; i < rank; ++i)
                   for (size_t j = 0; j < rank; ++j) m(i, j) = basis_inv[i][j].get_num();
               return m;
           }())) == 1;
}

std::vector<RatVec> GroupContext::coweights() const {
    auto inv = rational_inverse(cartan.transpose());
    std::vector<RatVec> w(rank, RatVec(rank));
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j) w[i][j] = inv[j][i];
    return w;
}

RatVec GroupContext::to_lattice_coords(const RatVec& x) const { return mat_apply(basis_inv, x); }

RatVec GroupContext::from_lattice_coords(const RatVec& x) const {
    RatVec r(rank, 0);
    for (size_t k = 0; k < rank; ++k)
        for (size_t i = 0; i < rank; ++i) r[i] += x[k] * basis[k][i];
    return r;
}

bool GroupContext::in_lattice(const RatVec& x) const { return is_integral(to_lattice_coords(x)); }

IntMatrix GroupContext::to_lattice(const IntMatrix& m) const {
    IntMatrix r(rank, rank);
    for (size_t k = 0; k < rank; ++k) {
        RatVec img = to_lattice_coords(mat_apply(m, basis[k]));
        for (size_t i = 0; i < rank; ++i) {
            img[i].canonicalize();
            if (img[i].get_den() != 1) fail("InvalidLattice", "map does not preserve the cocharacter lattice");
            r(i, k) = img[i].get_num();
        }
    }
    return r;
}

bool GroupContext::sigma_fixed(const RatVec& x) const {
    for (size_t i = 0; i < rank; ++i)
        if (x[sigma.perm[i]] != x[i]) return false;
    return true;
}

Rat GroupContext::eval(const AffineRoot& psi, const RatVec& x) const { return pair(psi.root, x) + psi.level; }

std::string GroupContext::root_label(int a) const {
    std::string s;
    bool negative = a >= static_cast<int>(npos);
    for (size_t i = 0; i < rank; ++i) {
        int c = std::abs(roots[a][i]);
        if (c == 0) continue;
        if (!s.empty()) s += "+";
        if (c > 1) s += std::to_string(c);
        s += "a" + std::to_string(i + 1);
    }
    return negative ? "-(" + s + ")" : s;
}

std::string GroupContext::coroot_combo(const RatVec& x) const {
    Int D = lcm_denominators(x);
    std::string s;
    for (size_t i = 0; i < rank; ++i) {
        Rat v = x[i] * D;
        v.canonicalize();
        Int c = v.get_num();
        if (c == 0) continue;
        if (c < 0) s += "-";
        else if (!s.empty()) s += "+";
        if (abs(c) != 1) s += Int(abs(c)).get_str();
        s += "a" + std::to_string(i + 1) + "v";
    }
    if (s.empty()) return "0";
    if (D == 1) return s;
    return "(" + s + ")/" + D.get_str();
}

AlcovePoint AlcovePoint::from(const RatVec& lambda, const Int& l) {
    AlcovePoint p;
    p.coords = lambda;
    for (auto& x : p.coords) {
        x /= l;
        x.canonicalize();
    }
    return p;
}

// ---------------------------------------------------------------- construction

namespace {

void enumerate_roots(GroupContext& g) {
    size_t r = g.rank;
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> todo;
    for (size_t i = 0; i < r; ++i) {
        std::vector<int> e(r, 0);
        e[i] = 1;
        seen.insert(e);
        todo.push_back(e);
    }
    while (!todo.empty()) {
        auto c = todo.back();
        todo.pop_back();
        for (size_t i = 0; i < r; ++i) {
            long p = 0;
            for (size_t j = 0; j < r; ++j) p += c[j] * g.cartan(i, j).get_si();
            auto d = c;
            d[i] -= static_cast<int>(p);
            if (seen.insert(d).second) todo.push_back(d);
        }
    }
    std::vector<std::vector<int>> pos;
    for (auto& c : seen)
        if (std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; })) pos.push_back(c);
    auto ht = [](const std::vector<int>& c) { return std::accumulate(c.begin(), c.end(), 0); };
    // height, then lexicographic with alpha_1 before alpha_2
    std::sort(pos.begin(), pos.end(), [&](const auto& a, const auto& b) {
        if (ht(a) != ht(b)) return ht(a) < ht(b);
        return a > b;
    });
    if (2 * pos.size() != seen.size()) fail("InvalidCartan", "root closure is not symmetric");
    g.npos = pos.size();
    g.roots = pos;
    for (auto& c : pos) {
        auto n = c;
        for (auto& x : n) x = -x;
        g.roots.push_back(n);
    }
    size_t N = g.roots.size();
    g.height.resize(N);
    g.neg.resize(N);
    for (size_t a = 0; a < N; ++a) {
        g.root_lookup[g.roots[a]] = static_cast<int>(a);
        g.height[a] = ht(g.roots[a]);
    }
    for (size_t a = 0; a < N; ++a) g.neg[a] = static_cast<int>(a < g.npos ? a + g.npos : a - g.npos);
}

void symmetrize(GroupContext& g) {
    size_t r = g.rank;
    std::vector<Rat> d(r, 0);
    for (auto& f : g.factors) {
        d[f.offset] = 1;
        std::vector<int> st{f.offset};
        std::vector<bool> seen(r, false);
        seen[f.offset] = true;
        while (!st.empty()) {
            int i = st.back();
            st.pop_back();
            for (size_t j = 0; j < r; ++j) {
                if (g.cartan(i, j) == 0 || seen[j] || static_cast<int>(j) == i) continue;
                d[j] = d[i] * frac(g.cartan(i, j), g.cartan(j, i));
                seen[j] = true;
                st.push_back(static_cast<int>(j));
            }
        }
        Int den = 1;
        for (int i = f.offset; i < f.offset + f.rank; ++i) den = lcm(den, d[i].get_den());
        Int gg = 0;
        for (int i = f.offset; i < f.offset + f.rank; ++i) gg = gcd(gg, Int(d[i] * den));
        for (int i = f.offset; i < f.offset + f.rank; ++i) d[i] = d[i] * den / gg;
    }
    g.sym.resize(r);
    for (size_t i = 0; i < r; ++i) g.sym[i] = static_cast<int>(d[i].get_num().get_si());
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            if (g.sym[i] * g.cartan(i, j) != g.sym[j] * g.cartan(j, i))
                fail("InvalidCartan", "matrix is not symmetrizable");
}

void derived_root_data(GroupContext& g) {
    size_t N = g.roots.size(), r = g.rank;
    g.norm2.resize(N);
    g.coroots.assign(N, std::vector<int>(r, 0));
    g.factor_of.resize(N);
    for (size_t a = 0; a < N; ++a) {
        RatVec c(r);
        for (size_t i = 0; i < r; ++i) c[i] = g.roots[a][i];
        Rat n2 = g.form(c, c);
        if (n2 <= 0 || n2.get_den() != 1) fail("InvalidCartan", "not of finite type");
        g.norm2[a] = static_cast<int>(n2.get_num().get_si());
        for (size_t i = 0; i < r; ++i) {
            Rat v = frac(g.roots[a][i] * 2 * g.sym[i], g.norm2[a]);
            v.canonicalize();
            if (v.get_den() != 1) fail("InternalError", "non-integral coroot");
            g.coroots[a][i] = static_cast<int>(v.get_num().get_si());
        }
        for (size_t f = 0; f < g.factors.size(); ++f) {
            int o = g.factors[f].offset;
            for (int i = o; i < o + g.factors[f].rank; ++i)
                if (g.roots[a][i] != 0) g.factor_of[a] = static_cast<int>(f);
        }
    }
    g.highest.assign(g.factors.size(), -1);
    for (size_t a = 0; a < g.npos; ++a) {
        int f = g.factor_of[a];
        if (g.highest[f] < 0 || g.height[a] > g.height[g.highest[f]]) g.highest[f] = static_cast<int>(a);
    }
    auto induced = [&](const DiagramAut& d) {
        std::vector<int> p(N);
        for (size_t a = 0; a < N; ++a) {
            std::vector<int> c(r);
            for (size_t i = 0; i < r; ++i) c[d.perm[i]] = g.roots[a][i];
            p[a] = g.root_index(c);
            if (p[a] < 0) fail("InvalidTwist", "diagram map does not preserve the roots");
        }
        return p;
    };
    g.sigma_root = induced(g.sigma);
    g.fr_root = induced(g.fr);
}

void check_twist(const GroupContext& g, const DiagramAut& d, const std::string& name) {
    if (d.size() != g.rank) fail("InvalidTwist", name + " has the wrong size");
    for (size_t i = 0; i < g.rank; ++i)
        for (size_t j = 0; j < g.rank; ++j)
            if (g.cartan(d.perm[i], d.perm[j]) != g.cartan(i, j))
                fail("InvalidTwist", name + " does not preserve the Cartan matrix");
    g.to_lattice(d.matrix());
}

// orbit length and sign product of sigma_hat on the root space of a
std::pair<int, int> root_orbit(const GroupContext& g, const std::vector<int>& signs, int a) {
    int L = 0, c = 1, b = a;
    do {
        c *= signs[b];
        b = g.sigma_root[b];
        ++L;
    } while (b != a);
    return {L, c};
}

// smallest positive element of the level set of the root space of a (levels taken mod 1)
Rat min_positive_level(int L, int c) {
    if (c == 1) return L == 1 ? Rat(1) : frac(1, L);
    return frac(1, 2 * L);
}

std::vector<AffineRoot> split_walls(const GroupContext& g, int f) {
    std::vector<AffineRoot> w;
    int th = g.highest[f];
    w.push_back({g.neg[th], Rat(1), 1, f, ""});
    for (int i = g.factors[f].offset; i < g.factors[f].offset + g.factors[f].rank; ++i)
        w.push_back({i, Rat(0), g.roots[th][i], f, ""});
    return w;
}

// rational solve of a small square system; false when singular
bool solve_square(std::vector<RatVec> a, RatVec b, RatVec& x) {
    size_t n = b.size();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return false;
        std::swap(a[p], a[c]), std::swap(b[p], b[c]);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    x.resize(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return true;
}

size_t rank_of(std::vector<RatVec> rows) {
    size_t rk = 0, n = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < n && rk < rows.size(); ++c) {
        size_t p = rk;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rk]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rk || rows[i][c] == 0) continue;
            Rat f = rows[i][c] / rows[rk][c];
            for (size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[rk][j];
        }
        ++rk;
    }
    return rk;
}

} // namespace

std::vector<AffineRoot> general_walls(const GroupContext& g, int f, const std::vector<int>& signs) {
    const auto& F = g.factors[f];
    // sigma-orbits of the simple roots of this factor span V^sigma
    std::vector<std::vector<int>> orbits;
    std::vector<bool> seen(g.rank, false);
    for (int i = F.offset; i < F.offset + F.rank; ++i) {
        if (seen[i]) continue;
        std::vector<int> o;
        for (int j = i; !seen[j]; j = g.sigma.perm[j]) seen[j] = true, o.push_back(j);
        orbits.push_back(o);
    }
    size_t d = orbits.size();
    auto grad = [&](int a) {
        RatVec v(d);
        for (size_t k = 0; k < d; ++k) {
            RatVec u(g.rank, 0);
            for (int i : orbits[k]) u[i] = 1;
            v[k] = g.pair(a, u);
        }
        return v;
    };
    struct Con {
        AffineRoot psi;
        RatVec gvec;
    };
    std::vector<Con> cons;
    std::set<std::pair<RatVec, Rat>> keys;
    auto add = [&](int a, const Rat& level) {
        RatVec gv = grad(a);
        Rat s = 0;
        for (auto& x : gv)
            if (x != 0) {
                s = abs(x);
                break;
            }
        RatVec key = gv;
        for (auto& x : key) x /= s;
        if (!keys.insert({key, level / s}).second) return;
        cons.push_back({{a, level, 1, f, ""}, gv});
    };
    for (size_t a = 0; a < g.npos; ++a) {
        if (g.factor_of[a] != f) continue;
        auto [L, c] = root_orbit(g, signs, static_cast<int>(a));
        Rat m = min_positive_level(L, c);
        add(static_cast<int>(a), c == 1 ? Rat(0) : m);
        add(g.neg[a], m);
    }
    // vertices: d tight constraints with all others satisfied
    std::vector<RatVec> verts;
    std::vector<size_t> idx(d);
    std::function<void(size_t, size_t)> rec = [&](size_t k, size_t start) {
        if (k == d) {
            std::vector<RatVec> A;
            RatVec b;
            for (size_t i : idx) A.push_back(cons[i].gvec), b.push_back(-cons[i].psi.level);
            RatVec t;
            if (!solve_square(A, b, t)) return;
            for (auto& c : cons) {
                Rat v = c.psi.level;
                for (size_t k2 = 0; k2 < d; ++k2) v += c.gvec[k2] * t[k2];
                if (v < 0) return;
            }
            if (std::find(verts.begin(), verts.end(), t) == verts.end()) verts.push_back(t);
            return;
        }
        for (size_t i = start; i < cons.size(); ++i) idx[k] = i, rec(k + 1, i + 1);
    };
    rec(0, 0);
    std::vector<AffineRoot> facets;
    std::vector<RatVec> fgrad;
    for (auto& c : cons) {
        std::vector<RatVec> tight;
        for (auto& v : verts) {
            Rat val = c.psi.level;
            for (size_t k = 0; k < d; ++k) val += c.gvec[k] * v[k];
            if (val == 0) tight.push_back(v);
        }
        if (tight.empty() || tight.size() == verts.size()) continue;
        std::vector<RatVec> diffs;
        for (size_t i = 1; i < tight.size(); ++i) {
            RatVec df(d);
            for (size_t k = 0; k < d; ++k) df[k] = tight[i][k] - tight[0][k];
            diffs.push_back(df);
        }
        if (d == 1 || rank_of(diffs) == d - 1) facets.push_back(c.psi), fgrad.push_back(c.gvec);
    }
    if (facets.size() != d + 1) fail("InternalError", "alcove of factor " + F.name() + " is not a simplex");
    // marks: the positive integral relation among the facet gradients
    std::vector<RatVec> A(d, RatVec(d));
    RatVec b(d);
    for (size_t k = 0; k < d; ++k) {
        for (size_t j = 0; j < d; ++j) A[k][j] = fgrad[j + 1][k];
        b[k] = -fgrad[0][k];
    }
    RatVec sol;
    if (!solve_square(A, b, sol)) fail("InternalError", "degenerate alcove");
    RatVec coef{Rat(1)};
    coef.insert(coef.end(), sol.begin(), sol.end());
    Int den = lcm_denominators(coef);
    Int gg = 0;
    for (auto& x : coef) gg = gcd(gg, Int(x * den));
    for (size_t k = 0; k <= d; ++k) {
        Rat m = coef[k] * den / gg;
        if (m <= 0 || m.get_den() != 1) fail("InternalError", "non-positive alcove mark");
        facets[k].mark = static_cast<int>(m.get_num().get_si());
    }
    std::stable_sort(facets.begin(), facets.end(), [](const AffineRoot& x, const AffineRoot& y) {
        bool ax = x.level == 0, ay = y.level == 0;
        if (ax != ay) return !ax;
        return x.root < y.root;
    });
    return facets;
}

const std::vector<AffineRoot>& simple_affine_roots(const GroupContext& ctx) {
    if (!ctx.walls) fail("UnsupportedTwist", ctx.walls_error);
    return *ctx.walls;
}

namespace {

void build_walls(GroupContext& g) {
    StructureConstants N = structure_constants(g);
    std::vector<int> signs = pinned_signs(g, N, g.sigma);
    std::vector<AffineRoot> all;
    g.mark_constant.assign(g.factors.size(), Rat(1));
    for (size_t f = 0; f < g.factors.size(); ++f) {
        const auto& F = g.factors[f];
        bool stable = true, trivial = true;
        for (int i = F.offset; i < F.offset + F.rank; ++i) {
            int j = g.sigma.perm[i];
            if (j < F.offset || j >= F.offset + F.rank) stable = false;
            if (j != i) trivial = false;
        }
        std::vector<AffineRoot> w;
        if (trivial) {
            w = split_walls(g, static_cast<int>(f));
        } else if (stable && F.letter == 'A' && F.rank == 2) {
            w = general_walls(g, static_cast<int>(f), signs);
        } else {
            g.walls_error = "relative affine roots are implemented for split factors and the A2 flip only";
            return;
        }
        Rat c = 0;
        for (auto& psi : w) c += psi.mark * psi.level;
        g.mark_constant[f] = c;
        for (auto& psi : w) {
            psi.label = (psi.level == 0) ? g.root_label(psi.root) : g.root_label(psi.root) + "+" + psi.level.get_str();
            all.push_back(psi);
        }
    }
    g.walls = all;
}

} // namespace

long residue_characteristic(const GroupContext& g, long q, bool whole_group) {
    if (q <= 1) fail("InvalidSpec", "q must be a prime power");
    long p = g.p;
    if (p == 0) {
        p = 2;
        while (q % p) ++p;
    }
    long x = q;
    while (x % p == 0) x /= p;
    if (x != 1) fail("InvalidSpec", "q = " + std::to_string(q) + " is not a power of p = " + std::to_string(p));
    // Fr^-1 sigma Fr = sigma^q on the diagram
    if (!(g.fr.inverse() * g.sigma * g.fr == g.sigma.power(q)))
        fail("IncompatibleTwists", "Fr^-1 sigma Fr differs from sigma^q");
    Int order = weyl_order(g.factors) * diagram_aut_order(g.factors);
    if (whole_group && order % p == 0)
        fail("TamenessViolation", "p = " + std::to_string(p) + " divides |W x| Aut| = " + order.get_str());
    return p;
}

GroupContext build_group(const GroupSpec& spec) {
    GroupContext g;
    g.factors = parse_type(spec.type);
    g.type_name.clear();
    for (size_t i = 0; i < g.factors.size(); ++i) g.type_name += (i ? "x" : "") + g.factors[i].name();
    g.rank = 0;
    for (auto& f : g.factors) g.rank += f.rank;
    g.cartan = IntMatrix(g.rank, g.rank);
    for (auto& f : g.factors) {
        IntMatrix c = cartan_matrix(f.letter, f.rank);
        for (int i = 0; i < f.rank; ++i)
            for (int j = 0; j < f.rank; ++j) g.cartan(f.offset + i, f.offset + j) = c(i, j);
    }
    g.max_weyl_order = spec.max_weyl_order;
    symmetrize(g);
    if (determinant(g.cartan) <= 0) fail("InvalidCartan", "not of finite type");

    // cocharacter lattice
    g.isogeny = spec.isogeny;
    if (spec.isogeny == "sc") {
        g.basis.assign(g.rank, RatVec(g.rank, 0));
        for (size_t i = 0; i < g.rank; ++i) g.basis[i][i] = 1;
    } else if (spec.isogeny == "ad") {
        g.basis = g.coweights();
    } else if (spec.isogeny == "matrix") {
        if (spec.lattice.size() != g.rank) fail("InvalidLattice", "lattice needs rank many basis vectors");
        for (auto& v : spec.lattice)
            if (v.size() != g.rank) fail("InvalidLattice", "basis vector has the wrong length");
        g.basis = spec.lattice;
    } else {
        fail("InvalidLattice", "isogeny must be sc, ad or a matrix");
    }
    {
        IntMatrix dummy(g.rank, g.rank);
        std::vector<RatVec> bm(g.rank, RatVec(g.rank));
        for (size_t k = 0; k < g.rank; ++k)
            for (size_t i = 0; i < g.rank; ++i) bm[i][k] = g.basis[k][i];
        // inverse of the rational basis matrix
        Int den = 1;
        for (auto& row : bm) den = lcm(den, lcm_denominators(row));
        IntMatrix scaled(g.rank, g.rank);
        for (size_t i = 0; i < g.rank; ++i)
            for (size_t j = 0; j < g.rank; ++j) scaled(i, j) = Rat(bm[i][j] * den).get_num();
        if (determinant(scaled) == 0) fail("InvalidLattice", "basis is singular");
        g.basis_inv = rational_inverse(scaled);
        for (auto& row : g.basis_inv)
            for (auto& x : row) {
                x *= den;
                x.canonicalize();
            }
        for (size_t i = 0; i < g.rank; ++i)
            for (size_t j = 0; j < g.rank; ++j)
                if (g.basis_inv[i][j].get_den() != 1) fail("InvalidLattice", "lattice does not contain the coroots");
        for (auto& b : g.basis)
            for (size_t j = 0; j < g.rank; ++j) {
                Rat s = 0;
                for (size_t i = 0; i < g.rank; ++i) s += b[i] * g.cartan(i, j);
                s.canonicalize();
                if (s.get_den() != 1) fail("InvalidLattice", "lattice is not inside the coweights");
            }
    }

    g.sigma = parse_diagram_aut(spec.sigma, g.factors, g.rank);
    g.fr = parse_diagram_aut(spec.fr, g.factors, g.rank);
    check_twist(g, g.sigma, "sigma");
    check_twist(g, g.fr, "fr");

    g.p = spec.p;
    g.q = spec.q;
    if (g.q < 0 || g.p < 0) fail("InvalidSpec", "p and q must be non-negative");
    if (g.q > 0) g.p = residue_characteristic(g, g.q);
    if (g.p == 1) fail("InvalidSpec", "p must be prime or 0");
    if (g.p > 1) {
        for (long d = 2; d * d <= g.p; ++d)
            if (g.p % d == 0) fail("InvalidSpec", "p must be prime");
        Int order = weyl_order(g.factors) * diagram_aut_order(g.factors);
        if (order % g.p == 0)
            fail("TamenessViolation", "p = " + std::to_string(g.p) + " divides |W x| Aut| = " + order.get_str());
    }

    enumerate_roots(g);
    derived_root_data(g);
    build_walls(g);
    return g;
}

// ---------------------------------------------------------------- alcove queries

MembershipResult alcove_membership(const GroupContext& ctx, const RatVec& x) {
    const auto& w = simple_affine_roots(ctx);
    MembershipResult r{Membership::Interior, {}};
    if (!ctx.sigma_fixed(x)) return {Membership::Outside, {}};
    for (size_t i = 0; i < w.size(); ++i) {
        Rat v = ctx.eval(w[i], x);
        if (v < 0) return {Membership::Outside, {}};
        if (v == 0) r.vanishing.push_back(static_cast<int>(i));
    }
    if (!r.vanishing.empty()) r.kind = Membership::Boundary;
    return r;
}

namespace {

CartanType type_of_vectors(const GroupContext& ctx, const std::vector<RatVec>& vecs, const std::vector<bool>& positive) {
    std::vector<RatVec> pos;
    for (size_t i = 0; i < vecs.size(); ++i)
        if (positive[i] && std::find(pos.begin(), pos.end(), vecs[i]) == pos.end()) pos.push_back(vecs[i]);
    // drop divisible vectors (2v with v present)
    std::vector<RatVec> red;
    for (auto& v : pos) {
        RatVec h = v;
        for (auto& x : h) x /= 2;
        if (std::find(pos.begin(), pos.end(), h) == pos.end()) red.push_back(v);
    }
    std::vector<RatVec> simples;
    for (auto& v : red) {
        bool dec = false;
        for (auto& a : red) {
            RatVec b = v;
            for (size_t i = 0; i < b.size(); ++i) b[i] -= a[i];
            if (std::find(red.begin(), red.end(), b) != red.end()) {
                dec = true;
                break;
            }
        }
        if (!dec) simples.push_back(v);
    }
    size_t k = simples.size();
    IntMatrix A(k, k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            Rat v = 2 * ctx.form(simples[i], simples[j]) / ctx.form(simples[i], simples[i]);
            if (v.get_den() != 1) fail("InternalError", "non-integral local Cartan matrix");
            A(i, j) = v.get_num();
        }
    return classify_cartan(A);
}

RatVec orbit_average(const GroupContext& ctx, int a) {
    RatVec v(ctx.rank, 0);
    int L = 0, b = a;
    do {
        for (size_t i = 0; i < ctx.rank; ++i) v[i] += ctx.roots[b][i];
        b = ctx.sigma_root[b];
        ++L;
    } while (b != a);
    for (auto& x : v) x /= L;
    return v;
}

} // namespace

LocalSubsystem local_root_subsystem(const GroupContext& ctx, const RatVec& x, const RatVec& lambda, long l) {
    StructureConstants N = structure_constants(ctx);
    std::vector<int> signs = pinned_signs(ctx, N, ctx.sigma);
    LocalSubsystem out;
    std::vector<RatVec> vecs;
    std::vector<bool> pos;
    for (size_t a = 0; a < ctx.roots.size(); ++a) {
        auto [L, c] = root_orbit(ctx, signs, static_cast<int>(a));
        Rat v = ctx.pair(static_cast<int>(a), x);
        // v + level is integral for some level of this root space
        Rat s = c == 1 ? Rat(v * L) : Rat(v * 2 * L);
        s.canonicalize();
        bool hit = s.get_den() == 1 && (c == 1 || s.get_num() % 2 != 0);
        if (!hit) continue;
        out.roots.push_back(static_cast<int>(a));
        vecs.push_back(orbit_average(ctx, static_cast<int>(a)));
        pos.push_back(a < ctx.npos);
    }
    if (out.roots.size() == ctx.roots.size() && ctx.split()) {
        out.type.factors = ctx.factors;
    } else {
        out.type = type_of_vectors(ctx, vecs, pos);
    }
    if (l > 0) {
        std::vector<RatVec> lv;
        std::vector<bool> lp;
        for (size_t a = 0; a < ctx.roots.size(); ++a) {
            Rat v = ctx.pair(static_cast<int>(a), lambda);
            if (v.get_den() == 1 && v.get_num() % l == 0) {
                out.lambda_fixed_roots.push_back(static_cast<int>(a));
                RatVec c(ctx.rank);
                for (size_t i = 0; i < ctx.rank; ++i) c[i] = ctx.roots[a][i];
                lv.push_back(c);
                lp.push_back(a < ctx.npos);
            }
        }
        if (out.lambda_fixed_roots.size() == ctx.roots.size()) out.lambda_fixed.factors = ctx.factors;
        else out.lambda_fixed = type_of_vectors(ctx, lv, lp);
    }
    return out;
}

FundamentalGroup fundamental_group(const GroupContext& ctx) {
    size_t r = ctx.rank;
    // Q^v in X_* coordinates: columns of basis_inv
    IntMatrix qv(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) qv(i, j) = ctx.basis_inv[i][j].get_num();
    FiniteAbelianGroup c = cokernel(qv);
    FundamentalGroup out;
    out.omega.invariant_factors = c.invariant_factors;
    for (size_t k = 0; k < c.ngens(); ++k) {
        out.omega.lift.push_back(ctx.from_lattice_coords(c.lift[k]));
        RatVec row(r, 0);
        for (size_t j = 0; j < r; ++j)
            for (size_t i = 0; i < r; ++i) row[j] += c.coord_map[k][i] * ctx.basis_inv[i][j];
        out.omega.coord_map.push_back(row);
    }
    IntMatrix P = ctx.fr_matrix();
    out.fr_action = endo_in_coords(out.omega, [&](const RatVec& x) { return mat_apply(P, x); });
    out.fr_coinvariants = coinvariants(out.omega, out.fr_action);
    return out;
}

} // namespace tori
