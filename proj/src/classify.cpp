#include "tori/classify.hpp"

#include "tori/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace tori {

namespace {

long inverse_mod(long a, long m) {
    long r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        long qq = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - qq * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - qq * s1);
    }
    if (r0 != 1) fail("InternalError", "q is not invertible modulo a torsion order");
    return ((s0 % m) + m) % m;
}

// canonical representative of x modulo the lattice X_* of L
RatVec mod_lattice(const GroupContext& L, const RatVec& x) {
    return L.from_lattice_coords(frac_part(L.to_lattice_coords(x)));
}

// q^-1 F on a torsion point of X_*(L) (x) Q/Z, F given on coroot coordinates
RatVec frobenius_point(const GroupContext& L, const IntMatrix& F, long q, const RatVec& t) {
    RatVec y = L.to_lattice_coords(mat_apply(F, t));
    y = frac_part(y);
    Int M = lcm_denominators(y);
    if (M == 1) return RatVec(t.size(), Rat(0));
    long qi = inverse_mod(q, M.get_si());
    for (auto& v : y) v *= qi;
    return L.from_lattice_coords(frac_part(y));
}

// all elements of the p'-torsion of (X_*(L) (x) Q/Z)^phi, as canonical coroot coordinates
std::vector<RatVec> torsion_points(const GroupContext& L, const IntMatrix& phi, long p) {
    FiniteAbelianGroup G = torsion_fixed_points(L.to_lattice(phi), p);
    if (G.trivial()) return {RatVec(phi.rows, Rat(0))};
    std::vector<RatVec> out;
    for (auto& c : G.all_coords()) out.push_back(L.from_lattice_coords(frac_part(G.element(c))));
    return out;
}

RatVec add(const RatVec& a, const RatVec& b, int sign = 1) {
    RatVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = sign > 0 ? Rat(a[i] + b[i]) : Rat(a[i] - b[i]);
    return c;
}

Int p_prime_part(Int n, long p) {
    if (p > 1)
        while (n % p == 0) n /= p;
    return n;
}

// finite abelian group arithmetic on generator coordinates
using Coord = std::vector<Int>;

Coord cadd(const FiniteAbelianGroup& G, const Coord& a, const Coord& b, int sign = 1) {
    Coord c(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        Int v = sign > 0 ? Int(a[i] + b[i]) : Int(a[i] - b[i]);
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), G.invariant_factors[i].get_mpz_t());
        c[i] = v;
    }
    return c;
}

std::set<Coord> closure(const FiniteAbelianGroup& G, const std::vector<Coord>& gens) {
    Coord zero(G.ngens(), Int(0));
    std::set<Coord> seen{zero};
    std::deque<Coord> q{zero};
    while (!q.empty()) {
        Coord x = q.front();
        q.pop_front();
        for (auto& g : gens) {
            Coord y = cadd(G, x, g);
            if (seen.insert(y).second) q.push_back(y);
        }
    }
    return seen;
}

// generating set of a subgroup of W given by its element list
std::vector<int> weyl_generators(const WeylGroup& W, const std::vector<int>& H) {
    std::vector<int> gens;
    std::set<int> span{0};
    for (int h : H) {
        if (span.count(h)) continue;
        gens.push_back(h);
        std::deque<int> q(span.begin(), span.end());
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int g : gens) {
                int y = W.mul(x, g);
                if (span.insert(y).second) q.push_back(y);
            }
        }
    }
    return gens;
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

long to_long(const Int& x) { return x.get_si(); }

} // namespace

// ---------------------------------------------------------------- workspace

GroupContext simply_connected_form(const GroupContext& ctx) {
    GroupContext g = ctx;
    g.isogeny = "sc";
    g.basis.assign(g.rank, RatVec(g.rank, Rat(0)));
    for (size_t i = 0; i < g.rank; ++i) g.basis[i][i] = 1;
    g.basis_inv = g.basis;
    return g;
}

std::unique_ptr<Workspace> Workspace::build(const GroupContext& ctx) {
    auto ws = std::make_unique<Workspace>();
    ws->lattice = ctx;
    ws->sc = simply_connected_form(ctx);
    ws->W = enumerate(ws->sc);
    ws->model = build_adjoint(ws->sc);
    ws->classes = sigma_classes(ws->W);
    return ws;
}

int coxeter_element(const Workspace& ws) {
    const auto& ctx = ws.sc;
    std::vector<bool> seen(ctx.rank, false);
    int w = 0;
    for (size_t i = 0; i < ctx.rank; ++i) {
        if (seen[i]) continue;
        for (int j = static_cast<int>(i); !seen[j]; j = ctx.sigma.perm[j]) seen[j] = true;
        w = ws.W.mul(w, ws.W.simple(static_cast<int>(i)));
    }
    return w;
}

std::string class_label(const Workspace& ws, int w) {
    const auto& W = ws.W;
    int c = ws.classes.class_of.at(w);
    if (ws.classes.class_of.at(coxeter_element(ws)) == c)
        return ws.sc.split() ? ws.sc.type_name : "tw" + ws.sc.type_name;
    IntMatrix m = twisted_matrix(W, w);
    IntMatrix minus(W.rank, W.rank);
    for (size_t i = 0; i < W.rank; ++i) minus(i, i) = -1;
    bool g2 = ws.sc.split() && ws.sc.type_name == "G2";
    if (m == minus) return g2 ? "A1xA1~" : "-1";
    EigenProfile prof = eigenvalue_profile(m);
    if (g2 && prof.mult == std::map<long, long>{{3, 1}}) return "A2";
    return "Phi:" + prof.str();
}

// ---------------------------------------------------------------- orbits

ToriOrbit make_orbit(const Workspace& ws, int class_id, long q, int rep, long u) {
    const auto& W = ws.W;
    ToriOrbit o;
    o.ws = &ws;
    o.class_id = class_id;
    o.q = q;
    o.p = residue_characteristic(ws.sc, q, false);
    if (class_id < 0 || class_id >= static_cast<int>(ws.classes.classes.size()))
        fail("InvalidArgument", "no such class");
    o.w = rep < 0 ? ws.classes.rep[class_id] : rep;
    if (ws.classes.class_of.at(o.w) != class_id) fail("InvalidArgument", "representative not in the class");
    if (!is_elliptic(W, o.w)) fail("InvalidArgument", "class is not elliptic");
    if (!is_tame_class(W, o.w, o.p)) fail("InvalidArgument", "class is not tame");
    if (ws.classes.class_of.at(fr_norm(W, o.w, q)) != class_id)
        fail("NotDefinedOverK", "class " + W.word_str(o.w) + " is not stable under Fr o N_q");
    o.kac = assign_point(ws.sc, W, ws.model, o.w, u);
    o.kac.class_id = class_id;
    o.l = o.kac.l;
    o.wfr_coset = solve_w_fr(W, o.w, q);
    o.centralizer = twisted_centralizer(W, o.w);
    return o;
}

std::vector<StableClass> stable_classes(const ToriOrbit& o, int wfr) {
    const auto& W = o.ws->W;
    int wi = W.inv[wfr];
    auto t = twisted_classes(W, o.centralizer, o.centralizer,
                             [&](int g) { return W.mul(W.mul(wfr, W.fr_img[g]), wi); });
    std::vector<StableClass> out;
    for (size_t c = 0; c < t.classes.size(); ++c) {
        StableClass s;
        s.rep = t.rep[c];
        s.members = t.classes[c];
        out.push_back(s);
    }
    return out;
}

std::vector<StableClass> stable_classes(const ToriOrbit& o) {
    auto out = stable_classes(o, o.wfr_coset.front());
    const auto& cs = o.wfr_coset;
    for (size_t k : {cs.size() / 2, cs.size() - 1})
        if (stable_classes(o, cs[k]).size() != out.size())
            fail("CheckFailed", "stable class count depends on the choice of w_Fr");
    return out;
}

// ---------------------------------------------------------------- embeddings

long embedding_count(const ToriOrbit& o, int wprime, int wfr, const GroupContext& L) {
    const auto& ws = *o.ws;
    const auto& W = ws.W;
    IntMatrix phi = twisted_matrix(W, o.w);
    IntMatrix F = W.matrix(wprime) * W.matrix(wfr) * ws.sc.fr_matrix();
    auto A = torsion_points(ws.sc, phi, o.p);
    auto AL = torsion_points(L, phi, o.p);
    std::set<RatVec> image; // (1 - psi) A_L
    for (auto& a : AL) image.insert(mod_lattice(L, add(a, frobenius_point(L, F, o.q, a), -1)));
    size_t kernel = 0;
    for (auto& a : A) {
        // psi must preserve A
        RatVec fa = frobenius_point(ws.sc, F, o.q, a);
        if (!is_integral(add(mat_apply(phi, fa), fa, -1)))
            fail("CheckFailed", "Frobenius does not preserve the fixed torsion points");
        if (image.count(mod_lattice(L, a))) ++kernel;
    }
    return static_cast<long>(A.size() / kernel);
}

long embedding_count(const ToriOrbit& o, int wprime, int wfr) { return embedding_count(o, wprime, wfr, o.ws->sc); }

long embedding_count_lattice(const ToriOrbit& o, int wprime, int wfr) {
    const auto& W = o.ws->W;
    size_t r = W.rank;
    IntMatrix phi = twisted_matrix(W, o.w);
    IntMatrix F = W.matrix(wprime) * W.matrix(wfr) * o.ws->sc.fr_matrix();
    // (phi - 1)^-1 X / X  ->  X / (phi - 1)X  is multiplication by phi - 1, which
    // carries F to (phi - 1) F (phi - 1)^-1
    IntMatrix P = phi - IntMatrix::identity(r);
    auto Pinv = rational_inverse(P);
    IntMatrix PF = P * F;
    IntMatrix Fc(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            Rat v = 0;
            for (size_t k = 0; k < r; ++k) v += Rat(PF(i, k)) * Pinv[k][j];
            if (v.get_den() != 1) fail("CheckFailed", "Frobenius does not preserve the fixed torsion points");
            Fc(i, j) = v.get_num();
        }
    IntMatrix M(r, 2 * r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            M(i, j) = P(i, j);
            // q - F: same coinvariants as q^-1 F away from p
            M(i, r + j) = (i == j ? Int(o.q) : Int(0)) - Fc(i, j);
        }
    return to_long(p_prime_part(cokernel(M).order(), o.p));
}

// ---------------------------------------------------------------- rational classes

bool rational_supported(const GroupContext& ctx, std::string* reason) {
    if (ctx.fr.is_identity() && (ctx.split() || ctx.type_name == "A2")) return true;
    if (reason) *reason = "rational classes are computed for split groups and ramified SU3 only";
    return false;
}

RationalResult rational_class_count(const ToriOrbit& o, int y, long u, const GroupContext& L) {
    const auto& ws = *o.ws;
    const auto& W = ws.W;
    const auto& ctx = ws.sc;
    RationalResult res;
    if (!rational_supported(ctx, &res.reason)) return res;
    res.supported = true;
    size_t r = W.rank;
    IntMatrix phi = twisted_matrix(W, o.w);
    Int det = abs(determinant(phi - IntMatrix::identity(r)));
    if (gcd(det, Int(o.q)) != 1)
        fail("UnsupportedConfiguration", "p divides |X/(w sigma - 1)X|");
    long long D = 2LL * o.l * det.get_si();
    TitsGroup T(W, D, o.q);

    RatVec lam(r);
    for (size_t i = 0; i < r; ++i) lam[i] = o.kac.lambda[i] * u / o.l;
    TitsElement m = T.mul(T.lift(o.w), T.torus(frac_part(lam)));
    auto theta = [&](const TitsElement& x) { return T.mul(T.mul(m, T.sigma(x)), T.inv(m)); };

    // N^theta: Weyl part in the twisted centralizer, torus part solved per Weyl part
    auto A = torsion_points(ctx, phi, o.p);
    std::map<int, RatVec> base;
    for (int v : o.centralizer) {
        TitsElement nv = T.lift(v);
        TitsElement e = T.mul(theta(nv), T.inv(nv));
        if (e.v != 0) fail("InternalError", "twisted centralizer element not normalized");
        // theta(t n_v) = (w sigma t) e n_v, so (1 - w sigma) t = e
        TorsionSolution sol = solve_torsion_equation(phi, T.torus_part(e));
        if (!sol.solvable) fail("InternalError", "fixed-point equation unsolvable");
        base[v] = sol.base;
    }
    std::vector<TitsElement> elems;
    std::map<TitsElement, size_t> index;
    for (int v : o.centralizer)
        for (auto& a : A) {
            TitsElement x = T.mul(T.torus(frac_part(add(base[v], a))), T.lift(v));
            if (!(theta(x) == x)) fail("InternalError", "element of N^theta not fixed");
            index[x] = elems.size();
            elems.push_back(x);
        }
    res.group_order = elems.size();

    // n_F: (s n_y)^-1 m sigma(s n_y) = Fr(N_q(m))
    TitsElement R = T.fr(T.norm(m, o.q));
    TitsElement ny = T.lift(y);
    TitsElement E0 = T.mul(T.mul(T.inv(ny), m), T.sigma(ny));
    if (E0.v != R.v) fail("NFNotFound", "Weyl part " + W.word_str(y) + " does not solve the w_Fr equation");
    RatVec d = T.torus_part(T.mul(R, T.inv(E0)));
    RatVec rhs = mat_apply(W.matrix(y), d);
    for (auto& x : rhs) x = -x;
    TorsionSolution ssol = solve_torsion_equation(phi, frac_part(rhs));
    if (!ssol.solvable) fail("NFNotFound", "no torus part for n_F");
    TitsElement nF = T.mul(T.torus(ssol.base), ny);
    if (!(T.mul(T.mul(T.inv(nF), m), T.sigma(nF)) == R)) fail("NFNotFound", "n_F equation not satisfied");
    res.n_f = nF;
    TitsElement nFi = T.inv(nF);
    auto frob = [&](const TitsElement& g) { return T.mul(T.mul(nF, T.fr(g)), nFi); };
    for (auto& x : elems)
        if (!index.count(frob(x))) fail("CheckFailed", "Ad(n_F) o Fr does not preserve N^theta");

    // generators: torus generators of A and lifts of generators of the centralizer
    std::vector<TitsElement> gens;
    FiniteAbelianGroup Ag = torsion_fixed_points(phi, o.p);
    for (auto& g : Ag.lift) gens.push_back(T.torus(frac_part(g)));
    for (int v : weyl_generators(W, o.centralizer))
        gens.push_back(T.mul(T.torus(base[v]), T.lift(v)));
    std::vector<TitsElement> gens_f;
    for (auto& g : gens) gens_f.push_back(T.inv(frob(g)));

    // central kernel of the isogeny, Frobenius-fixed part inside A
    std::vector<TitsElement> kernel;
    if (!L.simply_connected()) {
        FundamentalGroup fg = fundamental_group(L);
        for (auto& c : fg.omega.all_coords()) {
            RatVec k = frac_part(fg.omega.element(c));
            if (!is_integral(add(mat_apply(phi, k), k, -1))) continue;
            kernel.push_back(T.torus(k));
        }
    }

    UnionFind uf(elems.size());
    for (size_t i = 0; i < elems.size(); ++i) {
        for (size_t g = 0; g < gens.size(); ++g) uf.unite(i, index.at(T.mul(T.mul(gens[g], elems[i]), gens_f[g])));
        for (auto& k : kernel) uf.unite(i, index.at(T.mul(k, elems[i])));
    }

    res.stable = stable_classes(o, y);
    std::map<int, size_t> stable_of;
    for (size_t s = 0; s < res.stable.size(); ++s)
        for (int v : res.stable[s].members) stable_of[v] = s;
    res.fibers.assign(res.stable.size(), 0);
    for (size_t i = 0; i < elems.size(); ++i)
        if (uf.find(i) == i) {
            ++res.total;
            ++res.fibers[stable_of.at(elems[i].v)];
        }
    for (size_t s = 0; s < res.stable.size(); ++s) {
        res.stable[s].rational = res.fibers[s];
        if (res.fibers[s] == 0) fail("CheckFailed", "a stable class has an empty rational fiber");
    }
    return res;
}

RationalResult rational_class_count(const ToriOrbit& o) {
    return rational_class_count(o, o.wfr_coset.front(), 1, o.ws->lattice);
}

// ---------------------------------------------------------------- exact sequence

ComponentSequence component_sequence_check(const ToriOrbit& o, int wprime, int wfr, const GroupContext& L) {
    const auto& W = o.ws->W;
    size_t r = W.rank;
    IntMatrix phiX = L.to_lattice(twisted_matrix(W, o.w));
    IntMatrix FX = L.to_lattice(W.matrix(wprime) * W.matrix(wfr) * L.fr_matrix());
    FiniteAbelianGroup G = cokernel(phiX - IntMatrix::identity(r));
    ComponentSequence cs;
    if (G.trivial()) {
        cs.total = cs.tbar = cs.omega = 1;
        return cs;
    }
    auto f = [&](const Coord& c) {
        RatVec x = G.element(c);
        return G.coords(mat_apply(FX, x));
    };
    auto all = G.all_coords();
    std::vector<Coord> one_minus;
    for (auto& c : all) one_minus.push_back(cadd(G, c, f(c), -1));
    std::set<Coord> img(one_minus.begin(), one_minus.end());
    std::vector<Coord> qgens;
    for (size_t i = 0; i < r; ++i) {
        RatVec e(r, Rat(0));
        e[i] = 1;
        qgens.push_back(G.coords(L.to_lattice_coords(e)));
    }
    auto I = closure(G, qgens);
    std::set<Coord> imgI;
    for (auto& c : I) imgI.insert(cadd(G, c, f(c), -1));
    std::vector<Coord> both(qgens);
    both.insert(both.end(), one_minus.begin(), one_minus.end());
    auto IF = closure(G, both);
    Int n = static_cast<long>(all.size());
    cs.total = n / static_cast<long>(img.size());
    cs.tbar = Int(static_cast<long>(I.size())) / static_cast<long>(imgI.size());
    cs.omega = n / static_cast<long>(IF.size());
    return cs;
}

TransferResult isogeny_transfer(const ToriOrbit& o, const GroupContext& L) {
    Int k = fundamental_group(L).omega.order();
    if (o.p > 1 && k % o.p == 0) fail("BadKernel", "p divides the order of the isogeny kernel");
    TransferResult tr;
    int y = o.wfr_coset.front();
    for (auto& s : stable_classes(o, y)) tr.embeddings.push_back(embedding_count(o, s.rep, y, L));
    auto rr = rational_class_count(o, y, 1, L);
    if (rr.supported) tr.rational = rr.total;
    return tr;
}

// ---------------------------------------------------------------- Coxeter class

CoxeterReport coxeter_report(const Workspace& ws, long q) {
    if (!ws.sc.split()) fail("UnsupportedConfiguration", "Coxeter report needs a split group");
    CoxeterReport rep;
    int w = coxeter_element(ws);
    size_t r = ws.W.rank;
    rep.coker = cokernel(ws.W.matrix(w) - IntMatrix::identity(r)).order();
    rep.connection_index = ws.sc.connection_index();
    ToriOrbit o = make_orbit(ws, ws.classes.class_of.at(w), q, w);
    rep.type_a = std::all_of(ws.sc.factors.begin(), ws.sc.factors.end(), [](const SimpleFactor& f) { return f.letter == 'A'; });
    if (rep.type_a) {
        // all affine simple roots take the same value within each factor
        const auto& walls = simple_affine_roots(ws.sc);
        std::map<int, Rat> val;
        for (auto& psi : walls) {
            Rat v = ws.sc.eval(psi, o.kac.point);
            auto it = val.find(psi.factor);
            if (it == val.end()) val[psi.factor] = v;
            else if (it->second != v) rep.barycenter = false;
        }
    }
    rep.stable = static_cast<long>(stable_classes(o).size());
    rep.expected_stable = 1;
    for (size_t f = 0; f < ws.sc.factors.size(); ++f) {
        long roots = 0;
        for (size_t a = 0; a < ws.sc.roots.size(); ++a)
            if (ws.sc.factor_of[a] == static_cast<int>(f)) ++roots;
        long h = roots / ws.sc.factors[f].rank;
        rep.expected_stable *= std::gcd(h, q - 1);
    }
    return rep;
}

// ---------------------------------------------------------------- report

bool StableRow::operator<(const StableRow& o) const {
    return std::tie(size, embeddings, rational) < std::tie(o.size, o.embeddings, o.rational);
}

bool StableRow::operator==(const StableRow& o) const {
    return size == o.size && embeddings == o.embeddings && rational == o.rational;
}

bool ReportRow::operator==(const ReportRow& o) const {
    return class_id == o.class_id && label == o.label && rep == o.rep && point == o.point &&
           kac.lambda == o.kac.lambda && kac.l == o.kac.l && kac.j == o.kac.j && kac.coords == o.kac.coords &&
           defined_over_k == o.defined_over_k && stable_count == o.stable_count && stable == o.stable &&
           rational == o.rational && note == o.note && fibers_ok == o.fibers_ok &&
           sequence_ok == o.sequence_ok;
}

bool ClassificationReport::operator==(const ClassificationReport& o) const {
    return type == o.type && isogeny == o.isogeny && q == o.q && rows == o.rows;
}

ClassificationReport full_report(const Workspace& ws, long q, const Choices& ch) {
    const auto& W = ws.W;
    ClassificationReport rep;
    rep.type = ws.lattice.type_name;
    rep.isogeny = ws.lattice.isogeny;
    rep.q = q;
    long p = residue_characteristic(ws.sc, q);
    bool sc = ws.lattice.simply_connected();
    if (!sc) {
        Int k = fundamental_group(ws.lattice).omega.order();
        if (k % p == 0) fail("BadKernel", "p divides the order of the isogeny kernel");
    }
    auto pick = [&](const std::vector<int>& v) {
        if (!ch.rng) return v.front();
        std::uniform_int_distribution<size_t> d(0, v.size() - 1);
        return v[d(*ch.rng)];
    };
    for (size_t c = 0; c < ws.classes.classes.size(); ++c) {
        int canon = ws.classes.rep[c];
        if (!is_elliptic(W, canon) || !is_tame_class(W, canon, p)) continue;
        ReportRow row;
        row.class_id = static_cast<int>(c);
        row.label = class_label(ws, canon);
        row.rep = W.word_str(canon);
        if (ws.classes.class_of.at(fr_norm(W, canon, q)) != static_cast<int>(c)) {
            row.kac = assign_point(ws.sc, W, ws.model, canon);
            row.point = row.kac.str(ws.sc);
            row.note = "not defined over k";
            rep.rows.push_back(row);
            continue;
        }
        int w = pick(ws.classes.classes[c]);
        long l = tits_twisted_order(W, w);
        std::vector<long> units;
        for (long u = 1; u < std::max(l, 2L); ++u)
            if (std::gcd(u, l) == 1) units.push_back(u);
        std::vector<int> unit_idx(units.size());
        std::iota(unit_idx.begin(), unit_idx.end(), 0);
        long u = units[pick(unit_idx)];
        ToriOrbit o = make_orbit(ws, static_cast<int>(c), q, w, u);
        row.kac = o.kac;
        row.point = o.kac.str(ws.sc);
        row.defined_over_k = true;
        int y = pick(o.wfr_coset);
        std::vector<StableClass> st;
        RationalResult rr;
        if (rational_supported(ws.sc)) {
            rr = rational_class_count(o, y, u, ws.lattice);
            st = rr.stable;
            row.rational = rr.total;
            long sum = 0;
            for (auto f : rr.fibers) sum += f;
            if (sum != rr.total) row.fibers_ok = false;
        } else {
            st = stable_classes(o, y);
            row.note = "rational classes unsupported for this twist";
        }
        row.stable_count = static_cast<long>(st.size());
        for (auto& s : st) {
            StableRow sr;
            sr.size = s.members.size();
            sr.embeddings = embedding_count(o, s.rep, y, ws.lattice);
            sr.rational = s.rational;
            if (!component_sequence_check(o, s.rep, y, ws.lattice).ok()) row.sequence_ok = false;
            row.stable.push_back(sr);
        }
        std::sort(row.stable.rbegin(), row.stable.rend());
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace tori
