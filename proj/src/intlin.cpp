#include "tori/intlin.hpp"

#include "tori/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tori {

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from(const std::vector<std::vector<long long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < m.rows; ++i) {
        if (rows[i].size() != m.cols) fail("InvalidMatrix", "ragged rows");
        for (size_t j = 0; j < m.cols; ++j) m(i, j) = Int(static_cast<long>(rows[i][j]));
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols != o.rows) fail("InvalidMatrix", "dimension mismatch in product");
    IntMatrix r(rows, o.cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t k = 0; k < cols; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    IntMatrix r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols, rows);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rows; ++i) {
        os << (i ? ",[" : "[");
        for (size_t j = 0; j < cols; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

// row-reduce a copy over Q; returns det and (optionally) the inverse
Rat gauss(const IntMatrix& m, std::vector<RatVec>* inv) {
    size_t n = m.rows;
    if (m.cols != n) fail("InvalidMatrix", "square matrix required");
    std::vector<RatVec> a(n, RatVec(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
        a[i][n + i] = 1;
    }
    Rat det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        Rat piv = a[c][c];
        det *= piv;
        for (auto& x : a[c]) x /= piv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    if (inv) {
        inv->assign(n, RatVec(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) (*inv)[i][j] = a[i][n + j];
    }
    return det;
}

void row_op(IntMatrix& m, size_t dst, size_t src, const Int& f) { // row dst -= f*row src
    for (size_t j = 0; j < m.cols; ++j) m(dst, j) -= f * m(src, j);
}
void col_op(IntMatrix& m, size_t dst, size_t src, const Int& f) {
    for (size_t i = 0; i < m.rows; ++i) m(i, dst) -= f * m(i, src);
}
void swap_rows(IntMatrix& m, size_t a, size_t b) {
    for (size_t j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, size_t a, size_t b) {
    for (size_t i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}

Int strip_p(Int d, long p) {
    if (p <= 1) return d;
    while (d % p == 0) d /= p;
    return d;
}

Int mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

} // namespace

Int determinant(const IntMatrix& m) {
    Rat d = gauss(m, nullptr);
    return d.get_num();
}

std::vector<RatVec> rational_inverse(const IntMatrix& m) {
    std::vector<RatVec> inv;
    if (gauss(m, &inv) == 0) fail("Singular", "matrix is not invertible over Q");
    return inv;
}

RatVec mat_apply(const IntMatrix& m, const RatVec& v) {
    RatVec r(m.rows, 0);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            if (m(i, j) != 0) r[i] += m(i, j) * v[j];
    return r;
}

RatVec mat_apply(const std::vector<RatVec>& m, const RatVec& v) {
    RatVec r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

Smith smith(const IntMatrix& M) {
    size_t m = M.rows, n = M.cols;
    Smith s{IntMatrix::identity(m), M, IntMatrix::identity(n)};
    IntMatrix &U = s.U, &D = s.D, &V = s.V;
    for (size_t t = 0; t < std::min(m, n); ++t) {
        bool any = true;
        for (;;) {
            size_t pi = m, pj = n;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (D(i, j) != 0 && (pi == m || abs(D(i, j)) < abs(D(pi, pj)))) pi = i, pj = j;
            if (pi == m) {
                any = false;
                break;
            }
            if (pi != t) swap_rows(D, t, pi), swap_rows(U, t, pi);
            if (pj != t) swap_cols(D, t, pj), swap_cols(V, t, pj);
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Int f = D(i, t) / D(t, t);
                row_op(D, i, t, f), row_op(U, i, t, f);
                if (D(i, t) != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Int f = D(t, j) / D(t, t);
                col_op(D, j, t, f), col_op(V, j, t, f);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            size_t bad = m;
            for (size_t i = t + 1; i < m && bad == m; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            row_op(D, t, bad, -1), row_op(U, t, bad, -1);
        }
        if (!any) break;
        if (D(t, t) < 0) {
            for (size_t j = 0; j < n; ++j) D(t, j) = -D(t, j);
            for (size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
        }
    }
    Int du = abs(determinant(U)), dv = abs(determinant(V));
    if (du != 1 || dv != 1) fail("InternalError", "smith: transform not unimodular");
    return s;
}

Int FiniteAbelianGroup::order() const {
    Int o = 1;
    for (auto& d : invariant_factors) o *= d;
    return o;
}

Int FiniteAbelianGroup::denominator() const {
    Int l = 1;
    for (auto& g : lift) l = lcm(l, lcm_denominators(g));
    return l;
}

std::vector<Int> FiniteAbelianGroup::coords(const RatVec& x) const {
    std::vector<Int> c(ngens());
    for (size_t i = 0; i < ngens(); ++i) {
        Rat s = 0;
        for (size_t j = 0; j < x.size(); ++j) s += coord_map[i][j] * x[j];
        s.canonicalize();
        if (s.get_den() != 1) fail("InternalError", "element outside the group: " + vec_str(x));
        c[i] = mod(s.get_num(), invariant_factors[i]);
    }
    return c;
}

RatVec FiniteAbelianGroup::element(const std::vector<Int>& c) const {
    size_t r = lift.empty() ? (coord_map.empty() ? 0 : coord_map[0].size()) : lift[0].size();
    RatVec x(r, 0);
    for (size_t i = 0; i < ngens(); ++i)
        for (size_t j = 0; j < r; ++j) x[j] += c[i] * lift[i][j];
    return x;
}

std::vector<std::vector<Int>> FiniteAbelianGroup::all_coords() const {
    std::vector<std::vector<Int>> out;
    std::vector<Int> c(ngens(), 0);
    for (;;) {
        out.push_back(c);
        size_t i = ngens();
        while (i > 0) {
            --i;
            if (++c[i] < invariant_factors[i]) goto next;
            c[i] = 0;
        }
        return out;
    next:;
    }
}

std::string FiniteAbelianGroup::str() const {
    if (trivial()) return "1";
    std::string s;
    for (size_t i = 0; i < ngens(); ++i) s += (i ? " x Z/" : "Z/") + invariant_factors[i].get_str();
    return s;
}

FiniteAbelianGroup cokernel(const IntMatrix& M) {
    Smith s = smith(M);
    size_t m = M.rows;
    IntMatrix Uinv(m, m);
    auto inv = rational_inverse(s.U);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) Uinv(i, j) = inv[i][j].get_num();
    FiniteAbelianGroup g;
    for (size_t i = 0; i < m; ++i) {
        Int d = i < std::min(M.rows, M.cols) ? s.D(i, i) : Int(0);
        if (d == 0) fail("InfiniteCokernel", "matrix " + M.str() + " has infinite cokernel");
        if (d == 1) continue;
        g.invariant_factors.push_back(d);
        RatVec l(m), c(m);
        for (size_t j = 0; j < m; ++j) l[j] = Uinv(j, i), c[j] = s.U(i, j);
        g.lift.push_back(l);
        g.coord_map.push_back(c);
    }
    return g;
}

FiniteAbelianGroup torsion_fixed_points(const IntMatrix& phi, long p) {
    size_t r = phi.rows;
    IntMatrix M = phi - IntMatrix::identity(r);
    if (determinant(M) == 0) fail("NonElliptic", "phi - 1 is singular: " + phi.str());
    Smith s = smith(M);
    auto Vinv = rational_inverse(s.V);
    FiniteAbelianGroup g;
    for (size_t i = 0; i < r; ++i) {
        Int d = strip_p(s.D(i, i), p);
        if (d == 1) continue;
        g.invariant_factors.push_back(d);
        RatVec l(r), c(r);
        for (size_t j = 0; j < r; ++j) l[j] = frac(s.V(j, i), d), c[j] = d * Vinv[i][j];
        for (auto& x : l) x.canonicalize();
        g.lift.push_back(l);
        g.coord_map.push_back(c);
    }
    return g;
}

namespace {

// G / (column span of rel) where rel is k x m in generator coordinates
FiniteAbelianGroup quotient_by(const FiniteAbelianGroup& G, const IntMatrix& extra) {
    size_t k = G.ngens();
    if (k == 0) return G;
    IntMatrix R(k, k + extra.cols);
    for (size_t i = 0; i < k; ++i) {
        R(i, i) = G.invariant_factors[i];
        for (size_t j = 0; j < extra.cols; ++j) R(i, k + j) = extra(i, j);
    }
    FiniteAbelianGroup c = cokernel(R);
    FiniteAbelianGroup out;
    out.invariant_factors = c.invariant_factors;
    size_t amb = G.coord_map[0].size();
    for (size_t i = 0; i < c.ngens(); ++i) {
        RatVec l(amb, 0), cm(amb, 0);
        for (size_t j = 0; j < k; ++j) {
            for (size_t a = 0; a < amb; ++a) {
                if (c.lift[i][j] != 0) l[a] += c.lift[i][j] * G.lift[j][a];
                if (c.coord_map[i][j] != 0) cm[a] += c.coord_map[i][j] * G.coord_map[j][a];
            }
        }
        out.lift.push_back(l);
        out.coord_map.push_back(cm);
    }
    return out;
}

} // namespace

FiniteAbelianGroup coinvariants(const FiniteAbelianGroup& G, const IntMatrix& e) {
    size_t k = G.ngens();
    if (e.rows != k || e.cols != k) fail("IllDefinedEndo", "endomorphism has wrong size");
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < k; ++i)
            if ((G.invariant_factors[j] * e(i, j)) % G.invariant_factors[i] != 0)
                fail("IllDefinedEndo", "endomorphism does not respect the relations");
    IntMatrix rel = IntMatrix::identity(k) - e;
    return quotient_by(G, rel);
}

FiniteAbelianGroup quotient(const FiniteAbelianGroup& G, const std::vector<std::vector<Int>>& elems) {
    IntMatrix rel(G.ngens(), elems.size());
    for (size_t j = 0; j < elems.size(); ++j)
        for (size_t i = 0; i < G.ngens(); ++i) rel(i, j) = elems[j][i];
    return quotient_by(G, rel);
}

TorsionSolution solve_torsion_equation(const IntMatrix& phi, const RatVec& c) {
    size_t r = phi.rows;
    IntMatrix M = IntMatrix::identity(r) - phi;
    Smith s = smith(M);
    RatVec uc = mat_apply(s.U, c);
    RatVec svec(r, 0);
    TorsionSolution sol;
    for (size_t i = 0; i < r; ++i) {
        const Int& d = s.D(i, i);
        if (d == 0) {
            Rat x = uc[i];
            x.canonicalize();
            if (x.get_den() != 1) return sol;
            sol.finite_stabilizer = false;
        } else {
            svec[i] = uc[i] / d;
        }
    }
    sol.solvable = true;
    sol.base = frac_part(mat_apply(s.V, svec));
    if (sol.finite_stabilizer) sol.stabilizer = torsion_fixed_points(phi, 0);
    return sol;
}

RatVec frac_part(const RatVec& v) {
    RatVec r = v;
    for (auto& x : r) {
        x.canonicalize();
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        x -= f;
    }
    return r;
}

bool is_integral(const RatVec& v) {
    for (auto x : v) {
        x.canonicalize();
        if (x.get_den() != 1) return false;
    }
    return true;
}

Int lcm_denominators(const RatVec& v) {
    Int l = 1;
    for (auto x : v) {
        x.canonicalize();
        l = lcm(l, x.get_den());
    }
    return l;
}

std::string vec_str(const RatVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

} // namespace tori
