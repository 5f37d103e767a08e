#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tori {

using Int = mpz_class;
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

// canonical a/b (mpq_class(a, b) does not normalize)
inline Rat frac(const Int& a, const Int& b) {
    Rat r(a, b);
    r.canonicalize();
    return r;
}

struct IntMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
    static IntMatrix identity(size_t n);
    static IntMatrix from(const std::vector<std::vector<long long>>& rows);

    Int& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const;
    IntMatrix transpose() const;
    std::string str() const;
};

Int determinant(const IntMatrix& m);
// Exact inverse over Q; throws Singular when det = 0.
std::vector<RatVec> rational_inverse(const IntMatrix& m);
RatVec mat_apply(const IntMatrix& m, const RatVec& v);
RatVec mat_apply(const std::vector<RatVec>& m, const RatVec& v);

struct Smith {
    IntMatrix U, D, V; // U * M * V = D
};

Smith smith(const IntMatrix& M);

// Invariant-factor presentation  Z/d_1 x ... x Z/d_k  (d_i > 1, d_i | d_{i+1}).
// lift[i] is an ambient representative of the i-th generator; coord_map turns
// an ambient element back into generator coordinates (row i taken mod d_i).
struct FiniteAbelianGroup {
    std::vector<Int> invariant_factors;
    std::vector<RatVec> lift;
    std::vector<RatVec> coord_map;

    Int order() const;
    bool trivial() const { return invariant_factors.empty(); }
    size_t ngens() const { return invariant_factors.size(); }
    // M*: lcm of the denominators of the generator lifts
    Int denominator() const;

    std::vector<Int> coords(const RatVec& x) const;
    RatVec element(const std::vector<Int>& c) const;
    // all coordinate tuples, in lexicographic order
    std::vector<std::vector<Int>> all_coords() const;
    std::string str() const;
};

// Z^rows / M Z^cols.
FiniteAbelianGroup cokernel(const IntMatrix& M);

// (X (x) (Q/Z)_{p'})^phi with X = Z^r; p = 0 keeps everything.
FiniteAbelianGroup torsion_fixed_points(const IntMatrix& phi, long p);

// G / (1 - e)G, e given on generator coordinates: e(g_j) = sum_i e(i,j) g_i.
FiniteAbelianGroup coinvariants(const FiniteAbelianGroup& G, const IntMatrix& e);

// G / <elems>, elements given in generator coordinates.
FiniteAbelianGroup quotient(const FiniteAbelianGroup& G,
                            const std::vector<std::vector<Int>>& elems);

// Matrix of an ambient endomorphism f in generator coordinates.
template <class F>
IntMatrix endo_in_coords(const FiniteAbelianGroup& G, F&& f) {
    size_t k = G.ngens();
    IntMatrix e(k, k);
    for (size_t j = 0; j < k; ++j) {
        auto c = G.coords(f(G.lift[j]));
        for (size_t i = 0; i < k; ++i) e(i, j) = c[i];
    }
    return e;
}

struct TorsionSolution {
    bool solvable = false;
    RatVec base;
    bool finite_stabilizer = true;
    FiniteAbelianGroup stabilizer; // ker(1 - phi) on torsion points
};

// (1 - phi) t = c  in  Q^r / Z^r.
TorsionSolution solve_torsion_equation(const IntMatrix& phi, const RatVec& c);

// helpers for Q^r / Z^r
RatVec frac_part(const RatVec& v);
bool is_integral(const RatVec& v);
Int lcm_denominators(const RatVec& v);
std::string vec_str(const RatVec& v);

} // namespace tori
