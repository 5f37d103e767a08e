#pragma once

#include "tori/rootdata.hpp"

#include <map>
#include <vector>

namespace tori {

// N_{a,b} for all pairs of roots, zero when a+b is not a root.
struct StructureConstants {
    size_t n = 0;
    std::vector<int> N;
    int operator()(int a, int b) const { return N[a * n + b]; }
};

StructureConstants structure_constants(const GroupContext& ctx);
// sign[a] with sigma_hat(e_a) = sign[a] e_{d(a)} for the pinned automorphism of d
std::vector<int> pinned_signs(const GroupContext& ctx, const StructureConstants& N,
                              const DiagramAut& d);

// Dense integer matrix used for the adjoint representation.
struct Mat {
    size_t n = 0;
    std::vector<long long> a;
    Mat() = default;
    explicit Mat(size_t n_) : n(n_), a(n_ * n_, 0) {}
    static Mat identity(size_t n);
    long long& operator()(size_t i, size_t j) { return a[i * n + j]; }
    long long operator()(size_t i, size_t j) const { return a[i * n + j]; }
    Mat operator*(const Mat& o) const;
    bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
    IntMatrix to_int() const;
};

// Monomial automorphism of g: h-part given on coroot coordinates, e_a -> sign[a] e_{perm[a]}.
struct SignedPerm {
    IntMatrix cartan;
    std::vector<int> perm;
    std::vector<int> sign;

    static SignedPerm identity(const GroupContext& ctx);
    SignedPerm operator*(const SignedPerm& o) const; // this after o
    bool operator==(const SignedPerm& o) const;
    SignedPerm inverse() const;
    Mat dense() const; // basis (h_1..h_r, e_roots)
};

// Exponent multiset: eigenvalues exp(2 pi i k) with k in [0,1), sorted.
using Spectrum = std::vector<Rat>;

// Cyclotomic multiplicities m_d of the characteristic polynomial.
struct EigenProfile {
    long total_order = 1;
    std::map<long, long> mult;
    bool operator==(const EigenProfile& o) const { return total_order == o.total_order && mult == o.mult; }
    std::string str() const;
};

struct ChevalleyModel {
    const GroupContext* ctx = nullptr;
    StructureConstants N;
    size_t dim = 0;
    std::vector<Mat> ad_e;            // ad(e_a) for every root
    std::vector<SignedPerm> n_simple; // Ad(n_a) for simple a
    std::vector<int> sigma_sign, fr_sign;
    SignedPerm sigma_hat, fr_hat;

    // [x, y] on basis indices; result as (index, coefficient) pairs
    std::vector<std::pair<int, long long>> bracket(int x, int y) const;
};

ChevalleyModel build_adjoint(const GroupContext& ctx);
// recompute ad(e_a), the Tits generators and the pinned twists from m.N
void rebuild_adjoint(ChevalleyModel& m);
Mat exp_nilpotent(const Mat& x);
// Ad(n_a) computed as exp(ad e_a) exp(-ad e_-a) exp(ad e_a)
Mat tits_generator_matrix(const ChevalleyModel& m, int simple);
SignedPerm tits_lift(const ChevalleyModel& m, const std::vector<int>& word);
SignedPerm pinned_sigma(const ChevalleyModel& m, const DiagramAut& d);
// Ad(t) for a torsion point t of the torus (coroot coordinates mod Z), as a diagonal spectrum shift
SignedPerm torus_element(const ChevalleyModel& m, const RatVec& t);

// Characteristic polynomial (Berkowitz), coefficients from constant term upward.
std::vector<Int> char_poly(const IntMatrix& m);
std::vector<Int> cyclotomic(long d);
long euler_phi(long d);
// Cyclotomic factorization; throws NonTorsion
EigenProfile eigenvalue_profile(const IntMatrix& m);
EigenProfile profile_of_spectrum(const Spectrum& s); // throws NotGaloisStable
Spectrum spectrum_of_profile(const EigenProfile& p);

// Spectrum of Ad(n) sigma_hat where n acts by the signed permutation g; the
// torus factor is a torsion point t acting on e_a by exp(2 pi i <a,t>).
Spectrum spectrum(const GroupContext& ctx, const SignedPerm& g, const RatVec& t = {});
// Spectrum of Ad(lambda(zeta_l)) sigma_hat: the Kac-side prediction.
Spectrum torus_sigma_spectrum(const GroupContext& ctx, const SignedPerm& sigma_hat,
                              const RatVec& lambda, long l, long u = 1);
EigenProfile torus_sigma_profile(const GroupContext& ctx, const SignedPerm& sigma_hat,
                                 const RatVec& lambda, long l);
long multiplicative_order(const Mat& m, long bound = 100000);

} // namespace tori
