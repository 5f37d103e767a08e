#pragma once

#include "tori/intlin.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tori {

// Permutation of the simple roots; perm[i] is the image of i.
struct DiagramAut {
    std::vector<int> perm;

    static DiagramAut identity(size_t r);
    size_t size() const { return perm.size(); }
    int operator()(int i) const { return perm[i]; }
    int order() const;
    bool is_identity() const;
    DiagramAut operator*(const DiagramAut& o) const; // this after o
    DiagramAut inverse() const;
    DiagramAut power(long k) const;
    IntMatrix matrix() const; // e_i -> e_perm[i]
    bool operator==(const DiagramAut& o) const { return perm == o.perm; }
    std::string str() const;
};

struct SimpleFactor {
    char letter;
    int rank;
    int offset;
    std::string name() const { return std::string(1, letter) + std::to_string(rank); }
};

struct CartanType {
    std::vector<SimpleFactor> factors; // offsets unused
    std::string str() const;           // "A1xA1", "empty"
    bool operator==(const CartanType& o) const { return str() == o.str(); }
};

struct GroupSpec {
    std::string type;
    std::string isogeny = "sc";  // sc | ad | matrix
    std::vector<RatVec> lattice; // basis vectors in coroot coordinates (isogeny == matrix)
    std::string sigma = "id";    // id | flip | cycles "(1 2)(3 4)", 1-based
    std::string fr = "id";
    long p = 0;
    long q = 0;
    size_t max_weyl_order = 1152;
};

// psi(x) = <gradient, x> + level, with the gradient a root (index into ctx.roots).
struct AffineRoot {
    int root;
    Rat level;
    int mark = 1;
    int factor = 0;
    std::string label;
};

struct AlcovePoint {
    RatVec coords; // coroot coordinates
    static AlcovePoint from(const RatVec& lambda, const Int& l);
    Int denominator() const { return lcm_denominators(coords); }
};

enum class Membership { Interior, Boundary, Outside };

struct MembershipResult {
    Membership kind;
    std::vector<int> vanishing; // indices into the wall list
};

struct LocalSubsystem {
    CartanType type;
    std::vector<int> roots;
    CartanType lambda_fixed;
    std::vector<int> lambda_fixed_roots;
};

struct FundamentalGroup {
    FiniteAbelianGroup omega; // ambient: coroot coordinates
    IntMatrix fr_action;      // on generator coordinates
    FiniteAbelianGroup fr_coinvariants;
};

class GroupContext {
public:
    std::string type_name;
    std::string isogeny;
    std::vector<SimpleFactor> factors;
    IntMatrix cartan; // A[i][j] = <alpha_j, coroot_i>
    size_t rank = 0;
    std::vector<int> sym;          // d_i A[i][j] = d_j A[j][i]; |alpha_i|^2 = 2 d_i
    std::vector<RatVec> basis;     // basis of X_* in coroot coordinates
    std::vector<RatVec> basis_inv; // coroot coordinates -> X_* coordinates
    DiagramAut sigma, fr;
    long p = 0, q = 0;
    size_t max_weyl_order = 1152;

    // Positive roots first (height, then lexicographic), negatives in the same order.
    std::vector<std::vector<int>> roots;   // root coordinates
    std::vector<std::vector<int>> coroots; // coroot coordinates
    std::vector<int> height;
    std::vector<int> neg;
    std::vector<int> norm2; // (alpha, alpha)
    std::vector<int> factor_of;
    std::vector<int> highest; // per factor
    std::vector<int> sigma_root, fr_root; // induced permutations of the roots
    size_t npos = 0;

    std::map<std::vector<int>, int> root_lookup;

    // alcove data (unset when the twist is unsupported)
    std::optional<std::vector<AffineRoot>> walls;
    std::string walls_error;
    std::vector<Rat> mark_constant; // per factor: sum of mark * psi

    int root_index(const std::vector<int>& c) const;
    int simple(int i) const { return i; } // simple roots come first
    Rat pair(int root, const RatVec& x) const;          // <alpha, x>, x in coroot coordinates
    int pair_root_coroot(int a, int b) const;           // <alpha_a, coroot_b>
    Rat form(const RatVec& u, const RatVec& v) const;   // symmetric form on root coordinates
    Int connection_index() const;
    bool simply_connected() const;
    bool split() const { return sigma.is_identity(); }
    IntMatrix sigma_matrix() const { return sigma.matrix(); }
    IntMatrix fr_matrix() const { return fr.matrix(); }
    std::vector<RatVec> coweights() const; // columns of A^{-T}

    // integer matrix in X_* coordinates for a coroot-coordinate matrix preserving X_*
    IntMatrix to_lattice(const IntMatrix& m) const;
    RatVec to_lattice_coords(const RatVec& x) const;
    RatVec from_lattice_coords(const RatVec& x) const;
    bool in_lattice(const RatVec& x) const;
    bool sigma_fixed(const RatVec& x) const;
    Rat eval(const AffineRoot& psi, const RatVec& x) const;
    std::string root_label(int a) const;
    std::string coroot_combo(const RatVec& x) const; // "(3a+4b)/8"-style rendering
};

GroupContext build_group(const GroupSpec& spec);
// p for a residue field of size q; validates q against the context (prime power, twist
// compatibility, tameness of the whole group unless whole_group is false).
// Uses ctx.p when set.
long residue_characteristic(const GroupContext& ctx, long q, bool whole_group = true);
IntMatrix cartan_matrix(char letter, int rank);
std::vector<SimpleFactor> parse_type(const std::string& type);
DiagramAut parse_diagram_aut(const std::string& text, const std::vector<SimpleFactor>& factors,
                             size_t rank);
CartanType classify_cartan(const IntMatrix& cartan);

const std::vector<AffineRoot>& simple_affine_roots(const GroupContext& ctx);
// Eigen-level construction of the walls for one factor; also valid for split factors.
std::vector<AffineRoot> general_walls(const GroupContext& ctx, int factor,
                                      const std::vector<int>& sigma_signs);
MembershipResult alcove_membership(const GroupContext& ctx, const RatVec& x);
// lambda/l; pass l = 0 to skip the lambda-fixed comparison
LocalSubsystem local_root_subsystem(const GroupContext& ctx, const RatVec& x,
                                    const RatVec& lambda = {}, long l = 0);
FundamentalGroup fundamental_group(const GroupContext& ctx);
Int weyl_order(const std::vector<SimpleFactor>& factors);
Int diagram_aut_order(const std::vector<SimpleFactor>& factors);

} // namespace tori
