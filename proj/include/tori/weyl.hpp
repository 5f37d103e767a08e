#pragma once

#include "tori/rootdata.hpp"

#include <functional>
#include <unordered_map>
#include <vector>

namespace tori {

// Finite Weyl group with elements indexed 0..size-1 (0 = identity, BFS order by length).
class WeylGroup {
public:
    const GroupContext* ctx = nullptr;
    size_t size = 0, rank = 0;
    std::vector<std::vector<int>> mat;  // r*r, row-major, on coroot coordinates
    std::vector<std::vector<int>> word; // reduced word
    std::vector<int> length;
    std::vector<int> parent, last; // element = parent * s_last
    std::vector<int> mult;         // size * size
    std::vector<int> inv;
    std::vector<int> sigma_img, fr_img;

    int mul(int a, int b) const { return mult[static_cast<size_t>(a) * size + b]; }
    int simple(int i) const { return simple_[i]; }
    int index_of(const std::vector<int>& m) const;
    IntMatrix matrix(int w) const;
    // image of w under an arbitrary diagram automorphism
    int apply_diagram(const DiagramAut& d, int w) const;
    int order(int w) const;
    int power(int w, long k) const;
    std::string word_str(int w) const;

    friend WeylGroup enumerate(const GroupContext& ctx);

private:
    std::vector<int> simple_;
    std::map<std::vector<int>, int> lookup_;
};

WeylGroup enumerate(const GroupContext& ctx);

// Partition of `domain` under x -> g^-1 x tau(g), g ranging over `acting`.
struct TwistedClassTable {
    std::vector<std::vector<int>> classes; // sorted members
    std::vector<int> rep;                  // lexicographically minimal matrix
    std::unordered_map<int, int> class_of;
};

TwistedClassTable twisted_classes(const WeylGroup& W, const std::vector<int>& domain,
                                  const std::vector<int>& acting, const std::function<int(int)>& tau);
// sigma-conjugacy classes of W (tau = sigma)
TwistedClassTable sigma_classes(const WeylGroup& W);
std::vector<int> all_elements(const WeylGroup& W);

IntMatrix twisted_matrix(const WeylGroup& W, int w); // w * sigma on coroot coordinates
bool is_elliptic(const WeylGroup& W, int w);
long twisted_order(const WeylGroup& W, int w); // order of (w, sigma)
bool is_tame_class(const WeylGroup& W, int w, long p);
int norm_map(const WeylGroup& W, int w, long d); // w sigma(w) ... sigma^{d-1}(w)
// Fr(N_q(w)), the map whose fixed classes carry k-tori
int fr_norm(const WeylGroup& W, int w, long q);
std::vector<int> fr_stable_elliptic_classes(const WeylGroup& W, const TwistedClassTable& t, long q);
std::vector<int> twisted_centralizer(const WeylGroup& W, int w);
std::vector<int> solve_w_fr(const WeylGroup& W, int w, long q);

} // namespace tori
