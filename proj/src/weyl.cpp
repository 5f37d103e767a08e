#include "tori/weyl.hpp"

#include "tori/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace tori {

namespace {

std::vector<int> mat_mul(const std::vector<int>& a, const std::vector<int>& b, size_t r) {
    std::vector<int> c(r * r, 0);
    for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < r; ++k) {
            int x = a[i * r + k];
            if (!x) continue;
            for (size_t j = 0; j < r; ++j) c[i * r + j] += x * b[k * r + j];
        }
    return c;
}

} // namespace

WeylGroup enumerate(const GroupContext& ctx) {
    WeylGroup W;
    W.ctx = &ctx;
    size_t r = ctx.rank;
    W.rank = r;
    Int expected = weyl_order(ctx.factors);
    if (expected > Int(static_cast<unsigned long>(ctx.max_weyl_order)))
        fail("GroupTooLarge", "|W| = " + expected.get_str() + " exceeds the bound " + std::to_string(ctx.max_weyl_order));
    // s_i on coroot coordinates: x -> x - <alpha_i, x> coroot_i
    std::vector<std::vector<int>> S(r, std::vector<int>(r * r, 0));
    for (size_t i = 0; i < r; ++i) {
        for (size_t k = 0; k < r; ++k) S[i][k * r + k] = 1;
        for (size_t j = 0; j < r; ++j) S[i][i * r + j] -= static_cast<int>(ctx.cartan(j, i).get_si());
    }
    std::vector<int> id(r * r, 0);
    for (size_t k = 0; k < r; ++k) id[k * r + k] = 1;
    W.mat.push_back(id);
    W.word.push_back({});
    W.length.push_back(0);
    W.parent.push_back(-1);
    W.last.push_back(-1);
    W.lookup_[id] = 0;
    std::vector<std::vector<int>> right; // right[w][i] = w s_i
    for (size_t w = 0; w < W.mat.size(); ++w) {
        right.emplace_back(r, -1);
        for (size_t i = 0; i < r; ++i) {
            auto m = mat_mul(W.mat[w], S[i], r);
            auto it = W.lookup_.find(m);
            int idx;
            if (it == W.lookup_.end()) {
                idx = static_cast<int>(W.mat.size());
                W.lookup_[m] = idx;
                W.mat.push_back(m);
                auto wd = W.word[w];
                wd.push_back(static_cast<int>(i));
                W.word.push_back(wd);
                W.length.push_back(W.length[w] + 1);
                W.parent.push_back(static_cast<int>(w));
                W.last.push_back(static_cast<int>(i));
            } else {
                idx = it->second;
            }
            right[w][i] = idx;
        }
    }
    W.size = W.mat.size();
    if (Int(static_cast<unsigned long>(W.size)) != expected) fail("InternalError", "Weyl group order mismatch");
    W.simple_.resize(r);
    for (size_t i = 0; i < r; ++i) W.simple_[i] = right[0][i];
    size_t n = W.size;
    W.mult.assign(n * n, -1);
    for (size_t a = 0; a < n; ++a) {
        W.mult[a * n] = static_cast<int>(a);
        for (size_t b = 1; b < n; ++b) W.mult[a * n + b] = right[W.mult[a * n + W.parent[b]]][W.last[b]];
    }
    W.inv.resize(n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (W.mult[a * n + b] == 0) W.inv[a] = static_cast<int>(b);
    auto diag = [&](const DiagramAut& d) {
        std::vector<int> img(n, 0);
        for (size_t b = 1; b < n; ++b) img[b] = right[img[W.parent[b]]][d.perm[W.last[b]]];
        return img;
    };
    W.sigma_img = diag(ctx.sigma);
    W.fr_img = diag(ctx.fr);
    return W;
}

int WeylGroup::index_of(const std::vector<int>& m) const {
    auto it = lookup_.find(m);
    return it == lookup_.end() ? -1 : it->second;
}

IntMatrix WeylGroup::matrix(int w) const {
    IntMatrix m(rank, rank);
    for (size_t i = 0; i < rank * rank; ++i) m.a[i] = mat[w][i];
    return m;
}

int WeylGroup::apply_diagram(const DiagramAut& d, int w) const {
    int x = 0;
    for (int i : word[w]) x = mul(x, simple(d.perm[i]));
    return x;
}

int WeylGroup::order(int w) const {
    int x = w, k = 1;
    while (x != 0) x = mul(x, w), ++k;
    return k;
}

int WeylGroup::power(int w, long k) const {
    long o = order(w);
    k = ((k % o) + o) % o;
    int x = 0;
    for (long i = 0; i < k; ++i) x = mul(x, w);
    return x;
}

std::string WeylGroup::word_str(int w) const {
    if (word[w].empty()) return "1";
    std::string s;
    for (int i : word[w]) s += "s" + std::to_string(i + 1);
    return s;
}

std::vector<int> all_elements(const WeylGroup& W) {
    std::vector<int> v(W.size);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

TwistedClassTable twisted_classes(const WeylGroup& W, const std::vector<int>& domain, const std::vector<int>& acting,
                                  const std::function<int(int)>& tau) {
    TwistedClassTable t;
    std::vector<int> tau_g(acting.size());
    for (size_t k = 0; k < acting.size(); ++k) tau_g[k] = tau(acting[k]);
    std::vector<bool> in_domain(W.size, false);
    for (int x : domain) in_domain[x] = true;
    std::vector<bool> seen(W.size, false);
    for (int x0 : domain) {
        if (seen[x0]) continue;
        std::vector<int> cls;
        std::deque<int> q{x0};
        seen[x0] = true;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            cls.push_back(x);
            for (size_t k = 0; k < acting.size(); ++k) {
                int y = W.mul(W.mul(W.inv[acting[k]], x), tau_g[k]);
                if (!in_domain[y]) fail("InternalError", "twisted action leaves the domain");
                if (!seen[y]) seen[y] = true, q.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        int rep = *std::min_element(cls.begin(), cls.end(), [&](int a, int b) { return W.mat[a] < W.mat[b]; });
        for (int x : cls) t.class_of[x] = static_cast<int>(t.classes.size());
        t.classes.push_back(cls);
        t.rep.push_back(rep);
    }
    return t;
}

TwistedClassTable sigma_classes(const WeylGroup& W) {
    auto all = all_elements(W);
    return twisted_classes(W, all, all, [&](int g) { return W.sigma_img[g]; });
}

IntMatrix twisted_matrix(const WeylGroup& W, int w) { return W.matrix(w) * W.ctx->sigma_matrix(); }

bool is_elliptic(const WeylGroup& W, int w) {
    return determinant(twisted_matrix(W, w) - IntMatrix::identity(W.rank)) != 0;
}

long twisted_order(const WeylGroup& W, int w) {
    IntMatrix m = twisted_matrix(W, w), p = m, id = IntMatrix::identity(W.rank);
    long k = 1;
    while (!(p == id)) p = p * m, ++k;
    return k;
}

bool is_tame_class(const WeylGroup& W, int w, long p) {
    if (p <= 1) return true;
    return twisted_order(W, w) % p != 0;
}

int norm_map(const WeylGroup& W, int w, long d) {
    if (d < 1) fail("InvalidArgument", "norm degree must be positive");
    int x = 0, y = w;
    for (long k = 0; k < d; ++k) {
        x = W.mul(x, y);
        y = W.sigma_img[y];
    }
    return x;
}

int fr_norm(const WeylGroup& W, int w, long q) { return W.fr_img[norm_map(W, w, q)]; }

std::vector<int> fr_stable_elliptic_classes(const WeylGroup& W, const TwistedClassTable& t, long q) {
    std::vector<int> out;
    for (size_t c = 0; c < t.classes.size(); ++c) {
        int w = t.rep[c];
        if (!is_elliptic(W, w) || !is_tame_class(W, w, W.ctx->p)) continue;
        if (t.class_of.at(fr_norm(W, w, q)) == static_cast<int>(c)) out.push_back(static_cast<int>(c));
    }
    return out;
}

std::vector<int> twisted_centralizer(const WeylGroup& W, int w) {
    std::vector<int> out;
    for (size_t v = 0; v < W.size; ++v)
        if (W.mul(W.mul(w, W.sigma_img[v]), W.inv[w]) == static_cast<int>(v)) out.push_back(static_cast<int>(v));
    return out;
}

std::vector<int> solve_w_fr(const WeylGroup& W, int w, long q) {
    int target = fr_norm(W, w, q);
    std::vector<int> out;
    for (size_t v = 0; v < W.size; ++v)
        if (W.mul(W.mul(W.inv[v], w), W.sigma_img[v]) == target) out.push_back(static_cast<int>(v));
    if (out.empty()) fail("NoSolution", "w_Fr equation has no solution; the class is not Fr-stable");
    return out;
}

} // namespace tori
