#pragma once

#include "tori/chevalley.hpp"
#include "tori/kac.hpp"
#include "tori/tits.hpp"
#include "tori/weyl.hpp"

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tori {

// Everything derived from one root datum that does not depend on q.  `sc` is
// the simply connected form used for all torus computations; `lattice` is the
// group as specified (identical to sc when simply connected).
struct Workspace {
    GroupContext sc;
    GroupContext lattice;
    WeylGroup W; // points at sc
    ChevalleyModel model;
    TwistedClassTable classes;

    static std::unique_ptr<Workspace> build(const GroupContext& ctx);
    Workspace() = default;
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
};

GroupContext simply_connected_form(const GroupContext& ctx);
std::string class_label(const Workspace& ws, int w);

struct ToriOrbit {
    const Workspace* ws = nullptr;
    int class_id = -1;
    int w = 0; // representative w_sigma
    KacPoint kac;
    long q = 0, p = 0;
    std::vector<int> wfr_coset;
    std::vector<int> centralizer; // W^{w sigma}
    long l = 1;
};

// errors: NotDefinedOverK, InvalidArgument (non-elliptic or wild class)
ToriOrbit make_orbit(const Workspace& ws, int class_id, long q, int rep = -1, long u = 1);

struct StableClass {
    int rep = 0;
    std::vector<int> members;
    long embeddings = 0;
    long rational = -1; // fiber size, when rational classes are computed
};

// Frobenius-twisted classes of the twisted centralizer for the given w_Fr.
std::vector<StableClass> stable_classes(const ToriOrbit& o, int wfr);
// same, default w_Fr; asserts the count agrees across the coset
std::vector<StableClass> stable_classes(const ToriOrbit& o);

// Image of the simply connected coinvariants in the torsion coinvariants of
// `lattice` (which must contain the coroot lattice).  For sc this is the
// number of k-embeddings of the stable class w'.
long embedding_count(const ToriOrbit& o, int wprime, int wfr, const GroupContext& lattice);
long embedding_count(const ToriOrbit& o, int wprime, int wfr);
// Cokernel route: X / ((w sigma - 1)X + (q - F')X), p-part removed, with F' the
// action of F transported along (w sigma - 1).
long embedding_count_lattice(const ToriOrbit& o, int wprime, int wfr);

struct RationalResult {
    bool supported = false;
    std::string reason;
    long total = 0;
    std::vector<long> fibers; // aligned with the stable classes for weyl(n_F)
    std::vector<StableClass> stable;
    TitsElement n_f;
    size_t group_order = 0; // |N^theta|
};

bool rational_supported(const GroupContext& ctx, std::string* reason = nullptr);
// Rational classes of the simply connected group, or of `lattice` through the
// central kernel X / Q^v when it is larger.  wfr selects the Weyl part of n_F.
RationalResult rational_class_count(const ToriOrbit& o, int wfr, long u, const GroupContext& lattice);
RationalResult rational_class_count(const ToriOrbit& o);

struct ComponentSequence {
    Int total;   // |(T/T0)_Fr| = |(X/(w sigma - 1)X)_F|
    Int tbar;    // |(image of Q^v)_F|
    Int omega;   // |(X/(Q^v + (w sigma - 1)X))_F|
    bool ok() const { return total == tbar * omega; }
};
ComponentSequence component_sequence_check(const ToriOrbit& o, int wprime, int wfr, const GroupContext& lattice);

struct TransferResult {
    std::vector<long> embeddings; // per stable class
    std::optional<long> rational;
};
// errors: BadKernel when p divides |X / Q^v|
TransferResult isogeny_transfer(const ToriOrbit& o, const GroupContext& lattice);

struct CoxeterReport {
    Int coker;            // |Q^v / (w_cox - 1) Q^v|
    Int connection_index;
    bool barycenter = true; // only meaningful for type A
    bool type_a = false;
    long stable = 0;
    long expected_stable = 0;
    bool ok() const { return coker == connection_index && barycenter && stable == expected_stable; }
};
int coxeter_element(const Workspace& ws);
CoxeterReport coxeter_report(const Workspace& ws, long q);

// Randomized choices for the invariance fuzzing; null rng = canonical choices.
struct Choices {
    std::mt19937* rng = nullptr;
};

struct StableRow {
    size_t size = 0;
    long embeddings = 0;
    long rational = -1;
    bool operator<(const StableRow& o) const;
    bool operator==(const StableRow& o) const;
};

struct ReportRow {
    int class_id = -1;
    std::string label;
    std::string rep;    // canonical representative word
    KacPoint kac;       // computed from the (possibly randomized) representative
    std::string point;  // rendered alcove point
    bool defined_over_k = false;
    long stable_count = 0;
    std::vector<StableRow> stable; // sorted, largest first
    std::optional<long> rational;
    std::string note;
    bool fibers_ok = true;   // rational fibers sum to the total
    bool sequence_ok = true; // component exact sequence, every stable class
    bool checks_ok() const { return fibers_ok && sequence_ok; }
    bool operator==(const ReportRow& o) const;
};

struct ClassificationReport {
    std::string type, isogeny;
    long q = 0;
    std::vector<ReportRow> rows;
    bool operator==(const ClassificationReport& o) const;
};

ClassificationReport full_report(const Workspace& ws, long q, const Choices& ch = {});

} // namespace tori
