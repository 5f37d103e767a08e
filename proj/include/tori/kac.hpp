#pragma once

#include "tori/chevalley.hpp"
#include "tori/weyl.hpp"

#include <string>
#include <vector>

namespace tori {

struct KacPoint {
    int class_id = -1;
    int rep = 0;     // Weyl element used for the match
    long l = 1;      // order of n * sigma
    RatVec lambda;   // coroot coordinates
    RatVec point;    // x0 + lambda / l
    Int j = 1;
    std::vector<Int> coords; // j * psi(point), in wall order
    std::string str(const GroupContext& ctx) const; // "(3a+4b)/8"
};

// sigma-fixed lambda in the coroot lattice with lambda / l in the closed alcove.
std::vector<RatVec> candidate_points(const GroupContext& ctx, long l);

// Order of lambda/l * sigma in T x| <sigma>.
long torus_sigma_order(const GroupContext& ctx, const RatVec& lambda, long l);

// Point of the class containing w.  u is the primitive-root exponent (coprime to l).
KacPoint assign_point(const GroupContext& ctx, const WeylGroup& W, const ChevalleyModel& model, int w,
                      long u = 1);

std::pair<Int, std::vector<Int>> kac_coordinates(const GroupContext& ctx, const RatVec& point);

// One point per tame elliptic sigma-class (class ids index `classes`); points must be distinct.
std::vector<KacPoint> all_points(const GroupContext& ctx, const WeylGroup& W, const ChevalleyModel& model,
                                 const TwistedClassTable& classes);

} // namespace tori
