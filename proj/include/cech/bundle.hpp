#ifndef CECH_BUNDLE_HPP
#define CECH_BUNDLE_HPP

#include <optional>
#include <vector>

#include "cech/cochain.hpp"
#include "cech/cover.hpp"

namespace cech {

/**
 * Discretized fiber bundle over a covered sample: constant transition
 * values on the overlaps of a cover, satisfying the cocycle condition in
 * the chosen convention. Supported fiber groups: T (circle bundles), GL
 * (flat vector bundles), Sign (line-bundle orientations), UnitQuaternion.
 */
struct Bundle {
    Cover cover;
    Nerve nerve;
    GroupSpec spec;
    Convention convention = Convention::GBA;
    Cochain1 transitions;
};

/**
 * Assemble and validate a bundle: the transitions must pass the cocycle
 * test (violations are input errors naming the triangle), and the induced
 * identifications over each sample point are checked exhaustively for
 * path independence, which is redundant once the cocycle test passes and
 * therefore raises a consistency error if it ever disagrees.
 */
Bundle build_bundle(const Cover& cover, const GroupSpec& spec, Convention convention,
                    const Cochain1& transitions);

struct SectionResult {
    std::optional<Cochain0> section;  // per-vertex values phi with compatible overlaps
    std::optional<CoboundaryObstruction> obstruction;
    bool exists() const { return section.has_value(); }
};

/**
 * Does the bundle admit a global section, i.e. are the transitions a
 * coboundary? Solved by the spanning-forest gauge; the verdict is exact up
 * to the group tolerance, and for circle bundles it certifies gauge
 * triviality.
 */
SectionResult section_exists(const Bundle& bundle);

/**
 * Holonomy of the (flat) transition data around each fundamental cycle,
 * transported to the breadth-first root of the cycle's component so that a
 * gauge twist by tau conjugates every holonomy by tau at that root.
 * Ordered per the fundamental cycle list.
 */
std::vector<GroupElement> flat_holonomy(const Bundle& bundle);

/** Supported subgroup scenarios for reduction/quotient bookkeeping. */
enum class SubgroupKind {
    IntegersInReals,  // Z inside R; quotient R/Z reported as T
    CyclicInCircle,   // (1/k)Z/Z inside T; quotient is T again, via multiplication by k
    SignsInGL,        // {+I, -I} inside GL(n); quotient labels are sign-canonicalized matrices
};

struct SubgroupGlueResult {
    /** Do all pairwise differences phi_a^{-1} phi_b land in the subgroup? */
    bool in_subgroup = false;
    std::optional<int> violating_edge;
    std::optional<GroupElement> violating_value;
    /** Per vertex, the quotient label q(phi_a); labels agree across overlaps. */
    std::vector<GroupElement> quotient_labels;
    /** With tau given: phi'_a = phi_a * tau_a^{-1}, when globally consistent. */
    std::optional<std::vector<GroupElement>> global_map;
    std::optional<int> mismatch_edge;  // edge where phi' disagrees, if any
};

/**
 * Local data phi_a (one constant per nerve vertex) glues to quotient-valued
 * data exactly when the differences phi_a^{-1} phi_b on overlaps lie in the
 * subgroup; the labels q(phi_a) are then well defined and checked to agree
 * on overlaps. When a subgroup-valued tau with delta0(tau) = differences is
 * supplied, phi_a tau_a^{-1} becomes a single global value per component.
 * k is the cyclic order for CyclicInCircle and ignored otherwise.
 */
SubgroupGlueResult subgroup_glue(const Nerve& nerve, const std::vector<GroupElement>& phis,
                                 SubgroupKind kind, int k,
                                 const std::optional<std::vector<GroupElement>>& tau);

} // namespace cech

#endif // CECH_BUNDLE_HPP
