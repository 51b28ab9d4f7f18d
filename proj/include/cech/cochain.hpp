#ifndef CECH_COCHAIN_HPP
#define CECH_COCHAIN_HPP

#include <optional>
#include <tuple>
#include <vector>

#include "cech/group.hpp"
#include "cech/nerve.hpp"

namespace cech {

/**
 * Orientation convention for nonabelian 1-cochains on a triangle (a, b, c):
 *
 * ABG: cocycle condition  r_ab * r_bc * r_ca = e, coboundaries are
 *      r_ab = t_a^{-1} * t_b  (transport composes left to right).
 * GBA: cocycle condition  r_ca * r_bc * r_ab = e, coboundaries are
 *      r_ab = t_b * t_a^{-1}  (transport composes right to left).
 *
 * For abelian coefficients the two agree and the condition reads
 * r_ab + r_bc - r_ac = 0.
 */
enum class Convention { ABG, GBA };

/** Values attached to nerve vertices, aligned with nerve.vertices. */
struct Cochain0 {
    GroupSpec spec;
    std::vector<GroupElement> values;
};

/**
 * Values attached to nerve edges in their stored orientation a < b,
 * aligned with nerve.edges. The reversed orientation is never stored:
 * r_ba is the group inverse of r_ab by definition.
 */
struct Cochain1 {
    GroupSpec spec;
    std::vector<GroupElement> values;
};

/** Values attached to nerve triangles, aligned with nerve.triangles. */
struct Cochain2 {
    GroupSpec spec;
    std::vector<GroupElement> values;
};

Cochain0 identity_cochain0(const Nerve& nerve, const GroupSpec& spec);
Cochain1 identity_cochain1(const Nerve& nerve, const GroupSpec& spec);
Cochain2 identity_cochain2(const Nerve& nerve, const GroupSpec& spec);

/** Value of r on the directed pair (u, v); the stored value when u < v, its
 *  inverse when v < u. The edge must exist in the nerve. */
GroupElement directed_value(const Nerve& nerve, const Cochain1& r, int u, int v);

/** Coboundary of a 0-cochain. */
Cochain1 delta0(const Nerve& nerve, const Cochain0& t, Convention conv = Convention::GBA);

/** Coboundary of a 1-cochain: the triangle defect in the given convention. */
Cochain2 delta1(const Nerve& nerve, const Cochain1& r, Convention conv = Convention::GBA);

struct CocycleCheck {
    bool ok = true;
    int triangle = -1;                   // first violating triangle (storage order)
    std::optional<GroupElement> defect;  // its triangle product
};

/** Does r satisfy the cocycle condition on every triangle (within eps)? */
CocycleCheck check_cocycle(const Nerve& nerve, const Cochain1& r, Convention conv = Convention::GBA);

/**
 * Composite of r along a cycle's directed steps: the sum for abelian
 * coefficients, the ordered product for nonabelian ones (left-to-right for
 * ABG, right-to-left for GBA). For any closed cycle this is invariant under
 * r -> r + delta0(t) in the abelian case and conjugated by the base
 * vertex's gauge in the nonabelian case.
 */
GroupElement cycle_holonomy(const Nerve& nerve, const Cochain1& r, const FundamentalCycle& cycle,
                            Convention conv = Convention::GBA);

/** Composite of r along an arbitrary list of directed steps. */
GroupElement walk_holonomy(const Nerve& nerve, const Cochain1& r,
                           const std::vector<CycleStep>& steps, Convention conv = Convention::GBA);

struct CoboundaryObstruction {
    FundamentalCycle cycle;  // first failing fundamental cycle (chord order)
    GroupElement holonomy;   // its nontrivial composite
};

struct CoboundaryResult {
    std::optional<Cochain0> solution;
    std::optional<CoboundaryObstruction> obstruction;
    bool solved() const { return solution.has_value(); }
};

/**
 * Solve r = delta0(t) by gauge fixing along a breadth-first spanning
 * forest: roots get the identity, tree edges propagate, and every chord is
 * checked within the group tolerance. On failure the first bad chord's
 * fundamental cycle and holonomy certify the obstruction. When r actually
 * is a coboundary the solution matches any preimage up to a constant on
 * each component.
 */
CoboundaryResult solve_coboundary(const Nerve& nerve, const Cochain1& r,
                                  Convention conv = Convention::GBA);

/**
 * Summary of the degree-1 cohomology of the nerve. For Z coefficients:
 * free_rank copies of Z plus a finite factor per torsion entry (> 1). For R:
 * free_rank is the vector-space dimension and torsion is empty. For Zmod(n):
 * free_rank counts Z/n summands and torsion lists the smaller cyclic orders.
 */
struct H1Description {
    long long free_rank = 0;
    std::vector<long long> torsion;
};

/**
 * Degree-1 cohomology ker(delta1)/im(delta0) of the nerve with Z, R or
 * Zmod(n) coefficients, computed exactly from the integer incidence
 * matrices by Smith normal form (arbitrary-precision arithmetic).
 * Other coefficient groups are not supported.
 */
H1Description h1(const Nerve& nerve, const GroupSpec& coefficients);

/**
 * Pointwise difference data: for selected pairs (x, y) a target value
 * F(x, y), understood antisymmetrically. Pairs may be given in either
 * orientation; (x, x) entries must carry the value 0.
 */
struct LocalDifferenceProblem {
    int point_count = 0;
    std::vector<std::tuple<int, int, double>> differences;
    double eps = 1e-9;
};

/** A closed walk of points whose accumulated difference does not vanish. */
struct PointCycleObstruction {
    std::vector<int> points;  // x0, x1, ..., xk with xk = x0
    double sum = 0;
};

struct LocalDifferenceResult {
    std::optional<std::vector<double>> solution;
    std::optional<PointCycleObstruction> obstruction;
    bool solved() const { return solution.has_value(); }
};

/**
 * Find f with f(y) - f(x) = F(x, y) for all given pairs, by spanning-forest
 * propagation over the pair graph; f is 0 on the root of each component.
 * When no such f exists the first failing chord yields a closed walk whose
 * accumulated difference stays nonzero.
 */
LocalDifferenceResult solve_local_difference(const LocalDifferenceProblem& problem);

} // namespace cech

#endif // CECH_COCHAIN_HPP
