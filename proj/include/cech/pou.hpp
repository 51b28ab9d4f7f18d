#ifndef CECH_POU_HPP
#define CECH_POU_HPP

#include <Eigen/Dense>
#include <vector>

#include "cech/cochain.hpp"
#include "cech/cover.hpp"

namespace cech {

/**
 * Nonnegative weights eta(set, point) subordinate to a cover: eta vanishes
 * off the set's members and the column over each covered point sums to 1.
 */
struct PartitionOfUnity {
    Eigen::MatrixXd weights;  // sets x points
};

/**
 * Tent-function partition of unity for a cover whose sets are metric balls:
 * the raw weight of a ball at p is max(0, 1 - d(p, center)/radius),
 * normalized over each point. Every point must be covered, and every set
 * must carry a ball shape.
 */
PartitionOfUnity partition_of_unity(const Cover& cover);

/** Sampled real function on part of the sample: (point, value), sorted by point. */
struct FunctionTable {
    std::vector<std::pair<int, double>> entries;
};

/**
 * Function-valued 1-cochain: for each nerve edge (a, b) with a < b a table
 * of values r_ab(p) on exactly the points of the intersection. The value on
 * the reversed pair is -r_ab(p) by definition.
 */
struct FunctionCochain1 {
    std::vector<FunctionTable> edges;  // aligned with nerve.edges
    double eps = 1e-9;
};

struct FunctionSolveResult {
    /** For each nerve vertex, a table of t_a(p) on the set's members. */
    std::vector<FunctionTable> sections;
};

/**
 * Solve t_b(p) - t_a(p) = r_ab(p) on overlaps by weighted averaging:
 * t_a(p) = - sum_g r_ag(p) * eta_g(p), each term supported where p lies in
 * both sets. Requires the pointwise cocycle identity
 * r_ab(p) + r_bg(p) = r_ag(p) on every triple overlap (within eps);
 * violations are reported as input errors naming the triple and point.
 */
FunctionSolveResult solve_function_cocycle(const Cover& cover, const Nerve& nerve,
                                           const FunctionCochain1& r,
                                           const PartitionOfUnity& pou);

} // namespace cech

#endif // CECH_POU_HPP
