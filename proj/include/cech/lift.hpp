#ifndef CECH_LIFT_HPP
#define CECH_LIFT_HPP

#include <optional>
#include <vector>

#include "cech/cochain.hpp"
#include "cech/hom.hpp"

namespace cech {

/**
 * Edgewise set-theoretic lift of a cocycle over the map's target back to the
 * source group, using canonical representatives: T -> R picks the value in
 * [0, 1), Z/n -> Z picks the residue in {0, ..., n-1}, Z/n values pulled
 * back from Z/m keep the small residue. Reversed edges see the group
 * inverse of the stored value, so the lift is antisymmetric by
 * construction, and it projects back to rho exactly.
 *
 * rho must be a cocycle over the target group.
 */
Cochain1 set_lift(const Nerve& nerve, const Cochain1& rho, const HomSpec& hom);

/**
 * Triangle defect of an edgewise lift, rescaled into kernel coordinates:
 * delta1(lift) lands in the kernel of the map (integers for R -> T after
 * rounding within eps, multiples of n for Z -> Z/n, multiples of m for
 * Z/n -> Z/m) and is divided by the kernel generator. A defect outside the
 * kernel raises a consistency error.
 */
Cochain2 lift_obstruction(const Nerve& nerve, const Cochain1& lift, const HomSpec& hom);

/** Integer functional certifying that no correction exists: functional *
 *  delta1 vanishes mod `modulus` (exactly when modulus is 0) while its
 *  pairing with the obstruction does not. */
struct LiftCertificate {
    std::vector<long long> functional;  // one entry per triangle
    long long modulus = 0;
    long long pairing = 0;
};

struct CorrectionResult {
    std::optional<Cochain1> correction;  // kernel-valued l with delta1(l) = obstruction
    std::optional<LiftCertificate> certificate;
    bool solvable() const { return correction.has_value(); }
};

/**
 * Solve delta1(l) = v over the kernel by exact integer linear algebra
 * (Smith normal form of the triangle/edge incidence system; arbitrary
 * precision, so verdicts are exact).
 */
CorrectionResult correct_lift(const Nerve& nerve, const Cochain2& v, const HomSpec& hom);

enum class LiftStatus { Strict, CorrectedStrict, Obstructed };

struct LiftResult {
    LiftStatus status = LiftStatus::Strict;
    Cochain1 lift;                        // source-valued; projects to rho exactly
    std::optional<Cochain2> obstruction;  // kernel-valued triangle defect
    std::optional<Cochain1> correction;   // kernel-valued l actually applied
    std::optional<LiftCertificate> certificate;
};

/**
 * Full lifting pipeline along a central-kernel map: canonical set lift,
 * obstruction, and, when the defect is nonzero, a kernel correction
 * lift - generator * l that is a genuine cocycle projecting to rho. When
 * the correction system is unsolvable the result is Obstructed and carries
 * the certificate. Maps whose kernel is not central are rejected.
 */
LiftResult lift_cocycle(const Nerve& nerve, const Cochain1& rho, const HomSpec& hom);

/** Positionwise application of the map to every value of a 1-cochain. */
Cochain1 hom_apply(const HomSpec& hom, const Cochain1& r);

/**
 * Integer winding of a circle-valued cocycle around each fundamental cycle:
 * the sum of the shortest-displacement lift (centered representative in
 * [-1/2, 1/2)) of the directed transitions along the cycle. Defined when
 * each sum is within eps of an integer; otherwise the transitions wind
 * inconsistently and a consistency error is raised. Invariant under
 * coboundary twists small enough that no edge's representative wraps.
 */
std::vector<long long> winding_class(const Nerve& nerve, const Cochain1& rho);

} // namespace cech

#endif // CECH_LIFT_HPP
