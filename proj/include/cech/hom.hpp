#ifndef CECH_HOM_HPP
#define CECH_HOM_HPP

#include "cech/group.hpp"

namespace cech {

/**
 * The supported structure-preserving maps between coefficient groups.
 *
 * RtoT        R -> T, reduction mod 1; kernel Z, central.
 * ZtoZmod     Z -> Z/n, reduction mod n; kernel nZ (coordinatized as Z), central.
 * ZmodToZmod  Z/n -> Z/m for m | n, reduction mod m; kernel mZ/nZ
 *             (coordinatized as Z/(n/m)), central.
 * GLnDet      GL(n) -> nonzero reals, the determinant. Diagnostic only: its
 *             kernel SL(n) is not central for n >= 2, so the lifting
 *             machinery rejects it.
 */
enum class HomTag { RtoT, ZtoZmod, ZmodToZmod, GLnDet };

struct HomSpec {
    HomTag tag = HomTag::RtoT;
    int n = 0;  // ZtoZmod target modulus; ZmodToZmod source modulus; GLnDet dimension
    int m = 0;  // ZmodToZmod target modulus (must divide n)

    static HomSpec r_to_t() { return {HomTag::RtoT, 0, 0}; }
    static HomSpec z_to_zmod(int n) { return {HomTag::ZtoZmod, n, 0}; }
    static HomSpec zmod_to_zmod(int n, int m) { return {HomTag::ZmodToZmod, n, m}; }
    static HomSpec gl_det(int n) { return {HomTag::GLnDet, n, 0}; }

    void validate() const;
    GroupSpec source() const;
    GroupSpec target() const;
    /** Kernel written in its own coordinates; throws for GLnDet. */
    GroupSpec kernel() const;
    bool central_kernel() const;
};

/** Apply the map to an element of the source group. */
GroupElement hom_apply(const HomSpec& hom, const GroupElement& g);

} // namespace cech

#endif // CECH_HOM_HPP
