#include <algorithm>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <limits>

#include "cech/cochain.hpp"
#include "cech/smith.hpp"

namespace cech {

namespace {

using BigInt = boost::multiprecision::mpz_int;

long long small(const BigInt& v)
{
    if (v > std::numeric_limits<long long>::max())
        throw ConsistencyError("invariant factor exceeds 64-bit range");
    return v.convert_to<long long>();
}

} // namespace

H1Description h1(const Nerve& nerve, const GroupSpec& coefficients)
{
    coefficients.validate();
    if (coefficients.tag != GroupTag::Z && coefficients.tag != GroupTag::R
        && coefficients.tag != GroupTag::Zmod)
        throw InputError("h1 supports Z, R and Zmod coefficients only");

    const int E = nerve.edge_count();
    // Coboundary matrices are the transposed incidence matrices.
    Eigen::MatrixXi b1 = boundary_matrix(nerve, 1);  // vertices x edges
    Eigen::MatrixXi b2 = boundary_matrix(nerve, 2);  // edges x triangles
    DenseInt<BigInt> d0 = b1.transpose().cast<BigInt>();  // edges x vertices
    DenseInt<BigInt> d1 = b2.transpose().cast<BigInt>();  // triangles x edges

    // Saturated kernel basis of delta1: the trailing columns of V.
    SmithResult<BigInt> s1 = smith_normal_form(d1);
    const int k = E - s1.rank;

    // Image of delta0 in kernel coordinates. Since delta1 * delta0 = 0 the
    // leading r1 rows of Vinv * d0 vanish identically.
    DenseInt<BigInt> coords = s1.Vinv * d0;
    for (int i = 0; i < s1.rank; ++i)
        for (int j = 0; j < coords.cols(); ++j)
            if (coords(i, j) != 0)
                throw ConsistencyError("coboundary image escaped the cocycle lattice");
    DenseInt<BigInt> relations = coords.bottomRows(k);
    SmithResult<BigInt> sy = smith_normal_form(relations);

    H1Description out;
    const long long free_rank = k - sy.rank;

    switch (coefficients.tag) {
        case GroupTag::Z:
        case GroupTag::R:
            out.free_rank = free_rank;
            if (coefficients.tag == GroupTag::Z)
                for (const BigInt& y : sy.invariant_factors)
                    if (y > 1)
                        out.torsion.push_back(small(y));
            break;
        case GroupTag::Zmod: {
            // Reduction mod n of the integer answer: each free generator
            // contributes Z/n; each invariant factor y of the coboundary
            // image and each invariant factor e of the degree-2 cokernel
            // contributes Z/gcd(., n).
            const BigInt n = coefficients.n;
            out.free_rank = free_rank;
            std::vector<long long> cyclic;
            for (const BigInt& y : sy.invariant_factors) {
                BigInt g = boost::multiprecision::gcd(y, n);
                if (g == n)
                    ++out.free_rank;
                else if (g > 1)
                    cyclic.push_back(small(g));
            }
            for (const BigInt& e : s1.invariant_factors) {
                BigInt g = boost::multiprecision::gcd(e, n);
                if (g == n)
                    ++out.free_rank;
                else if (g > 1)
                    cyclic.push_back(small(g));
            }
            std::sort(cyclic.begin(), cyclic.end());
            out.torsion = std::move(cyclic);
            break;
        }
        default:
            break;
    }
    return out;
}

} // namespace cech
