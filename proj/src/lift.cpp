#include "cech/lift.hpp"

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cmath>
#include <limits>

#include "cech/smith.hpp"

namespace cech {

using BigInt = boost::multiprecision::mpz_int;

void HomSpec::validate() const
{
    switch (tag) {
        case HomTag::RtoT:
            return;
        case HomTag::ZtoZmod:
            if (n < 2)
                throw InputError("Z -> Z/n requires n >= 2");
            return;
        case HomTag::ZmodToZmod:
            if (n < 2 || m < 2)
                throw InputError("Z/n -> Z/m requires n, m >= 2");
            if (m >= n || n % m != 0)
                throw InputError("Z/n -> Z/m requires m to properly divide n");
            return;
        case HomTag::GLnDet:
            if (n < 1)
                throw InputError("determinant map requires dimension n >= 1");
            return;
    }
    throw InputError("unknown homomorphism tag");
}

GroupSpec HomSpec::source() const
{
    switch (tag) {
        case HomTag::RtoT: return GroupSpec::reals();
        case HomTag::ZtoZmod: return GroupSpec::integers();
        case HomTag::ZmodToZmod: return GroupSpec::integers_mod(n);
        case HomTag::GLnDet: return GroupSpec::general_linear(n);
    }
    throw InputError("unknown homomorphism tag");
}

GroupSpec HomSpec::target() const
{
    switch (tag) {
        case HomTag::RtoT: return GroupSpec::circle();
        case HomTag::ZtoZmod: return GroupSpec::integers_mod(n);
        case HomTag::ZmodToZmod: return GroupSpec::integers_mod(m);
        case HomTag::GLnDet: return GroupSpec::reals();
    }
    throw InputError("unknown homomorphism tag");
}

GroupSpec HomSpec::kernel() const
{
    switch (tag) {
        case HomTag::RtoT:
        case HomTag::ZtoZmod:
            return GroupSpec::integers();
        case HomTag::ZmodToZmod:
            return GroupSpec::integers_mod(n / m);
        case HomTag::GLnDet:
            throw InputError("determinant map is diagnostic only; its kernel has no coordinates here");
    }
    throw InputError("unknown homomorphism tag");
}

bool HomSpec::central_kernel() const
{
    switch (tag) {
        case HomTag::RtoT:
        case HomTag::ZtoZmod:
        case HomTag::ZmodToZmod:
            return true;
        case HomTag::GLnDet:
            return n == 1;  // SL(n) sits in the center only for n = 1
    }
    return false;
}

GroupElement hom_apply(const HomSpec& hom, const GroupElement& g)
{
    hom.validate();
    if (!g.spec().compatible(hom.source()))
        throw InputError("hom_apply: element does not belong to the source group");
    switch (hom.tag) {
        case HomTag::RtoT:
            return GroupElement::make(GroupSpec::circle(g.spec().eps), g.real());
        case HomTag::ZtoZmod:
            return GroupElement::make(GroupSpec::integers_mod(hom.n), g.integer());
        case HomTag::ZmodToZmod:
            return GroupElement::make(GroupSpec::integers_mod(hom.m), g.integer());
        case HomTag::GLnDet: {
            double det = Eigen::PartialPivLU<Eigen::MatrixXd>(g.matrix()).determinant();
            // Value lives in the multiplicative nonzero reals; the R tag is
            // just its container, so compose these by multiplying.
            return GroupElement::make(GroupSpec::reals(g.spec().eps), det);
        }
    }
    throw InputError("unknown homomorphism tag");
}

Cochain1 hom_apply(const HomSpec& hom, const Cochain1& r)
{
    Cochain1 out{hom.target(), {}};
    out.values.reserve(r.values.size());
    for (const GroupElement& v : r.values)
        out.values.push_back(hom_apply(hom, v));
    return out;
}

namespace {

void require_liftable(const HomSpec& hom)
{
    hom.validate();
    if (hom.tag == HomTag::GLnDet)
        throw InputError("lifting along the determinant map is not supported: "
                         "its kernel is not central");
    if (!hom.central_kernel())
        throw ConsistencyError("lifting requires a central kernel");
}

long long checked_narrow(const BigInt& v, const char* what)
{
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw ConsistencyError(std::string("certificate ") + what + " exceeds 64-bit range");
    return v.convert_to<long long>();
}

// Integer matrix of delta1 acting on stored edge values: one row per
// triangle (a, b, c) with +1 at (a, b), +1 at (b, c), -1 at (a, c).
DenseInt<BigInt> delta1_matrix(const Nerve& nerve)
{
    DenseInt<BigInt> A = DenseInt<BigInt>::Zero(nerve.triangle_count(), nerve.edge_count());
    for (int t = 0; t < nerve.triangle_count(); ++t) {
        const NerveTriangle& tr = nerve.triangles[t];
        A(t, nerve.edge_index(tr.a, tr.b)) += 1;
        A(t, nerve.edge_index(tr.b, tr.c)) += 1;
        A(t, nerve.edge_index(tr.a, tr.c)) -= 1;
    }
    return A;
}

} // namespace

Cochain1 set_lift(const Nerve& nerve, const Cochain1& rho, const HomSpec& hom)
{
    require_liftable(hom);
    if (!rho.spec.compatible(hom.target()))
        throw InputError("set_lift: cocycle is not valued in the map's target group");
    CocycleCheck check = check_cocycle(nerve, rho);
    if (!check.ok)
        throw InputError("set_lift: input fails the cocycle condition at triangle "
                         + std::to_string(check.triangle));
    GroupSpec src = hom.source();
    src.eps = rho.spec.eps;
    Cochain1 lift{src, {}};
    lift.values.reserve(rho.values.size());
    for (const GroupElement& v : rho.values) {
        switch (hom.tag) {
            case HomTag::RtoT:
                lift.values.push_back(GroupElement::make(src, v.real()));  // value already in [0,1)
                break;
            case HomTag::ZtoZmod:
            case HomTag::ZmodToZmod:
                lift.values.push_back(GroupElement::make(src, v.integer()));
                break;
            default:
                break;
        }
    }
    return lift;
}

Cochain2 lift_obstruction(const Nerve& nerve, const Cochain1& lift, const HomSpec& hom)
{
    require_liftable(hom);
    if (!lift.spec.compatible(hom.source()))
        throw InputError("lift_obstruction: cochain is not valued in the map's source group");
    Cochain2 defect = delta1(nerve, lift);
    GroupSpec kspec = hom.kernel();
    Cochain2 out{kspec, {}};
    out.values.reserve(defect.values.size());
    for (const GroupElement& d : defect.values) {
        switch (hom.tag) {
            case HomTag::RtoT: {
                double x = d.real();
                double k = std::round(x);
                if (std::abs(x - k) > lift.spec.eps)
                    throw ConsistencyError("lift defect is not an integer within eps");
                out.values.push_back(GroupElement::make(kspec, static_cast<long long>(k)));
                break;
            }
            case HomTag::ZtoZmod: {
                long long v = d.integer();
                if (v % hom.n != 0)
                    throw ConsistencyError("lift defect is not a multiple of n");
                out.values.push_back(GroupElement::make(kspec, v / hom.n));
                break;
            }
            case HomTag::ZmodToZmod: {
                long long v = d.integer();
                if (v % hom.m != 0)
                    throw ConsistencyError("lift defect is not a multiple of m");
                out.values.push_back(GroupElement::make(kspec, v / hom.m));
                break;
            }
            default:
                break;
        }
    }
    return out;
}

CorrectionResult correct_lift(const Nerve& nerve, const Cochain2& v, const HomSpec& hom)
{
    require_liftable(hom);
    if (!v.spec.compatible(hom.kernel()))
        throw InputError("correct_lift: obstruction is not valued in the kernel");
    if (static_cast<int>(v.values.size()) != nerve.triangle_count())
        throw InputError("correct_lift: obstruction is not aligned with the nerve's triangles");

    DenseInt<BigInt> A = delta1_matrix(nerve);
    VectorInt<BigInt> b(nerve.triangle_count());
    for (int t = 0; t < nerve.triangle_count(); ++t)
        b[t] = v.values[t].integer();

    LinearSolveResult<BigInt> sol;
    if (hom.tag == HomTag::ZmodToZmod)
        sol = solve_integer_system_mod(A, b, BigInt(hom.n / hom.m));
    else
        sol = solve_integer_system(A, b);

    CorrectionResult res;
    if (sol.solvable) {
        Cochain1 l{hom.kernel(), {}};
        l.values.reserve(nerve.edge_count());
        for (int e = 0; e < nerve.edge_count(); ++e)
            l.values.push_back(GroupElement::make(hom.kernel(), checked_narrow(sol.x[e], "entry")));
        res.correction = std::move(l);
        return res;
    }
    LiftCertificate cert;
    cert.modulus = checked_narrow(sol.modulus, "modulus");
    cert.pairing = checked_narrow(sol.pairing, "pairing");
    for (int t = 0; t < nerve.triangle_count(); ++t)
        cert.functional.push_back(checked_narrow(sol.functional[t], "functional"));
    res.certificate = std::move(cert);
    return res;
}

LiftResult lift_cocycle(const Nerve& nerve, const Cochain1& rho, const HomSpec& hom)
{
    LiftResult result;
    result.lift = set_lift(nerve, rho, hom);
    Cochain2 obs = lift_obstruction(nerve, result.lift, hom);

    bool trivial = true;
    for (const GroupElement& v : obs.values)
        if (!is_identity(v))
            trivial = false;
    if (trivial) {
        result.status = LiftStatus::Strict;
        return result;
    }

    result.obstruction = obs;
    CorrectionResult corr = correct_lift(nerve, obs, hom);
    if (!corr.solvable()) {
        result.status = LiftStatus::Obstructed;
        result.certificate = std::move(corr.certificate);
        return result;
    }

    const Cochain1& l = *corr.correction;
    Cochain1 fixed{result.lift.spec, {}};
    for (int e = 0; e < nerve.edge_count(); ++e) {
        switch (hom.tag) {
            case HomTag::RtoT:
                fixed.values.push_back(GroupElement::make(fixed.spec,
                    result.lift.values[e].real() - static_cast<double>(l.values[e].integer())));
                break;
            case HomTag::ZtoZmod:
                fixed.values.push_back(GroupElement::make(fixed.spec,
                    result.lift.values[e].integer() - static_cast<long long>(hom.n) * l.values[e].integer()));
                break;
            case HomTag::ZmodToZmod:
                fixed.values.push_back(GroupElement::make(fixed.spec,
                    result.lift.values[e].integer() - static_cast<long long>(hom.m) * l.values[e].integer()));
                break;
            default:
                break;
        }
    }

    CocycleCheck strict = check_cocycle(nerve, fixed);
    if (!strict.ok)
        throw ConsistencyError("corrected lift fails the cocycle condition");
    for (int e = 0; e < nerve.edge_count(); ++e)
        if (!approx_equal(hom_apply(hom, fixed.values[e]), rho.values[e]))
            throw ConsistencyError("corrected lift no longer projects to the cocycle");

    result.status = LiftStatus::CorrectedStrict;
    result.correction = l;
    result.lift = std::move(fixed);
    return result;
}

std::vector<long long> winding_class(const Nerve& nerve, const Cochain1& rho)
{
    if (rho.spec.tag != GroupTag::T)
        throw InputError("winding classes are defined for circle-valued cocycles");
    if (static_cast<int>(rho.values.size()) != nerve.edge_count())
        throw InputError("cocycle is not aligned with the nerve's edges");

    std::vector<long long> classes;
    for (const FundamentalCycle& cyc : fundamental_cycles(nerve)) {
        double sum = 0.0;
        for (const CycleStep& s : cyc.steps) {
            double x = rho.values[s.edge].real();  // canonical representative in [0, 1)
            if (s.sign < 0)
                x = x == 0.0 ? 0.0 : 1.0 - x;
            sum += x >= 0.5 ? x - 1.0 : x;  // shortest displacement in [-1/2, 1/2)
        }
        double k = std::round(sum);
        if (std::abs(sum - k) > rho.spec.eps)
            throw ConsistencyError("winding sum " + std::to_string(sum)
                                   + " is not an integer within eps");
        classes.push_back(static_cast<long long>(k));
    }
    return classes;
}

} // namespace cech
