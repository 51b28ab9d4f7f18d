#include "cech/group.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cech {

namespace {

// Determinant magnitude below which a matrix is rejected as non-invertible.
constexpr double kDetFloor = 1e-12;
// Modulus below which a quaternion is rejected as effectively zero.
constexpr double kQuatFloor = 1e-12;

double fractional_part(double x)
{
    double f = x - std::floor(x);
    if (f >= 1.0)  // guard against floor rounding when x is a tiny negative
        f -= 1.0;
    return f;
}

long long mod_reduce(long long v, long long n)
{
    long long r = v % n;
    return r < 0 ? r + n : r;
}

} // namespace

void GroupSpec::validate() const
{
    switch (tag) {
        case GroupTag::Zmod:
            if (n < 2)
                throw InputError("Zmod requires modulus n >= 2, got n = " + std::to_string(n));
            break;
        case GroupTag::GL:
            if (n < 1)
                throw InputError("GL requires dimension n >= 1, got n = " + std::to_string(n));
            break;
        default:
            break;
    }
    if (eps < 0)
        throw InputError("group tolerance eps must be nonnegative");
}

std::string group_name(GroupTag tag)
{
    switch (tag) {
        case GroupTag::Z: return "Z";
        case GroupTag::Zmod: return "Zmod";
        case GroupTag::R: return "R";
        case GroupTag::T: return "T";
        case GroupTag::Sign: return "Sign";
        case GroupTag::UnitQuaternion: return "UnitQuaternion";
        case GroupTag::QuaternionNonzero: return "QuaternionNonzero";
        case GroupTag::GL: return "GL";
    }
    return "?";
}

GroupElement GroupElement::make(const GroupSpec& spec, long long v)
{
    spec.validate();
    switch (spec.tag) {
        case GroupTag::Z:
            return GroupElement(spec, v);
        case GroupTag::Zmod:
            return GroupElement(spec, mod_reduce(v, spec.n));
        case GroupTag::Sign:
            if (v != 1 && v != -1)
                throw InputError("Sign elements must be +1 or -1, got " + std::to_string(v));
            return GroupElement(spec, v);
        case GroupTag::R:
        case GroupTag::T:
            return make(spec, static_cast<double>(v));
        default:
            throw InputError("integer payload not valid for group " + group_name(spec.tag));
    }
}

GroupElement GroupElement::make(const GroupSpec& spec, double v)
{
    spec.validate();
    switch (spec.tag) {
        case GroupTag::R:
            if (!std::isfinite(v))
                throw InputError("R elements must be finite");
            return GroupElement(spec, v);
        case GroupTag::T:
            if (!std::isfinite(v))
                throw InputError("T elements must be finite");
            return GroupElement(spec, fractional_part(v));
        default:
            throw InputError("real payload not valid for group " + group_name(spec.tag));
    }
}

GroupElement GroupElement::make(const GroupSpec& spec, const Quaternion& v)
{
    spec.validate();
    switch (spec.tag) {
        case GroupTag::UnitQuaternion: {
            double m = v.modulus();
            if (std::abs(m - 1.0) > spec.eps)
                throw InputError("unit quaternion has modulus off 1 by more than eps");
            return GroupElement(spec, v);
        }
        case GroupTag::QuaternionNonzero:
            if (v.modulus() <= kQuatFloor)
                throw InputError("nonzero quaternion is numerically zero");
            return GroupElement(spec, v);
        default:
            throw InputError("quaternion payload not valid for group " + group_name(spec.tag));
    }
}

GroupElement GroupElement::make(const GroupSpec& spec, const Eigen::MatrixXd& v)
{
    spec.validate();
    if (spec.tag != GroupTag::GL)
        throw InputError("matrix payload not valid for group " + group_name(spec.tag));
    if (v.rows() != spec.n || v.cols() != spec.n)
        throw InputError("GL(" + std::to_string(spec.n) + ") element has wrong shape");
    double det = Eigen::PartialPivLU<Eigen::MatrixXd>(v).determinant();
    if (std::abs(det) <= kDetFloor)
        throw InputError("matrix rejected: |det| below invertibility floor");
    return GroupElement(spec, v);
}

std::string GroupElement::describe() const
{
    std::ostringstream os;
    switch (spec_.tag) {
        case GroupTag::Z:
        case GroupTag::Zmod:
        case GroupTag::Sign:
            os << integer();
            break;
        case GroupTag::R:
        case GroupTag::T:
            os << real();
            break;
        case GroupTag::UnitQuaternion:
        case GroupTag::QuaternionNonzero:
            os << quaternion();
            break;
        case GroupTag::GL: {
            const Eigen::MatrixXd& m = matrix();
            os << "[";
            for (int i = 0; i < m.rows(); ++i) {
                if (i) os << "; ";
                for (int j = 0; j < m.cols(); ++j) {
                    if (j) os << " ";
                    os << m(i, j);
                }
            }
            os << "]";
            break;
        }
    }
    return os.str();
}

GroupElement identity(const GroupSpec& spec)
{
    switch (spec.tag) {
        case GroupTag::Z:
        case GroupTag::Zmod:
            return GroupElement::make(spec, static_cast<long long>(0));
        case GroupTag::Sign:
            return GroupElement::make(spec, static_cast<long long>(1));
        case GroupTag::R:
        case GroupTag::T:
            return GroupElement::make(spec, 0.0);
        case GroupTag::UnitQuaternion:
        case GroupTag::QuaternionNonzero:
            return GroupElement::make(spec, Quaternion::one());
        case GroupTag::GL:
            return GroupElement::make(spec, Eigen::MatrixXd::Identity(spec.n, spec.n));
    }
    throw InputError("unknown group tag");
}

GroupElement op(const GroupElement& g, const GroupElement& h)
{
    if (!g.spec().compatible(h.spec()))
        throw InputError("group op between incompatible specs: " + group_name(g.spec().tag)
                         + " vs " + group_name(h.spec().tag));
    const GroupSpec& spec = g.spec();
    switch (spec.tag) {
        case GroupTag::Z:
        case GroupTag::Zmod:
            return GroupElement::make(spec, g.integer() + h.integer());
        case GroupTag::Sign:
            return GroupElement::make(spec, g.integer() * h.integer());
        case GroupTag::R:
        case GroupTag::T:
            return GroupElement::make(spec, g.real() + h.real());
        case GroupTag::UnitQuaternion:
        case GroupTag::QuaternionNonzero:
            return GroupElement::make(spec, g.quaternion() * h.quaternion());
        case GroupTag::GL:
            return GroupElement::make(spec, Eigen::MatrixXd(g.matrix() * h.matrix()));
    }
    throw InputError("unknown group tag");
}

GroupElement inverse(const GroupElement& g)
{
    const GroupSpec& spec = g.spec();
    switch (spec.tag) {
        case GroupTag::Z:
        case GroupTag::Zmod:
            return GroupElement::make(spec, -g.integer());
        case GroupTag::Sign:
            return g;
        case GroupTag::R:
        case GroupTag::T:
            return GroupElement::make(spec, -g.real());
        case GroupTag::UnitQuaternion:
        case GroupTag::QuaternionNonzero:
            return GroupElement::make(spec, g.quaternion().inverse());
        case GroupTag::GL: {
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(g.matrix());
            return GroupElement::make(spec, Eigen::MatrixXd(lu.inverse()));
        }
    }
    throw InputError("unknown group tag");
}

GroupElement power(const GroupElement& g, long long k)
{
    if (k < 0)
        return power(inverse(g), -k);
    GroupElement acc = identity(g.spec());
    for (long long i = 0; i < k; ++i)
        acc = op(acc, g);
    return acc;
}

double distance(const GroupElement& g, const GroupElement& h)
{
    if (!g.spec().compatible(h.spec()))
        throw InputError("distance between incompatible group specs");
    switch (g.spec().tag) {
        case GroupTag::Z:
        case GroupTag::Zmod:
        case GroupTag::Sign:
            return g.integer() == h.integer() ? 0.0 : 1.0;
        case GroupTag::R:
            return std::abs(g.real() - h.real());
        case GroupTag::T: {
            double d = std::abs(g.real() - h.real());
            return std::min(d, 1.0 - d);
        }
        case GroupTag::UnitQuaternion:
        case GroupTag::QuaternionNonzero:
            return max_abs_diff(g.quaternion(), h.quaternion());
        case GroupTag::GL:
            return (g.matrix() - h.matrix()).cwiseAbs().maxCoeff();
    }
    throw InputError("unknown group tag");
}

bool approx_equal(const GroupElement& g, const GroupElement& h)
{
    switch (g.spec().tag) {
        case GroupTag::Z:
        case GroupTag::Zmod:
        case GroupTag::Sign:
            return distance(g, h) == 0.0;
        default:
            return distance(g, h) <= g.spec().eps;
    }
}

bool is_identity(const GroupElement& g)
{
    return approx_equal(g, identity(g.spec()));
}

double norm_p(const Eigen::VectorXd& v, double p)
{
    if (std::isinf(p))
        return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
    if (p < 1.0)
        throw InputError("norm_p requires p >= 1 (or infinity)");
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        s += std::pow(std::abs(v[i]), p);
    return std::pow(s, 1.0 / p);
}

} // namespace cech
