#ifndef CECH_GROUP_HPP
#define CECH_GROUP_HPP

#include <Eigen/Dense>
#include <string>
#include <variant>

#include "cech/errors.hpp"
#include "cech/quaternion.hpp"

namespace cech {

/**
 * Coefficient groups for cochains on a nerve.
 *
 * Z        integers under addition
 * Zmod     integers mod n (n >= 2), residues stored in [0, n)
 * R        reals under addition, compared within eps
 * T        reals mod 1 under addition, canonical representatives in [0, 1),
 *          compared in the circle metric min(|a-b|, 1-|a-b|)
 * Sign     {+1, -1} under multiplication
 * UnitQuaternion      quaternions of modulus 1 (within eps at construction)
 * QuaternionNonzero   all nonzero quaternions
 * GL       invertible n x n real matrices, |det| > 1e-12
 *
 * Z, Zmod, R, T and Sign are abelian; the rest are not.
 */
enum class GroupTag { Z, Zmod, R, T, Sign, UnitQuaternion, QuaternionNonzero, GL };

struct GroupSpec {
    GroupTag tag = GroupTag::Z;
    int n = 0;          // modulus for Zmod, dimension for GL
    double eps = 1e-9;  // comparison tolerance for the continuous groups

    static GroupSpec integers() { return {GroupTag::Z, 0, 1e-9}; }
    static GroupSpec integers_mod(int n) { return {GroupTag::Zmod, n, 1e-9}; }
    static GroupSpec reals(double eps = 1e-9) { return {GroupTag::R, 0, eps}; }
    static GroupSpec circle(double eps = 1e-9) { return {GroupTag::T, 0, eps}; }
    static GroupSpec sign() { return {GroupTag::Sign, 0, 1e-9}; }
    static GroupSpec unit_quaternions(double eps = 1e-9) { return {GroupTag::UnitQuaternion, 0, eps}; }
    static GroupSpec nonzero_quaternions(double eps = 1e-9) { return {GroupTag::QuaternionNonzero, 0, eps}; }
    static GroupSpec general_linear(int n, double eps = 1e-9) { return {GroupTag::GL, n, eps}; }

    bool abelian() const
    {
        return tag == GroupTag::Z || tag == GroupTag::Zmod || tag == GroupTag::R
               || tag == GroupTag::T || tag == GroupTag::Sign;
    }

    /** True when ops between elements of the two specs are defined. */
    bool compatible(const GroupSpec& other) const { return tag == other.tag && n == other.n; }

    void validate() const;
};

std::string group_name(GroupTag tag);

/**
 * A value in one of the supported groups, carrying its spec. Construct via
 * the make() overloads, which validate (and canonicalize) the payload.
 */
class GroupElement {
  public:
    GroupElement() : spec_(GroupSpec::integers()), value_(static_cast<long long>(0)) {}

    static GroupElement make(const GroupSpec& spec, long long v);
    static GroupElement make(const GroupSpec& spec, double v);
    static GroupElement make(const GroupSpec& spec, const Quaternion& v);
    static GroupElement make(const GroupSpec& spec, const Eigen::MatrixXd& v);

    const GroupSpec& spec() const { return spec_; }
    long long integer() const { return std::get<long long>(value_); }
    double real() const { return std::get<double>(value_); }
    const Quaternion& quaternion() const { return std::get<Quaternion>(value_); }
    const Eigen::MatrixXd& matrix() const { return std::get<Eigen::MatrixXd>(value_); }

    std::string describe() const;

  private:
    GroupSpec spec_;
    std::variant<long long, double, Quaternion, Eigen::MatrixXd> value_;

    GroupElement(const GroupSpec& spec, std::variant<long long, double, Quaternion, Eigen::MatrixXd> v)
        : spec_(spec), value_(std::move(v))
    {
    }
};

/** Identity element of the group. */
GroupElement identity(const GroupSpec& spec);

/** Group operation; specs must be compatible. Abelian groups add, the others multiply. */
GroupElement op(const GroupElement& g, const GroupElement& h);

GroupElement inverse(const GroupElement& g);

/** g composed with itself k times (k may be negative or zero). */
GroupElement power(const GroupElement& g, long long k);

/**
 * Distance between two elements in the group's natural metric: 0/1 for the
 * discrete groups, |a-b| for R, circle distance for T, componentwise for
 * quaternions, max-abs entry difference for GL.
 */
double distance(const GroupElement& g, const GroupElement& h);

/** Equality within the group's eps tolerance (exact for the discrete groups). */
bool approx_equal(const GroupElement& g, const GroupElement& h);

bool is_identity(const GroupElement& g);

/**
 * p-norm of a real vector for p >= 1, the maximum norm when p is infinity.
 * Subadditive and absolutely homogeneous for every such p.
 */
double norm_p(const Eigen::VectorXd& v, double p);

} // namespace cech

#endif // CECH_GROUP_HPP
