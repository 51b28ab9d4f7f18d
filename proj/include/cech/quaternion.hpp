#ifndef CECH_QUATERNION_HPP
#define CECH_QUATERNION_HPP

#include <cmath>
#include <ostream>

#include "cech/errors.hpp"

namespace cech {

/**
 * Real quaternion x = a + b*i + c*j + d*k with the Hamilton products
 * i*i = j*j = k*k = -1, i*j = -j*i = k, i*k = -k*i = -j, j*k = -k*j = i.
 *
 * Conjugation flips the sign of the imaginary part; the squared modulus is
 * x * conj(x) = a^2 + b^2 + c^2 + d^2, and the modulus is multiplicative.
 */
template <typename Scalar>
struct QuaternionT {
    Scalar a{0};  // real part
    Scalar b{0};  // i component
    Scalar c{0};  // j component
    Scalar d{0};  // k component

    QuaternionT() = default;
    QuaternionT(Scalar a_, Scalar b_, Scalar c_, Scalar d_) : a(a_), b(b_), c(c_), d(d_) {}

    static QuaternionT one() { return QuaternionT(1, 0, 0, 0); }

    QuaternionT conj() const { return QuaternionT(a, -b, -c, -d); }

    Scalar squared_modulus() const { return a * a + b * b + c * c + d * d; }

    Scalar modulus() const { return std::sqrt(squared_modulus()); }

    /** Multiplicative inverse conj(x) / |x|^2; requires x != 0. */
    QuaternionT inverse() const
    {
        Scalar q = squared_modulus();
        if (q == Scalar(0))
            throw InputError("quaternion inverse: zero quaternion");
        QuaternionT cj = conj();
        return QuaternionT(cj.a / q, cj.b / q, cj.c / q, cj.d / q);
    }
};

template <typename S>
QuaternionT<S> operator+(const QuaternionT<S>& x, const QuaternionT<S>& y)
{
    return QuaternionT<S>(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d);
}

template <typename S>
QuaternionT<S> operator-(const QuaternionT<S>& x, const QuaternionT<S>& y)
{
    return QuaternionT<S>(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d);
}

template <typename S>
QuaternionT<S> operator-(const QuaternionT<S>& x)
{
    return QuaternionT<S>(-x.a, -x.b, -x.c, -x.d);
}

template <typename S>
QuaternionT<S> operator*(const QuaternionT<S>& x, const QuaternionT<S>& y)
{
    return QuaternionT<S>(
        x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
        x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
        x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
        x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a);
}

template <typename S>
QuaternionT<S> operator*(S s, const QuaternionT<S>& x)
{
    return QuaternionT<S>(s * x.a, s * x.b, s * x.c, s * x.d);
}

template <typename S>
bool operator==(const QuaternionT<S>& x, const QuaternionT<S>& y)
{
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

/** Largest componentwise deviation between two quaternions. */
template <typename S>
S max_abs_diff(const QuaternionT<S>& x, const QuaternionT<S>& y)
{
    S m = std::abs(x.a - y.a);
    m = std::max(m, std::abs(x.b - y.b));
    m = std::max(m, std::abs(x.c - y.c));
    m = std::max(m, std::abs(x.d - y.d));
    return m;
}

template <typename S>
std::ostream& operator<<(std::ostream& os, const QuaternionT<S>& x)
{
    os << "(" << x.a << " + " << x.b << "i + " << x.c << "j + " << x.d << "k)";
    return os;
}

using Quaternion = QuaternionT<double>;

} // namespace cech

#endif // CECH_QUATERNION_HPP
