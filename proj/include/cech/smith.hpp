#ifndef CECH_SMITH_HPP
#define CECH_SMITH_HPP

#include <Eigen/Dense>
#include <vector>

#include "cech/errors.hpp"

namespace cech {

template <typename Int>
using DenseInt = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Int>
using VectorInt = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

/**
 * Smith decomposition U * A * V = D with U, V unimodular and D diagonal,
 * each nonzero diagonal entry positive and dividing the next. Vinv is the
 * inverse of V, kept alongside so kernel coordinates can be read off
 * without a separate inversion.
 */
template <typename Int>
struct SmithResult {
    DenseInt<Int> U, D, V, Vinv;
    int rank = 0;
    std::vector<Int> invariant_factors;
};

/**
 * Bring an integer matrix to Smith normal form by elementary row and column
 * operations, tracking the transforms. Works over any exact signed integer
 * scalar (fixed width or arbitrary precision).
 */
template <typename Int>
SmithResult<Int> smith_normal_form(const DenseInt<Int>& A)
{
    const Eigen::Index rows = A.rows(), cols = A.cols();
    SmithResult<Int> s;
    s.D = A;
    s.U = DenseInt<Int>::Identity(rows, rows);
    s.V = DenseInt<Int>::Identity(cols, cols);
    s.Vinv = DenseInt<Int>::Identity(cols, cols);

    auto abs_of = [](const Int& v) { return v < Int(0) ? Int(-v) : v; };

    auto row_axpy = [&](Eigen::Index dst, Eigen::Index src, const Int& q) {
        s.D.row(dst) -= q * s.D.row(src);
        s.U.row(dst) -= q * s.U.row(src);
    };
    auto col_axpy = [&](Eigen::Index dst, Eigen::Index src, const Int& q) {
        s.D.col(dst) -= q * s.D.col(src);
        s.V.col(dst) -= q * s.V.col(src);
        s.Vinv.row(src) += q * s.Vinv.row(dst);
    };

    const Eigen::Index steps = std::min(rows, cols);
    for (Eigen::Index t = 0; t < steps; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            Eigen::Index pi = -1, pj = -1;
            for (Eigen::Index i = t; i < rows; ++i) {
                for (Eigen::Index j = t; j < cols; ++j) {
                    if (s.D(i, j) == Int(0))
                        continue;
                    if (pi < 0 || abs_of(s.D(i, j)) < abs_of(s.D(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi < 0) {
                t = steps;  // trailing block is zero; done
                break;
            }
            if (pi != t) {
                s.D.row(pi).swap(s.D.row(t));
                s.U.row(pi).swap(s.U.row(t));
            }
            if (pj != t) {
                s.D.col(pj).swap(s.D.col(t));
                s.V.col(pj).swap(s.V.col(t));
                s.Vinv.row(pj).swap(s.Vinv.row(t));
            }
            bool reduced = true;
            for (Eigen::Index i = t + 1; i < rows; ++i) {
                if (s.D(i, t) != Int(0)) {
                    row_axpy(i, t, Int(s.D(i, t) / s.D(t, t)));
                    if (s.D(i, t) != Int(0))
                        reduced = false;  // remainder survives; re-pivot on it
                }
            }
            for (Eigen::Index j = t + 1; j < cols; ++j) {
                if (s.D(t, j) != Int(0)) {
                    col_axpy(j, t, Int(s.D(t, j) / s.D(t, t)));
                    if (s.D(t, j) != Int(0))
                        reduced = false;
                }
            }
            if (!reduced)
                continue;
            // Fold in any trailing entry the pivot does not divide yet.
            bool divides_all = true;
            for (Eigen::Index i = t + 1; i < rows && divides_all; ++i)
                for (Eigen::Index j = t + 1; j < cols && divides_all; ++j)
                    if (s.D(i, j) % s.D(t, t) != Int(0)) {
                        s.D.row(t) += s.D.row(i);
                        s.U.row(t) += s.U.row(i);
                        divides_all = false;
                    }
            if (divides_all)
                break;
        }
        if (t >= steps)
            break;
    }

    for (Eigen::Index t = 0; t < steps; ++t) {
        if (s.D(t, t) < Int(0)) {
            s.D.row(t) = -s.D.row(t);
            s.U.row(t) = -s.U.row(t);
        }
        if (s.D(t, t) != Int(0)) {
            ++s.rank;
            s.invariant_factors.push_back(s.D(t, t));
        }
    }
    return s;
}

/**
 * Outcome of solving A x = b over the integers. When unsolvable, the
 * certificate is an integer functional u with u * A = 0 mod `modulus`
 * entrywise (u * A = 0 exactly when modulus is 0) while u * b = `pairing`
 * is not 0 mod `modulus`; any candidate solution refutes it directly.
 */
template <typename Int>
struct LinearSolveResult {
    bool solvable = false;
    VectorInt<Int> x;
    VectorInt<Int> functional;
    Int modulus = Int(0);
    Int pairing = Int(0);
};

template <typename Int>
LinearSolveResult<Int> solve_integer_system(const DenseInt<Int>& A, const VectorInt<Int>& b)
{
    if (A.rows() != b.size())
        throw InputError("integer solve: right-hand side length mismatch");
    SmithResult<Int> s = smith_normal_form(A);
    VectorInt<Int> c = s.U * b;
    VectorInt<Int> y = VectorInt<Int>::Zero(A.cols());
    LinearSolveResult<Int> r;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        Int d = (i < std::min(A.rows(), A.cols())) ? s.D(i, i) : Int(0);
        if (d != Int(0)) {
            if (c[i] % d != Int(0)) {
                r.functional = s.U.row(i).transpose();
                r.modulus = d;
                r.pairing = c[i];
                return r;
            }
            y[i] = c[i] / d;
        } else if (c[i] != Int(0)) {
            r.functional = s.U.row(i).transpose();
            r.modulus = Int(0);
            r.pairing = c[i];
            return r;
        }
    }
    r.solvable = true;
    r.x = s.V * y;
    return r;
}

/** Solve A x = b modulo k (k >= 1) by augmenting with k times the identity. */
template <typename Int>
LinearSolveResult<Int> solve_integer_system_mod(const DenseInt<Int>& A, const VectorInt<Int>& b,
                                                const Int& k)
{
    if (k < Int(1))
        throw InputError("integer solve: modulus must be >= 1");
    DenseInt<Int> aug(A.rows(), A.cols() + A.rows());
    aug.leftCols(A.cols()) = A;
    aug.rightCols(A.rows()) = DenseInt<Int>::Identity(A.rows(), A.rows()) * k;
    LinearSolveResult<Int> full = solve_integer_system(aug, b);
    if (full.solvable)
        full.x = VectorInt<Int>(full.x.head(A.cols()));
    return full;
}

} // namespace cech

#endif // CECH_SMITH_HPP
