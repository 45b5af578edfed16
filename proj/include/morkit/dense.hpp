#ifndef MORKIT_DENSE_HPP
#define MORKIT_DENSE_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "morkit/errors.hpp"
#include "morkit/types.hpp"

namespace morkit
{

///
/// Orthonormal basis of range(V) by modified Gram-Schmidt with one
/// reorthogonalization pass. A column whose norm after projection falls
/// below 1e-10 of its original norm is dropped, so the result may have
/// fewer columns than `v`.
///
template <typename Derived>
DenseMatrix<typename Derived::Scalar>
orthonormalize(const Eigen::MatrixBase<Derived>& v)
{
    using Scalar = typename Derived::Scalar;
    if (v.cols() == 0)
    {
        throw DimensionError("orthonormalize: input has no columns");
    }
    if (v.rows() < v.cols())
    {
        throw DimensionError("orthonormalize: more columns than rows");
    }
    constexpr Real drop_ratio = 1e-10;

    DenseMatrix<Scalar> q(v.rows(), v.cols());
    Index kept = 0;
    for (Index j = 0; j < v.cols(); ++j)
    {
        DenseVector<Scalar> w = v.col(j);
        const Real original   = w.norm();
        if (original == 0)
        {
            continue;
        }
        for (int pass = 0; pass < 2; ++pass)
        {
            for (Index i = 0; i < kept; ++i)
            {
                w -= q.col(i) * q.col(i).dot(w);
            }
        }
        const Real remaining = w.norm();
        if (remaining < drop_ratio * original)
        {
            continue;
        }
        q.col(kept++) = w / remaining;
    }
    if (kept == 0)
    {
        throw DimensionError("orthonormalize: all columns are zero");
    }
    q.conservativeResize(Eigen::NoChange, kept);
    return q;
}

/// X with A X = B; throws SingularMatrixError for a numerically singular A.
template <typename DerivedA, typename DerivedB>
auto dense_solve(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b)
{
    using Scalar = typename DerivedA::Scalar;
    if (a.rows() != a.cols())
    {
        throw DimensionError("dense_solve: matrix is not square");
    }
    if (a.rows() != b.rows())
    {
        throw DimensionError("dense_solve: row count mismatch");
    }
    const DenseMatrix<Scalar> am = a;
    Eigen::FullPivLU<DenseMatrix<Scalar>> lu(am);
    const Real eps = std::numeric_limits<Real>::epsilon();
    lu.setThreshold(static_cast<Real>(am.rows()) * eps);
    if (!lu.isInvertible())
    {
        throw SingularMatrixError("dense_solve: matrix is singular",
                                  static_cast<long>(lu.rank()));
    }
    using ResultScalar = decltype(Scalar() * typename DerivedB::Scalar());
    DenseMatrix<ResultScalar> x = lu.solve(b.template cast<ResultScalar>());
    return x;
}

struct EigenTriplet
{
    Complex eigenvalue;
    VectorXc right; ///< A z = lambda E z, unit 2-norm
    VectorXc left;  ///< y^H A = lambda y^H E, unit 2-norm
};

///
/// All eigentriplets of the real pencil (A, E) with E nonsingular, computed
/// from the standard eigenproblems of E^{-1} A and its transpose. Left and
/// right vectors are paired by nearest eigenvalue (ties go to the smallest
/// index). Throws PencilSingularError if E is singular.
///
std::vector<EigenTriplet> eig_generalized(const MatrixXr& a,
                                          const MatrixXr& e);

/// Eigenvalues only.
std::vector<Complex> eigenvalues_generalized(const MatrixXr& a,
                                             const MatrixXr& e);

/// Largest singular value (one-sided Jacobi SVD); 0 for an empty matrix.
Real sigma_max(const MatrixXc& g);

} // namespace morkit

#endif // MORKIT_DENSE_HPP
