#ifndef MORKIT_SPARSE_HPP
#define MORKIT_SPARSE_HPP

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "morkit/errors.hpp"
#include "morkit/types.hpp"

namespace morkit
{

template <typename Scalar>
struct Triplet
{
    Index row;
    Index col;
    Scalar value;
};

///
/// Build a CSC matrix from (row, col, value) triplets. Duplicate positions
/// are summed; entries within each column come out sorted by row.
///
template <typename Scalar>
SparseMatrix<Scalar> assemble(Index nrows, Index ncols,
                              std::span<const Triplet<Scalar>> triplets)
{
    if (nrows < 0 || ncols < 0)
    {
        throw DimensionError("assemble: negative dimension");
    }
    std::vector<Eigen::Triplet<Scalar, int>> entries;
    entries.reserve(triplets.size());
    for (const auto& t : triplets)
    {
        if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
        {
            throw DimensionError("assemble: entry (" + std::to_string(t.row) +
                                 ", " + std::to_string(t.col) +
                                 ") outside " + std::to_string(nrows) + "x" +
                                 std::to_string(ncols));
        }
        entries.emplace_back(static_cast<int>(t.row), static_cast<int>(t.col),
                             t.value);
    }
    SparseMatrix<Scalar> a(nrows, ncols);
    a.setFromTriplets(entries.begin(), entries.end());
    a.makeCompressed();
    return a;
}

template <typename Scalar>
SparseMatrix<Scalar> assemble(Index nrows, Index ncols,
                              const std::vector<Triplet<Scalar>>& triplets)
{
    return assemble<Scalar>(nrows, ncols,
                            std::span<const Triplet<Scalar>>(triplets));
}

/// y = A x, or y = A^H x when `conjugate_transpose` is set.
template <typename Scalar, typename XScalar>
auto matvec(const SparseMatrix<Scalar>& a, const DenseVector<XScalar>& x,
            bool conjugate_transpose = false)
{
    using Result = decltype(Scalar() * XScalar());
    const Index in_size  = conjugate_transpose ? a.rows() : a.cols();
    const Index out_size = conjugate_transpose ? a.cols() : a.rows();
    if (x.size() != in_size)
    {
        throw DimensionError("matvec: vector length " +
                             std::to_string(x.size()) + " != " +
                             std::to_string(in_size));
    }
    DenseVector<Result> y = DenseVector<Result>::Zero(out_size);
    for (Index j = 0; j < a.outerSize(); ++j)
    {
        for (typename SparseMatrix<Scalar>::InnerIterator it(a, j); it; ++it)
        {
            if (conjugate_transpose)
            {
                y(j) += Eigen::numext::conj(it.value()) * x(it.row());
            }
            else
            {
                y(it.row()) += it.value() * x(j);
            }
        }
    }
    return y;
}

/// True iff max |A - A^T| <= tol entrywise.
template <typename Scalar>
bool is_symmetric(const SparseMatrix<Scalar>& a, Real tol)
{
    if (a.rows() != a.cols())
    {
        throw DimensionError("is_symmetric: matrix is not square");
    }
    const SparseMatrix<Scalar> at   = a.transpose();
    const SparseMatrix<Scalar> diff = a - at;
    for (Index k = 0; k < diff.nonZeros(); ++k)
    {
        if (std::abs(diff.valuePtr()[k]) > tol)
        {
            return false;
        }
    }
    return true;
}

/// Explicit real -> complex promotion.
inline SparseMatrixC to_complex(const SparseMatrixR& a)
{
    SparseMatrixC c = a.cast<Complex>();
    c.makeCompressed();
    return c;
}

/// Entrywise max |a_ij| over stored entries (0 for an empty matrix).
template <typename Scalar>
Real max_abs(const SparseMatrix<Scalar>& a)
{
    Real m = 0;
    for (Index k = 0; k < a.nonZeros(); ++k)
    {
        m = std::max(m, static_cast<Real>(std::abs(a.valuePtr()[k])));
    }
    return m;
}

///
/// The complex (n1+n2) x (n1+n2) matrix
///
///   [ sigma^2 M11 + sigma L11 + K11   K12 ]
///   [ K21                             K22 ]
///
/// or its plain transpose, assembled directly from the transposed blocks.
///
SparseMatrixC shifted_augmented(const SparseMatrixR& m11,
                                const SparseMatrixR& l11,
                                const SparseMatrixR& k11,
                                const SparseMatrixR& k12,
                                const SparseMatrixR& k21,
                                const SparseMatrixR& k22, Complex sigma,
                                bool transposed);

} // namespace morkit

#endif // MORKIT_SPARSE_HPP
