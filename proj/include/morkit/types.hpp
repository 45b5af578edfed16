#ifndef MORKIT_TYPES_HPP
#define MORKIT_TYPES_HPP

#include <complex>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace morkit
{

using Index   = Eigen::Index;
using Real    = double;
using Complex = std::complex<double>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXr = DenseMatrix<Real>;
using MatrixXc = DenseMatrix<Complex>;
using VectorXr = DenseVector<Real>;
using VectorXc = DenseVector<Complex>;

/// Compressed sparse column storage. Eigen's default layout is column-major
/// and compressed after assembly, which is the CSC layout the LU walks by
/// column.
template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>;

using SparseMatrixR = SparseMatrix<Real>;
using SparseMatrixC = SparseMatrix<Complex>;

} // namespace morkit

#endif // MORKIT_TYPES_HPP
