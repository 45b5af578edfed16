#include "doctest.h"

#include "../support/fixtures.hpp"
#include "morkit/sparse.hpp"

using namespace morkit;

namespace
{

std::vector<Triplet<Real>> t2x2()
{
    return {{0, 0, 5}, {1, 0, 1}, {0, 1, 1}, {1, 1, 2}};
}

} // namespace

TEST_CASE("assemble lays out a 2x2 matrix in CSC order")
{
    const SparseMatrixR a = assemble<Real>(2, 2, t2x2());
    CHECK(a.nonZeros() == 4);
    CHECK(a.outerIndexPtr()[0] == 0);
    CHECK(a.outerIndexPtr()[1] == 2);
    CHECK(a.outerIndexPtr()[2] == 4);
    CHECK(a.innerIndexPtr()[0] == 0);
    CHECK(a.innerIndexPtr()[1] == 1);
    CHECK(a.coeff(0, 0) == 5);
    CHECK(a.coeff(1, 0) == 1);
    CHECK(a.coeff(0, 1) == 1);
    CHECK(a.coeff(1, 1) == 2);
}

TEST_CASE("assemble sums duplicates")
{
    const std::vector<Triplet<Real>> t = {{0, 0, 1}, {0, 0, 2}};
    const SparseMatrixR a = assemble<Real>(2, 2, t);
    CHECK(a.nonZeros() == 1);
    CHECK(a.coeff(0, 0) == 3);
    CHECK(a.coeff(1, 1) == 0);
}

TEST_CASE("assemble rejects out-of-range indices")
{
    const std::vector<Triplet<Real>> t = {{1, 0, 1.0}};
    CHECK_THROWS_AS(assemble<Real>(1, 1, t), DimensionError);
    const std::vector<Triplet<Real>> neg = {{0, -1, 1.0}};
    CHECK_THROWS_AS(assemble<Real>(2, 2, neg), DimensionError);
}

TEST_CASE("matvec")
{
    const SparseMatrixR a = assemble<Real>(2, 2, t2x2());
    VectorXr e0(2);
    e0 << 1, 0;
    const VectorXr y = matvec(a, e0);
    CHECK(y(0) == 5);
    CHECK(y(1) == 1);

    SparseMatrixR id(3, 3);
    id.setIdentity();
    VectorXr x(3);
    x << 1.5, -2, 7;
    CHECK((matvec(id, x) - x).norm() == 0);

    const std::vector<Triplet<Real>> t = {{0, 1, 1}};
    const SparseMatrixR n = assemble<Real>(2, 2, t);
    const VectorXr z = matvec(n, e0, true);
    CHECK(z(0) == 0);
    CHECK(z(1) == 1);

    CHECK_THROWS_AS(matvec(a, VectorXr(VectorXr::Ones(3))), DimensionError);
}

TEST_CASE("matvec conjugates in the transposed product")
{
    const std::vector<Triplet<Complex>> t = {{0, 1, Complex(0, 1)}};
    const SparseMatrixC a = assemble<Complex>(2, 2, t);
    VectorXc x(2);
    x << 1, 0;
    const VectorXc y = matvec(a, x, true);
    CHECK(y(1) == Complex(0, -1));
}

TEST_CASE("shifted augmented matrix of S1")
{
    const auto s1 = morkit::testing::make_s1();
    const SparseMatrixC a0 = assemble_shifted_augmented(s1, 0.0, false);
    CHECK(a0.rows() == 2);
    CHECK(a0.coeff(0, 0) == Complex(5));
    CHECK(a0.coeff(0, 1) == Complex(1));
    CHECK(a0.coeff(1, 0) == Complex(1));
    CHECK(a0.coeff(1, 1) == Complex(2));

    const SparseMatrixC aj = assemble_shifted_augmented(s1, Complex(0, 1), false);
    CHECK(aj.coeff(0, 0) == Complex(4, 2));
    CHECK(aj.coeff(1, 1) == Complex(2));

    const SparseMatrixC at = assemble_shifted_augmented(s1, 0.0, true);
    CHECK(MatrixXc(at) == MatrixXc(a0));
}

TEST_CASE("transposed augmented matrix puts K21^T in the (1,2) block")
{
    auto s = morkit::testing::make_s1();
    s.K12  = morkit::testing::scalar_sparse(3);
    s.K21  = morkit::testing::scalar_sparse(7);
    s.L11  = morkit::testing::scalar_sparse(0);
    const Complex sigma(0.5, 2);
    const MatrixXc a  = MatrixXc(assemble_shifted_augmented(s, sigma, false));
    const MatrixXc at = MatrixXc(assemble_shifted_augmented(s, sigma, true));
    CHECK(at(0, 1) == Complex(7));
    CHECK(at(1, 0) == Complex(3));
    CHECK((at - a.transpose()).norm() == 0);
}

TEST_CASE("is_symmetric and max_abs")
{
    const SparseMatrixR a = assemble<Real>(2, 2, t2x2());
    CHECK(is_symmetric(a, 0.0));
    const std::vector<Triplet<Real>> t = {{0, 1, 1}};
    const SparseMatrixR n = assemble<Real>(2, 2, t);
    CHECK_FALSE(is_symmetric(n, 0.5));
    CHECK(max_abs(a) == 5);
}
