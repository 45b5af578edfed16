#ifndef MORKIT_SPARSE_LU_HPP
#define MORKIT_SPARSE_LU_HPP

///
/// \file sparse_lu.hpp
///
/// Left-looking sparse LU with threshold partial pivoting.
///
/// Column k of the factors is obtained from a sparse triangular solve
/// L x = A(:, q[k]) whose nonzero pattern is found by a depth-first search
/// over the graph of L (Gilbert-Peierls). A pivot row is then chosen among
/// the rows not yet pivotal; the diagonal entry is kept whenever its
/// magnitude is at least `pivot_tol` times the largest candidate, which
/// preserves the fill-reducing symmetric preordering as far as stability
/// allows.
///
/// The factorization satisfies P A Q = L U with L unit lower triangular.
///

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/OrderingMethods>

#include "morkit/errors.hpp"
#include "morkit/types.hpp"

namespace morkit
{

enum class ColumnOrdering
{
    Natural, ///< eliminate columns in their given order
    Amd      ///< approximate minimum degree on the pattern of A + A^T
};

/// Fill-reducing column order for `a` (q[k] = k-th column to eliminate).
template <typename Scalar>
std::vector<Index> column_order(const SparseMatrix<Scalar>& a,
                                ColumnOrdering ordering)
{
    const Index n = a.cols();
    std::vector<Index> q(static_cast<std::size_t>(n));
    if (ordering == ColumnOrdering::Natural || n <= 2)
    {
        std::iota(q.begin(), q.end(), Index{0});
        return q;
    }
    // Pattern-only copy so that A + A^T never cancels numerically.
    SparseMatrixR pattern(a.rows(), a.cols());
    {
        std::vector<Eigen::Triplet<Real, int>> entries;
        entries.reserve(static_cast<std::size_t>(a.nonZeros()));
        for (Index j = 0; j < a.outerSize(); ++j)
        {
            for (typename SparseMatrix<Scalar>::InnerIterator it(a, j); it;
                 ++it)
            {
                entries.emplace_back(static_cast<int>(it.row()),
                                     static_cast<int>(j), 1.0);
            }
        }
        pattern.setFromTriplets(entries.begin(), entries.end());
    }
    Eigen::AMDOrdering<int> amd;
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
    amd(pattern, perm);
    for (Index k = 0; k < n; ++k)
    {
        q[static_cast<std::size_t>(k)] = perm.indices()(k);
    }
    return q;
}

template <typename Scalar>
class SparseLU
{
public:
    using VectorType = DenseVector<Scalar>;
    using MatrixType = DenseMatrix<Scalar>;

    SparseLU() = default;

    ///
    /// Factor the square matrix `a`. Throws SingularMatrixError naming the
    /// original column when no pivot exceeds n * eps * max|A(:, col)|.
    ///
    explicit SparseLU(const SparseMatrix<Scalar>& a, Real pivot_tol = 0.1,
                      ColumnOrdering ordering = ColumnOrdering::Amd)
    {
        factor(a, pivot_tol, column_order(a, ordering));
    }

    /// Factor with a precomputed column order (e.g. shared across matrices
    /// with one sparsity pattern).
    SparseLU(const SparseMatrix<Scalar>& a, Real pivot_tol,
             std::vector<Index> order)
    {
        factor(a, pivot_tol, std::move(order));
    }

    Index dimension() const
    {
        return m_n;
    }

    Index nonzeros() const
    {
        return static_cast<Index>(m_li.size() + m_ui.size());
    }

    /// Row permutation: row k of P A is row p[k] of A.
    const std::vector<Index>& row_permutation() const
    {
        return m_p;
    }

    /// Column permutation: column k of A Q is column q[k] of A.
    const std::vector<Index>& column_permutation() const
    {
        return m_q;
    }

    SparseMatrix<Scalar> lower() const
    {
        return to_sparse(m_lp, m_li, m_lx);
    }

    SparseMatrix<Scalar> upper() const
    {
        return to_sparse(m_up, m_ui, m_ux);
    }

    VectorType solve(const VectorType& rhs) const
    {
        check_rhs(rhs.size());
        VectorType x(m_n);
        for (Index k = 0; k < m_n; ++k)
        {
            x(k) = rhs(m_p[k]);
        }
        lower_solve(x);
        upper_solve(x);
        VectorType out(m_n);
        for (Index k = 0; k < m_n; ++k)
        {
            out(m_q[k]) = x(k);
        }
        return out;
    }

    /// Solves A^T x = rhs (plain transpose, no conjugation).
    VectorType solve_transposed(const VectorType& rhs) const
    {
        check_rhs(rhs.size());
        VectorType x(m_n);
        for (Index k = 0; k < m_n; ++k)
        {
            x(k) = rhs(m_q[k]);
        }
        upper_transposed_solve(x);
        lower_transposed_solve(x);
        VectorType out(m_n);
        for (Index k = 0; k < m_n; ++k)
        {
            out(m_p[k]) = x(k);
        }
        return out;
    }

    MatrixType solve(const MatrixType& rhs) const
    {
        MatrixType out(m_n, rhs.cols());
        for (Index j = 0; j < rhs.cols(); ++j)
        {
            out.col(j) = solve(VectorType(rhs.col(j)));
        }
        return out;
    }

    MatrixType solve_transposed(const MatrixType& rhs) const
    {
        MatrixType out(m_n, rhs.cols());
        for (Index j = 0; j < rhs.cols(); ++j)
        {
            out.col(j) = solve_transposed(VectorType(rhs.col(j)));
        }
        return out;
    }

private:
    void factor(const SparseMatrix<Scalar>& a_in, Real pivot_tol,
                std::vector<Index> order);

    void check_rhs(Index size) const
    {
        if (size != m_n)
        {
            throw DimensionError("SparseLU: right-hand side length " +
                                 std::to_string(size) + " != " +
                                 std::to_string(m_n));
        }
    }

    // L is unit lower triangular with the diagonal stored first per column.
    void lower_solve(VectorType& x) const
    {
        for (Index j = 0; j < m_n; ++j)
        {
            const Scalar xj = x(j);
            for (Index p = m_lp[j] + 1; p < m_lp[j + 1]; ++p)
            {
                x(m_li[p]) -= m_lx[p] * xj;
            }
        }
    }

    // U stores its diagonal last per column.
    void upper_solve(VectorType& x) const
    {
        for (Index j = m_n - 1; j >= 0; --j)
        {
            const Index diag = m_up[j + 1] - 1;
            x(j) /= m_ux[diag];
            const Scalar xj = x(j);
            for (Index p = m_up[j]; p < diag; ++p)
            {
                x(m_ui[p]) -= m_ux[p] * xj;
            }
        }
    }

    void upper_transposed_solve(VectorType& x) const
    {
        for (Index j = 0; j < m_n; ++j)
        {
            const Index diag = m_up[j + 1] - 1;
            Scalar acc       = x(j);
            for (Index p = m_up[j]; p < diag; ++p)
            {
                acc -= m_ux[p] * x(m_ui[p]);
            }
            x(j) = acc / m_ux[diag];
        }
    }

    void lower_transposed_solve(VectorType& x) const
    {
        for (Index j = m_n - 1; j >= 0; --j)
        {
            Scalar acc = x(j);
            for (Index p = m_lp[j] + 1; p < m_lp[j + 1]; ++p)
            {
                acc -= m_lx[p] * x(m_li[p]);
            }
            x(j) = acc;
        }
    }

    SparseMatrix<Scalar> to_sparse(const std::vector<Index>& colptr,
                                   const std::vector<Index>& rows,
                                   const std::vector<Scalar>& vals) const
    {
        std::vector<Eigen::Triplet<Scalar, int>> entries;
        entries.reserve(rows.size());
        for (Index j = 0; j < m_n; ++j)
        {
            for (Index p = colptr[j]; p < colptr[j + 1]; ++p)
            {
                entries.emplace_back(static_cast<int>(rows[p]),
                                     static_cast<int>(j), vals[p]);
            }
        }
        SparseMatrix<Scalar> s(m_n, m_n);
        s.setFromTriplets(entries.begin(), entries.end());
        s.makeCompressed();
        return s;
    }

    Index m_n = 0;
    std::vector<Index> m_p;
    std::vector<Index> m_q;
    std::vector<Index> m_lp, m_li;
    std::vector<Scalar> m_lx;
    std::vector<Index> m_up, m_ui;
    std::vector<Scalar> m_ux;
};

template <typename Scalar>
void SparseLU<Scalar>::factor(const SparseMatrix<Scalar>& a_in,
                              Real pivot_tol, std::vector<Index> order)
{
    if (a_in.rows() != a_in.cols())
    {
        throw DimensionError("SparseLU: matrix is not square");
    }
    if (!(pivot_tol > 0 && pivot_tol <= 1))
    {
        throw DimensionError("SparseLU: pivot_tol must lie in (0, 1]");
    }
    SparseMatrix<Scalar> a = a_in;
    a.makeCompressed();

    const Index n = a.rows();
    m_n           = n;
    if (static_cast<Index>(order.size()) != n)
    {
        throw DimensionError("SparseLU: column order has wrong length");
    }
    m_q = std::move(order);

    const int* ap     = a.outerIndexPtr();
    const int* ai     = a.innerIndexPtr();
    const Scalar* ax  = a.valuePtr();
    const Real eps    = std::numeric_limits<Real>::epsilon();

    std::vector<Index> pinv(static_cast<std::size_t>(n), -1);
    std::vector<Scalar> x(static_cast<std::size_t>(n), Scalar(0));
    std::vector<Index> pattern(static_cast<std::size_t>(n));
    std::vector<Index> stack(static_cast<std::size_t>(n));
    std::vector<Index> next_edge(static_cast<std::size_t>(n));
    std::vector<Index> mark(static_cast<std::size_t>(n), -1);

    m_lp.assign(static_cast<std::size_t>(n + 1), 0);
    m_up.assign(static_cast<std::size_t>(n + 1), 0);
    m_li.clear();
    m_lx.clear();
    m_ui.clear();
    m_ux.clear();
    const auto guess = static_cast<std::size_t>(4 * a.nonZeros() + n);
    m_li.reserve(guess);
    m_lx.reserve(guess);
    m_ui.reserve(guess);
    m_ux.reserve(guess);

    for (Index k = 0; k < n; ++k)
    {
        m_lp[k]         = static_cast<Index>(m_li.size());
        m_up[k]         = static_cast<Index>(m_ui.size());
        const Index col = m_q[k];

        // Nonzero pattern of L \ A(:, col) in topological order, written to
        // pattern[top..n).
        Index top = n;
        for (Index pa = ap[col]; pa < ap[col + 1]; ++pa)
        {
            const Index start = ai[pa];
            if (mark[start] == k)
            {
                continue;
            }
            Index head  = 0;
            stack[0]    = start;
            while (head >= 0)
            {
                const Index j    = stack[head];
                const Index jcol = pinv[j];
                if (mark[j] != k)
                {
                    mark[j]         = k;
                    next_edge[head] = jcol < 0 ? 0 : m_lp[jcol];
                }
                bool done       = true;
                const Index end = jcol < 0 ? 0 : m_lp[jcol + 1];
                for (Index p = next_edge[head]; p < end; ++p)
                {
                    const Index i = m_li[p];
                    if (mark[i] == k)
                    {
                        continue;
                    }
                    next_edge[head] = p + 1;
                    stack[++head]   = i;
                    done            = false;
                    break;
                }
                if (done)
                {
                    --head;
                    pattern[--top] = j;
                }
            }
        }

        // Numeric sparse triangular solve.
        Real col_max = 0;
        for (Index pa = ap[col]; pa < ap[col + 1]; ++pa)
        {
            x[ai[pa]] = ax[pa];
            col_max   = std::max(col_max, static_cast<Real>(std::abs(ax[pa])));
        }
        for (Index px = top; px < n; ++px)
        {
            const Index j    = pattern[px];
            const Index jcol = pinv[j];
            if (jcol < 0)
            {
                continue;
            }
            const Scalar xj = x[j];
            for (Index p = m_lp[jcol] + 1; p < m_lp[jcol + 1]; ++p)
            {
                x[m_li[p]] -= m_lx[p] * xj;
            }
        }

        // Pivot selection.
        Index ipiv   = -1;
        Real largest = -1;
        for (Index px = top; px < n; ++px)
        {
            const Index i = pattern[px];
            if (pinv[i] < 0)
            {
                const Real mag = std::abs(x[i]);
                if (mag > largest)
                {
                    largest = mag;
                    ipiv    = i;
                }
            }
            else
            {
                m_ui.push_back(pinv[i]);
                m_ux.push_back(x[i]);
            }
        }
        if (ipiv < 0 ||
            largest <= static_cast<Real>(n) * eps * col_max || col_max == 0)
        {
            for (Index px = top; px < n; ++px)
            {
                x[pattern[px]] = Scalar(0);
            }
            throw SingularMatrixError(
                "SparseLU: matrix is singular at column " + std::to_string(col),
                static_cast<long>(col));
        }
        if (col < n && pinv[col] < 0 && mark[col] == k &&
            std::abs(x[col]) >= pivot_tol * largest)
        {
            ipiv = col;
        }

        const Scalar pivot = x[ipiv];
        m_ui.push_back(k);
        m_ux.push_back(pivot);
        pinv[ipiv] = k;
        m_li.push_back(ipiv);
        m_lx.push_back(Scalar(1));
        for (Index px = top; px < n; ++px)
        {
            const Index i = pattern[px];
            if (pinv[i] < 0)
            {
                m_li.push_back(i);
                m_lx.push_back(x[i] / pivot);
            }
            x[i] = Scalar(0);
        }
    }
    m_lp[n] = static_cast<Index>(m_li.size());
    m_up[n] = static_cast<Index>(m_ui.size());

    for (auto& row : m_li)
    {
        row = pinv[row];
    }
    m_p.assign(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i)
    {
        m_p[pinv[i]] = i;
    }
}

/// Factor with threshold partial pivoting (default threshold 0.1).
template <typename Scalar>
SparseLU<Scalar> factor(const SparseMatrix<Scalar>& a, Real pivot_tol = 0.1,
                        ColumnOrdering ordering = ColumnOrdering::Amd)
{
    return SparseLU<Scalar>(a, pivot_tol, ordering);
}

using ComplexSparseLU = SparseLU<Complex>;
using RealSparseLU    = SparseLU<Real>;

} // namespace morkit

#endif // MORKIT_SPARSE_LU_HPP
