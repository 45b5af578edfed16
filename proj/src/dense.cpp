#include "morkit/dense.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace morkit
{

namespace
{

MatrixXr pencil_operator(const MatrixXr& a, const MatrixXr& e)
{
    if (a.rows() != a.cols() || e.rows() != e.cols() || a.rows() != e.rows())
    {
        throw DimensionError("eig_generalized: pencil blocks must be square "
                             "and of equal size");
    }
    try
    {
        return dense_solve(e, a);
    }
    catch (const SingularMatrixError&)
    {
        throw PencilSingularError("eig_generalized: E is singular");
    }
}

VectorXc unit(VectorXc v)
{
    const Real n = v.norm();
    return n > 0 ? VectorXc(v / n) : v;
}

} // namespace

std::vector<Complex> eigenvalues_generalized(const MatrixXr& a,
                                             const MatrixXr& e)
{
    const MatrixXr x = pencil_operator(a, e);
    Eigen::EigenSolver<MatrixXr> es(x, false);
    if (es.info() != Eigen::Success)
    {
        throw Error("eig_generalized: QR iteration did not converge");
    }
    std::vector<Complex> out(static_cast<std::size_t>(x.rows()));
    for (Index i = 0; i < x.rows(); ++i)
    {
        out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    }
    return out;
}

std::vector<EigenTriplet> eig_generalized(const MatrixXr& a,
                                          const MatrixXr& e)
{
    const MatrixXr x = pencil_operator(a, e);
    const Index n    = x.rows();

    Eigen::EigenSolver<MatrixXr> right(x, true);
    const MatrixXr xt = x.transpose();
    Eigen::EigenSolver<MatrixXr> left(xt, true);
    if (right.info() != Eigen::Success || left.info() != Eigen::Success)
    {
        throw Error("eig_generalized: QR iteration did not converge");
    }

    // u^T E^{-1} A = mu u^T, so g = E^{-T} u gives g^T A = mu g^T E and the
    // left eigenvector is y = conj(g).
    const MatrixXc et = e.transpose().cast<Complex>();
    Eigen::PartialPivLU<MatrixXc> et_lu(et);

    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<EigenTriplet> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
    {
        const Complex lambda = right.eigenvalues()(i);
        Index best           = -1;
        Real best_dist       = 0;
        for (Index j = 0; j < n; ++j)
        {
            if (used[static_cast<std::size_t>(j)])
            {
                continue;
            }
            const Real d = std::abs(left.eigenvalues()(j) - lambda);
            if (best < 0 || d < best_dist)
            {
                best      = j;
                best_dist = d;
            }
        }
        used[static_cast<std::size_t>(best)] = true;

        const VectorXc u = left.eigenvectors().col(best);
        const VectorXc g = et_lu.solve(u);
        out.push_back(EigenTriplet{lambda, unit(right.eigenvectors().col(i)),
                                   unit(g.conjugate())});
    }
    return out;
}

Real sigma_max(const MatrixXc& g)
{
    if (g.size() == 0)
    {
        return 0;
    }
    // One-sided (Hestenes) Jacobi on the columns of the taller orientation;
    // the singular values are the final column norms.
    MatrixXc u = g.rows() >= g.cols() ? MatrixXc(g) : MatrixXc(g.adjoint());
    const Index n  = u.cols();
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int sweep = 0; sweep < 60; ++sweep)
    {
        bool rotated = false;
        for (Index p = 0; p + 1 < n; ++p)
        {
            for (Index q = p + 1; q < n; ++q)
            {
                const Real alpha = u.col(p).squaredNorm();
                const Real beta  = u.col(q).squaredNorm();
                const Complex gamma = u.col(p).dot(u.col(q));
                const Real agamma   = std::abs(gamma);
                if (agamma <= eps * std::sqrt(alpha * beta) || agamma == 0)
                {
                    continue;
                }
                rotated = true;
                // Rotation zeroing the (p, q) entry of the 2x2 Gram block
                // [[alpha, gamma], [conj(gamma), beta]].
                const Complex phase = gamma / agamma;
                const Real zeta     = (beta - alpha) / (2 * agamma);
                const Real t = (zeta >= 0 ? 1.0 : -1.0) /
                               (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
                const Real c = 1 / std::sqrt(1 + t * t);
                const Real s = c * t;
                const VectorXc up = u.col(p);
                const VectorXc uq = u.col(q);
                u.col(p) = c * up - s * std::conj(phase) * uq;
                u.col(q) = s * phase * up + c * uq;
            }
        }
        if (!rotated)
        {
            break;
        }
    }
    Real best = 0;
    for (Index j = 0; j < n; ++j)
    {
        best = std::max(best, u.col(j).norm());
    }
    return best;
}

} // namespace morkit
