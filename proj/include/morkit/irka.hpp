#ifndef MORKIT_IRKA_HPP
#define MORKIT_IRKA_HPP

///
/// \file irka.hpp
///
/// Structure-preserving IRKA for second-order index-1 descriptor systems.
///
/// The projection bases are built from the sparse augmented solves
///
///   [ s^2 M11 + s L11 + K11  K12 ] [ v ]   [ F1 ]
///   [ K21                    K22 ] [ g ] = [ F2 ] b
///
/// (and the transposed system for the left basis), so the dense Schur
/// complement K11 - K12 K22^{-1} K21 is never formed. Reduced matrices are
/// assembled blockwise with K22^{-1} applied through the retained sparse
/// factorization of K22. Shifts and tangential directions are updated by a
/// first-order IRKA run on the companion form of the current reduced model.
///

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morkit/dense.hpp"
#include "morkit/system.hpp"

namespace morkit
{

///
/// Interpolation points with right (m-vector) and left (p-vector) tangential
/// directions. Complex shifts come in adjacent conjugate pairs whose
/// directions are conjugates of each other.
///
struct InterpolationData
{
    std::vector<Complex> shifts;
    std::vector<VectorXc> right;
    std::vector<VectorXc> left;

    Index size() const
    {
        return static_cast<Index>(shifts.size());
    }
};

/// True if every complex shift has its conjugate (with conjugate directions)
/// in the set, within `rtol` relative.
bool is_conjugate_closed(const InterpolationData& interp, Real rtol = 1e-10);

class ProjectionBasis
{
public:
    ProjectionBasis() = default;

    /// One-sided basis: W is V.
    explicit ProjectionBasis(MatrixXr v) : m_v(std::move(v)), m_one_sided(true)
    {
    }

    ProjectionBasis(MatrixXr v, MatrixXr w)
        : m_v(std::move(v)), m_w(std::move(w)), m_one_sided(false)
    {
    }

    const MatrixXr& V() const
    {
        return m_v;
    }

    const MatrixXr& W() const
    {
        return m_one_sided ? m_v : m_w;
    }

    bool one_sided() const
    {
        return m_one_sided;
    }

    Index columns() const
    {
        return m_v.cols();
    }

private:
    MatrixXr m_v;
    MatrixXr m_w;
    bool m_one_sided = true;
};

/// M x'' + L x' + K x = F u,  y = H x + D u.
struct ReducedSecondOrderModel
{
    MatrixXr M, L, K, F, H, D;

    Index order() const
    {
        return M.rows();
    }
};

///
/// First-order form of a second-order model:
///   E = [[0, M], [M, L]],  A = [[M, 0], [0, -K]],  B = [0; F],  C = [0, H].
///
struct CompanionPencil
{
    MatrixXr E, A, B, C;
};

struct IrkaConfig
{
    Index r              = 10;
    Index max_iter       = 20;
    Real shift_tol       = 1e-3;
    Index inner_max_iter = 20;
    Real inner_tol       = 1e-5;
    /// Unset: one-sided exactly when the system validates as symmetric.
    std::optional<bool> force_one_sided;
    std::uint64_t seed = 1;
    /// Initial shifts are log-spaced on [freq_lo, freq_hi].
    Real freq_lo = 10;
    Real freq_hi = 1e4;
    /// Worker threads for the independent shifted solves (0 or 1: serial).
    unsigned threads = 0;
};

/// Number of augmented solves performed (one per shift and side).
struct SolveCounters
{
    std::size_t right = 0;
    std::size_t left  = 0;
};

struct IterationRecord
{
    Index iteration = 0;
    Real metric     = 0;
    std::vector<Complex> shifts; ///< shifts used to build this iteration's basis
    Index basis_columns = 0;
    std::size_t right_solves = 0;
    std::size_t left_solves  = 0;
    Index inner_iterations   = 0;
    bool inner_converged     = false;
    double seconds_solve  = 0;
    double seconds_reduce = 0;
    double seconds_update = 0;
};

struct IterationTrace
{
    std::vector<IterationRecord> iterations;
    bool converged = false;
    bool one_sided = false;
    SolveCounters solves;
    std::vector<std::string> warnings;

    /// Plain-text log without wall times; byte-identical across reruns.
    std::string format() const;
    /// Per-iteration wall time per phase.
    std::string format_timings() const;
};

// --------------------------------------------------------------------------

///
/// r shifts log-spaced on [lo, hi] (the geometric mean when r = 1) with
/// seeded pseudo-random real unit directions.
///
InterpolationData initial_interpolation(Index r, Index m, Index p, Real lo,
                                        Real hi, std::uint64_t seed);

/// First n1 entries of the augmented solve with right-hand side [F1; F2] b.
VectorXc tangential_solve_right(const ValidatedSystem& vs, Complex sigma,
                                const VectorXc& b);

/// First n1 entries of the transposed augmented solve with right-hand side
/// [H1^T; H2^T] c.
VectorXc tangential_solve_left(const ValidatedSystem& vs, Complex sigma,
                               const VectorXc& c);

///
/// Real orthonormal bases from the tangential solves. A conjugate pair
/// contributes the real and imaginary parts of one solve; a real shift its
/// real solution. With `one_sided` no left solves are made and W = V.
/// A singular shifted matrix is retried once at sigma (1 + 1e-8) + 1e-8.
///
ProjectionBasis build_bases(const ValidatedSystem& vs,
                            const InterpolationData& interp, bool one_sided,
                            SolveCounters* counters = nullptr,
                            unsigned threads = 0);

///
/// Blockwise projection:
///   Mr = W^T M11 V,  Lr = W^T L11 V,
///   Kr = W^T K11 V - (W^T K12) K22^{-1} (K21 V),
///   Fr = W^T F1 - (W^T K12) K22^{-1} F2,
///   Hr = H1 V - H2 K22^{-1} (K21 V),
///   Dr = Da + H2 K22^{-1} F2.
///
ReducedSecondOrderModel reduce(const ValidatedSystem& vs,
                               const ProjectionBasis& basis);

CompanionPencil companion(const ReducedSecondOrderModel& rom);

///
/// Mirror images of the pencil eigenvalues with the residue directions
/// b_i = -(y_i^H B)^T and c_i = C z_i, made conjugate-closed and normalized.
///
InterpolationData mirror_interpolation(const MatrixXr& a, const MatrixXr& e,
                                       const MatrixXr& b, const MatrixXr& c);

struct FirstOrderIrkaResult
{
    MatrixXr E, A, B, C;
    /// Mirror data of the returned pencil.
    InterpolationData interpolation;
    Index iterations = 0;
    bool converged   = false;
};

/// Tangential IRKA on a dense first-order model E x' = A x + B u, y = C x.
FirstOrderIrkaResult irka_first_order(const MatrixXr& e, const MatrixXr& a,
                                      const MatrixXr& b, const MatrixXr& c,
                                      Index r, Index max_iter, Real tol,
                                      const InterpolationData& init);

struct InterpolationUpdate
{
    InterpolationData interpolation;
    Index inner_iterations = 0;
    bool inner_converged   = false;
};

///
/// Next outer interpolation data: first-order IRKA of order r on the 2r
/// companion pencil, warm-started from `warm_start` (the current outer data).
///
InterpolationUpdate update_interpolation(const CompanionPencil& pencil,
                                         const IrkaConfig& cfg,
                                         const InterpolationData& warm_start);

/// Same, started from initial_interpolation over the configured range.
InterpolationUpdate update_interpolation(const CompanionPencil& pencil,
                                         const IrkaConfig& cfg);

///
/// Both lists sorted by (real, imaginary) part, then
/// max_i |new_i - old_i| / max(|old_i|, eps). Throws on length mismatch.
///
Real convergence_metric(const std::vector<Complex>& old_shifts,
                        const std::vector<Complex>& new_shifts);

struct IrkaResult
{
    ReducedSecondOrderModel rom;
    ProjectionBasis basis;
    InterpolationData interpolation;
    IterationTrace trace;
};

/// The full outer iteration. Hitting max_iter is not an error; it is
/// reported through `trace.converged`.
IrkaResult irka_second_order_index1(const ValidatedSystem& vs,
                                    const IrkaConfig& cfg);

///
/// (r + n2)-dimensional index-1 realization of a reduced model:
/// blocks W^T M11 V, W^T L11 V, W^T K11 V, W^T K12, K21 V, K22,
/// W^T F1, F2, H1 V, H2, Da.
///
SecondOrderIndex1System back_to_index1(const ReducedSecondOrderModel& rom,
                                       const ValidatedSystem& vs,
                                       const ProjectionBasis& basis);

} // namespace morkit

#endif // MORKIT_IRKA_HPP
