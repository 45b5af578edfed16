#ifndef MORKIT_ANALYSIS_HPP
#define MORKIT_ANALYSIS_HPP

///
/// \file analysis.hpp
///
/// Transfer-function evaluation of full (sparse, implicit) and reduced
/// (dense) models, frequency sweeps, stability and timing reports.
///

#include <functional>
#include <string>
#include <vector>

#include "morkit/irka.hpp"
#include "morkit/system.hpp"

namespace morkit
{

struct TransferSample
{
    Complex s;
    MatrixXc G; ///< p x m
};

///
/// G(s) from one augmented factorization
///   [[s^2 M11 + s L11 + K11, K12], [K21, K22]] [V; X2] = [F1; F2],
/// evaluated as G = H1 V - H2 K22^{-1} (K21 V) + Dc, which equals
/// [H1, H2] [V; X2] + Da with Dc = Da + H2 K22^{-1} F2 assembled once (the
/// same arithmetic as the reduced Dr), so the constant part does not cancel
/// at every s. The fill-reducing ordering is computed once and reused.
///
class FullModelEvaluator
{
public:
    explicit FullModelEvaluator(const ValidatedSystem& vs);

    /// Throws SingularMatrixError when s is a system pole.
    MatrixXc operator()(Complex s) const;

private:
    const ValidatedSystem* m_vs;
    std::vector<Index> m_order;
    MatrixXc m_rhs;
    MatrixXc m_dc;
};

TransferSample eval_full(const ValidatedSystem& vs, Complex s);

/// Hr (s^2 Mr + s Lr + Kr)^{-1} Fr + Dr.
TransferSample eval_reduced(const ReducedSecondOrderModel& rom, Complex s);

/// dGr/ds = -Hr K(s)^{-1} (2 s Mr + Lr) K(s)^{-1} Fr with K(s) = s^2 Mr + s Lr + Kr.
MatrixXc eval_reduced_derivative(const ReducedSecondOrderModel& rom, Complex s);

/// Same formula on the dense Schur-complement realization.
MatrixXc eval_dense_schur(const DenseSchurSystem& d, Complex s);

/// max over points of sigma_max(G_full - G_schur) / sigma_max(G_full).
Real schur_equivalence_check(const ValidatedSystem& vs,
                             const std::vector<Complex>& points);

using TransferFunction = std::function<MatrixXc(Complex)>;

/// max over points of sigma_max(a(s) - b(s)) / max(sigma_max(a(s)), eps).
Real sampling_deviation(const TransferFunction& a, const TransferFunction& b,
                        const std::vector<Complex>& points);

///
/// Worst relative deviations of the tangential interpolation conditions over
/// the shifts of `interp`:
///   value       |G(a)b - Gr(a)b| / |G(a)b|
///   moment      |c^T (G(a) - Gr(a)) b| / |c^T G(a) b|
///   derivative  same for G', with G' of the full model by central
///               differences (step 1e-4 |a|) and Gr' in closed form
///
struct HermiteDeviation
{
    Real value      = 0;
    Real moment     = 0;
    Real derivative = 0;
};

HermiteDeviation hermite_deviation(const ValidatedSystem& vs,
                                   const ReducedSecondOrderModel& rom,
                                   const InterpolationData& interp);

/// n points log-spaced on [lo, hi], endpoints included.
std::vector<Real> log_grid(Real lo, Real hi, Index n);

enum class SampleFlag : int
{
    Ok            = 0,
    AbsoluteError = 1, ///< sigma_full was 0; rel_err holds the absolute error
    Singular      = 2, ///< evaluation failed at this frequency
};

struct FrequencySweep
{
    std::vector<Real> omegas;
    std::vector<Real> sigma_full;
    std::vector<Real> sigma_rom;
    std::vector<Real> rel_err;
    std::vector<SampleFlag> flags;

    /// omega,sigma_full,sigma_rom,rel_err,flag with 17 significant digits.
    std::string to_csv() const;
};

/// Samples at s = j omega. Samples are independent and may run on `threads`
/// workers; results are in input order either way.
FrequencySweep sweep(const ValidatedSystem& vs,
                     const ReducedSecondOrderModel& rom,
                     const std::vector<Real>& omegas, unsigned threads = 0);

/// Scalar channel (1-based input i, output o):
/// omega,abs_full,abs_rom,rel_err,flag.
std::string channel_csv(const ValidatedSystem& vs,
                        const ReducedSecondOrderModel& rom,
                        const std::vector<Real>& omegas, Index input,
                        Index output, unsigned threads = 0);

struct StabilityReport
{
    std::vector<Complex> eigenvalues;
    bool stable        = false;
    Real max_real_part = 0;
    /// False when Mr is singular and the pencil has infinite eigenvalues.
    bool determinate = true;
    std::string diagnostic;

    std::string format() const;
};

/// Eigenvalues of the companion pencil (A2, E2); stable iff all Re < 0.
StabilityReport stability_report(const ReducedSecondOrderModel& rom);

struct SpeedupReport
{
    Index full_dimension = 0;
    Index rom_dimension  = 0;
    Index repetitions    = 0;
    double full_seconds  = 0; ///< median per sweep
    double rom_seconds   = 0;

    double ratio() const
    {
        return rom_seconds > 0 ? full_seconds / rom_seconds : 0;
    }

    std::string format() const;
};

/// Median wall time of one full and one reduced sweep over `omegas` after a
/// discarded warm-up run. Requires repetitions >= 3.
SpeedupReport speedup_report(const ValidatedSystem& vs,
                             const ReducedSecondOrderModel& rom,
                             const std::vector<Real>& omegas, Index repetitions);

} // namespace morkit

#endif // MORKIT_ANALYSIS_HPP
