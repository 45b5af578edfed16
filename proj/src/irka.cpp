#include "morkit/irka.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>

#include "morkit/io.hpp"
#include "morkit/random.hpp"
#include "parallel.hpp"

namespace morkit
{

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr Real real_shift_rtol = 1e-12;

bool is_real_shift(Complex s)
{
    return std::abs(s.imag()) <= real_shift_rtol * std::abs(s);
}

Complex perturbed(Complex s)
{
    return s * (1.0 + 1e-8) + 1e-8;
}

// Rotates v so that its largest entry is real and positive.
VectorXc align_phase(const VectorXc& v)
{
    Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    const Real mag = std::abs(v(k));
    if (mag == 0)
    {
        return v;
    }
    return v * (std::conj(v(k)) / mag);
}

VectorXc unit_or_first(const VectorXc& v)
{
    const Real n = v.norm();
    if (n > 0 && std::isfinite(n))
    {
        return v / n;
    }
    VectorXc e = VectorXc::Zero(v.size());
    e(0)       = 1;
    return e;
}

// Shifts that own a solve: real ones and the upper member of each pair.
std::vector<Index> solve_owners(const InterpolationData& interp)
{
    std::vector<Index> owners;
    for (Index i = 0; i < interp.size(); ++i)
    {
        const Complex s = interp.shifts[static_cast<std::size_t>(i)];
        if (is_real_shift(s) || s.imag() > 0)
        {
            owners.push_back(i);
        }
    }
    return owners;
}

// Real columns spanning the solutions: Re/Im for a conjugate pair, Re for a
// real shift.
MatrixXr realify(const InterpolationData& interp,
                 const std::vector<Index>& owners,
                 const std::vector<VectorXc>& solutions, Index rows)
{
    Index cols = 0;
    for (Index i : owners)
    {
        cols += is_real_shift(interp.shifts[static_cast<std::size_t>(i)]) ? 1 : 2;
    }
    MatrixXr out(rows, cols);
    Index c = 0;
    for (std::size_t k = 0; k < owners.size(); ++k)
    {
        const VectorXc& x = solutions[k];
        out.col(c++)      = x.real();
        if (!is_real_shift(interp.shifts[static_cast<std::size_t>(owners[k])]))
        {
            out.col(c++) = x.imag();
        }
    }
    return out;
}

std::pair<MatrixXr, MatrixXr> match_columns(MatrixXr v, MatrixXr w)
{
    const Index k = std::min(v.cols(), w.cols());
    v.conservativeResize(Eigen::NoChange, k);
    w.conservativeResize(Eigen::NoChange, k);
    return {std::move(v), std::move(w)};
}

ComplexSparseLU factor_at(const SecondOrderIndex1System& s, Complex sigma,
                          bool transposed, const std::vector<Index>* order)
{
    const SparseMatrixC a = assemble_shifted_augmented(s, sigma, transposed);
    try
    {
        if (order != nullptr)
        {
            return ComplexSparseLU(a, 0.1, *order);
        }
        return ComplexSparseLU(a);
    }
    catch (const SingularMatrixError&)
    {
        char buf[96];
        std::snprintf(buf, sizeof buf, "shifted matrix singular at %.6g%+.6gi",
                      sigma.real(), sigma.imag());
        throw ShiftCollisionError(buf);
    }
}

ComplexSparseLU factor_with_retry(const SecondOrderIndex1System& s,
                                  Complex sigma,
                                  const std::vector<Index>& order)
{
    try
    {
        return factor_at(s, sigma, false, &order);
    }
    catch (const ShiftCollisionError&)
    {
        return factor_at(s, perturbed(sigma), false, &order);
    }
}

VectorXc stacked(const MatrixXr& top, const MatrixXr& bottom, const VectorXc& d)
{
    VectorXc rhs(top.rows() + bottom.rows());
    rhs.head(top.rows())    = top * d;
    rhs.tail(bottom.rows()) = bottom * d;
    return rhs;
}

} // namespace

bool is_conjugate_closed(const InterpolationData& interp, Real rtol)
{
    const Index r = interp.size();
    if (static_cast<Index>(interp.right.size()) != r ||
        static_cast<Index>(interp.left.size()) != r)
    {
        return false;
    }
    std::vector<bool> used(static_cast<std::size_t>(r), false);
    for (Index i = 0; i < r; ++i)
    {
        const auto ui = static_cast<std::size_t>(i);
        const Complex s = interp.shifts[ui];
        if (is_real_shift(s) || used[ui])
        {
            continue;
        }
        bool found = false;
        for (Index j = 0; j < r && !found; ++j)
        {
            const auto uj = static_cast<std::size_t>(j);
            if (j == i || used[uj])
            {
                continue;
            }
            const Real scale = std::abs(s);
            if (std::abs(interp.shifts[uj] - std::conj(s)) > rtol * scale)
            {
                continue;
            }
            const Real db = (interp.right[uj] - interp.right[ui].conjugate()).norm();
            const Real dc = (interp.left[uj] - interp.left[ui].conjugate()).norm();
            if (db <= rtol * std::max<Real>(1, interp.right[ui].norm()) &&
                dc <= rtol * std::max<Real>(1, interp.left[ui].norm()))
            {
                used[ui] = used[uj] = true;
                found               = true;
            }
        }
        if (!found)
        {
            return false;
        }
    }
    return true;
}

InterpolationData initial_interpolation(Index r, Index m, Index p, Real lo,
                                        Real hi, std::uint64_t seed)
{
    if (r < 1 || m < 1 || p < 1)
    {
        throw DimensionError("initial_interpolation: r, m, p must be >= 1");
    }
    if (!(lo > 0) || !(hi > lo) || !std::isfinite(hi))
    {
        throw DimensionError("initial_interpolation: need 0 < lo < hi");
    }
    InterpolationData d;
    Rng rng(seed);
    const Real llo = std::log10(lo);
    const Real lhi = std::log10(hi);
    for (Index i = 0; i < r; ++i)
    {
        const Real t = r == 1 ? 0.5 : static_cast<Real>(i) / static_cast<Real>(r - 1);
        Real s = std::pow(10.0, llo + t * (lhi - llo));
        if (i == 0 && r > 1) s = lo;
        if (i == r - 1 && r > 1) s = hi;
        d.shifts.emplace_back(s, 0.0);

        VectorXc b(m), c(p);
        for (Index k = 0; k < m; ++k)
        {
            b(k) = rng.normal();
        }
        for (Index k = 0; k < p; ++k)
        {
            c(k) = rng.normal();
        }
        d.right.push_back(unit_or_first(b));
        d.left.push_back(unit_or_first(c));
    }
    return d;
}

VectorXc tangential_solve_right(const ValidatedSystem& vs, Complex sigma,
                                const VectorXc& b)
{
    const auto& s = vs.system();
    if (b.size() != s.F1.cols())
    {
        throw DimensionError("tangential_solve_right: direction length");
    }
    const ComplexSparseLU lu = factor_at(s, sigma, false, nullptr);
    return lu.solve(stacked(s.F1, s.F2, b)).head(s.K11.rows());
}

VectorXc tangential_solve_left(const ValidatedSystem& vs, Complex sigma,
                               const VectorXc& c)
{
    const auto& s = vs.system();
    if (c.size() != s.H1.rows())
    {
        throw DimensionError("tangential_solve_left: direction length");
    }
    const ComplexSparseLU lu = factor_at(s, sigma, true, nullptr);
    const MatrixXr h1t = s.H1.transpose();
    const MatrixXr h2t = s.H2.transpose();
    return lu.solve(stacked(h1t, h2t, c)).head(s.K11.rows());
}

ProjectionBasis build_bases(const ValidatedSystem& vs,
                            const InterpolationData& interp, bool one_sided,
                            SolveCounters* counters, unsigned threads)
{
    const auto& s  = vs.system();
    const Index n1 = s.K11.rows();
    if (interp.size() == 0 ||
        static_cast<Index>(interp.right.size()) != interp.size() ||
        (!one_sided && static_cast<Index>(interp.left.size()) != interp.size()))
    {
        throw DimensionError("build_bases: incomplete interpolation data");
    }

    const std::vector<Index> owners = solve_owners(interp);
    // One ordering serves every shift: the pattern does not depend on sigma.
    const std::vector<Index> order = column_order(
        assemble_shifted_augmented(s, Complex(1.0, 1.0), false),
        ColumnOrdering::Amd);
    const MatrixXr h1t = s.H1.transpose();
    const MatrixXr h2t = s.H2.transpose();

    std::vector<VectorXc> right(owners.size());
    std::vector<VectorXc> left(owners.size());
    detail::parallel_for(owners.size(), threads, [&](std::size_t k) {
        const auto i = static_cast<std::size_t>(owners[k]);
        const ComplexSparseLU lu = factor_with_retry(s, interp.shifts[i], order);
        right[k] = lu.solve(stacked(s.F1, s.F2, interp.right[i])).head(n1);
        if (!one_sided)
        {
            left[k] =
                lu.solve_transposed(stacked(h1t, h2t, interp.left[i])).head(n1);
        }
    });
    if (counters != nullptr)
    {
        counters->right += owners.size();
        if (!one_sided)
        {
            counters->left += owners.size();
        }
    }

    MatrixXr v = orthonormalize(realify(interp, owners, right, n1));
    if (one_sided)
    {
        return ProjectionBasis(std::move(v));
    }
    MatrixXr w = orthonormalize(realify(interp, owners, left, n1));
    auto [vv, ww] = match_columns(std::move(v), std::move(w));
    return ProjectionBasis(std::move(vv), std::move(ww));
}

ReducedSecondOrderModel reduce(const ValidatedSystem& vs,
                               const ProjectionBasis& basis)
{
    const auto& s     = vs.system();
    const auto& k22   = vs.k22_lu();
    const MatrixXr& v = basis.V();
    const MatrixXr& w = basis.W();
    if (v.rows() != s.K11.rows() || w.rows() != s.K11.rows() ||
        v.cols() != w.cols())
    {
        throw DimensionError("reduce: basis does not match the system");
    }

    const MatrixXr k21v  = s.K21 * v;                       // n2 x r
    const MatrixXr wk12t = s.K12.transpose() * w;           // (W^T K12)^T
    const MatrixXr x21   = k22.solve(k21v);                 // K22^{-1} K21 V
    const MatrixXr xf    = k22.solve(s.F2);                 // K22^{-1} F2

    ReducedSecondOrderModel rom;
    rom.M = w.transpose() * (s.M11 * v);
    rom.L = w.transpose() * (s.L11 * v);
    rom.K = w.transpose() * (s.K11 * v) - wk12t.transpose() * x21;
    rom.F = w.transpose() * s.F1 - wk12t.transpose() * xf;
    rom.H = s.H1 * v - s.H2 * x21;
    rom.D = feedthrough(vs);
    return rom;
}

CompanionPencil companion(const ReducedSecondOrderModel& rom)
{
    const Index r = rom.order();
    const Index m = rom.F.cols();
    const Index p = rom.H.rows();
    CompanionPencil c;
    c.E = MatrixXr::Zero(2 * r, 2 * r);
    c.E.topRightCorner(r, r)    = rom.M;
    c.E.bottomLeftCorner(r, r)  = rom.M;
    c.E.bottomRightCorner(r, r) = rom.L;
    c.A = MatrixXr::Zero(2 * r, 2 * r);
    c.A.topLeftCorner(r, r)     = rom.M;
    c.A.bottomRightCorner(r, r) = -rom.K;
    c.B = MatrixXr::Zero(2 * r, m);
    c.B.bottomRows(r) = rom.F;
    c.C = MatrixXr::Zero(p, 2 * r);
    c.C.rightCols(r) = rom.H;
    return c;
}

InterpolationData mirror_interpolation(const MatrixXr& a, const MatrixXr& e,
                                       const MatrixXr& b, const MatrixXr& c)
{
    const std::vector<EigenTriplet> trip = eig_generalized(a, e);
    const std::size_t n = trip.size();

    struct Candidate
    {
        Complex shift;
        VectorXc right, left;
    };
    std::vector<Candidate> cand;
    cand.reserve(n);
    for (const auto& t : trip)
    {
        // Residue directions of C (sE - A)^{-1} B at lambda.
        const VectorXc bi = -(b.transpose() * t.left.conjugate());
        const VectorXc ci = c * t.right;
        cand.push_back({-t.eigenvalue, bi, ci});
    }

    std::vector<bool> used(n, false);
    std::vector<Candidate> masters; // real shifts and upper pair members
    for (std::size_t i = 0; i < n; ++i)
    {
        if (used[i])
        {
            continue;
        }
        Candidate ci = cand[i];
        used[i]      = true;
        const Real scale = std::abs(ci.shift);
        const bool real  = std::abs(ci.shift.imag()) <= 1e-10 * scale;
        if (!real)
        {
            // Partner: nearest unused shift to conj(shift).
            std::size_t best = n;
            Real best_dist   = std::numeric_limits<Real>::infinity();
            for (std::size_t j = 0; j < n; ++j)
            {
                if (used[j])
                {
                    continue;
                }
                const Real d = std::abs(cand[j].shift - std::conj(ci.shift));
                if (d < best_dist)
                {
                    best      = j;
                    best_dist = d;
                }
            }
            if (best < n && best_dist <= 1e-6 * scale)
            {
                used[best] = true;
                Candidate cj = cand[best];
                if (ci.shift.imag() < 0)
                {
                    std::swap(ci, cj);
                }
                ci.shift = 0.5 * (ci.shift + std::conj(cj.shift));
                ci.right = unit_or_first(ci.right);
                ci.left  = unit_or_first(ci.left);
                masters.push_back(std::move(ci));
                continue;
            }
        }
        // Real (or unpaired) eigenvalue: real shift, real directions.
        ci.shift = Complex(ci.shift.real(), 0.0);
        ci.right = unit_or_first(VectorXc(align_phase(ci.right).real().cast<Complex>()));
        ci.left  = unit_or_first(VectorXc(align_phase(ci.left).real().cast<Complex>()));
        masters.push_back(std::move(ci));
    }

    std::stable_sort(masters.begin(), masters.end(),
                     [](const Candidate& x, const Candidate& y) {
                         if (x.shift.real() != y.shift.real())
                         {
                             return x.shift.real() < y.shift.real();
                         }
                         return x.shift.imag() < y.shift.imag();
                     });

    InterpolationData out;
    for (const auto& m : masters)
    {
        out.shifts.push_back(m.shift);
        out.right.push_back(m.right);
        out.left.push_back(m.left);
        if (m.shift.imag() != 0)
        {
            out.shifts.push_back(std::conj(m.shift));
            out.right.push_back(m.right.conjugate());
            out.left.push_back(m.left.conjugate());
        }
    }
    return out;
}

namespace
{

VectorXc dense_shift_solve(const MatrixXr& e, const MatrixXr& a, Complex sigma,
                           const VectorXc& rhs, bool transposed)
{
    MatrixXc k = sigma * e.cast<Complex>() - a.cast<Complex>();
    if (transposed)
    {
        k.transposeInPlace();
    }
    try
    {
        return dense_solve(k, rhs);
    }
    catch (const SingularMatrixError&)
    {
        MatrixXc kp = perturbed(sigma) * e.cast<Complex>() - a.cast<Complex>();
        if (transposed)
        {
            kp.transposeInPlace();
        }
        try
        {
            return dense_solve(kp, rhs);
        }
        catch (const SingularMatrixError&)
        {
            throw ShiftCollisionError(
                "irka_first_order: shifted pencil singular after retry");
        }
    }
}

struct FirstOrderStep
{
    MatrixXr E, A, B, C;
    InterpolationData next;
};

FirstOrderStep first_order_step(const MatrixXr& e, const MatrixXr& a,
                                const MatrixXr& b, const MatrixXr& c,
                                const InterpolationData& cur)
{
    const std::vector<Index> owners = solve_owners(cur);
    std::vector<VectorXc> vs(owners.size());
    std::vector<VectorXc> ws(owners.size());
    const MatrixXr ct = c.transpose();
    for (std::size_t k = 0; k < owners.size(); ++k)
    {
        const auto i    = static_cast<std::size_t>(owners[k]);
        const Complex s = cur.shifts[i];
        vs[k] = dense_shift_solve(e, a, s, b * cur.right[i], false);
        ws[k] = dense_shift_solve(e, a, s, ct * cur.left[i], true);
    }
    auto [v, w] = match_columns(orthonormalize(realify(cur, owners, vs, e.rows())),
                                orthonormalize(realify(cur, owners, ws, e.rows())));
    FirstOrderStep step;
    step.E    = w.transpose() * e * v;
    step.A    = w.transpose() * a * v;
    step.B    = w.transpose() * b;
    step.C    = c * v;
    step.next = mirror_interpolation(step.A, step.E, step.B, step.C);
    return step;
}

InterpolationData perturbed(const InterpolationData& d)
{
    InterpolationData out = d;
    for (auto& s : out.shifts)
    {
        s = perturbed(s);
    }
    return out;
}

} // namespace

FirstOrderIrkaResult irka_first_order(const MatrixXr& e, const MatrixXr& a,
                                      const MatrixXr& b, const MatrixXr& c,
                                      Index r, Index max_iter, Real tol,
                                      const InterpolationData& init)
{
    const Index n = e.rows();
    if (e.cols() != n || a.rows() != n || a.cols() != n || b.rows() != n ||
        c.cols() != n)
    {
        throw DimensionError("irka_first_order: inconsistent dimensions");
    }
    if (r < 1 || r > n || init.size() != r)
    {
        throw DimensionError("irka_first_order: need 1 <= r <= n and r "
                             "initial shifts");
    }

    FirstOrderIrkaResult result;
    InterpolationData cur = init;
    for (Index it = 1; it <= std::max<Index>(max_iter, 1); ++it)
    {
        FirstOrderStep step;
        try
        {
            step = first_order_step(e, a, b, c, cur);
        }
        catch (const PencilSingularError&)
        {
            step = first_order_step(e, a, b, c, perturbed(cur));
        }
        const Real metric =
            step.next.size() == cur.size()
                ? convergence_metric(cur.shifts, step.next.shifts)
                : std::numeric_limits<Real>::infinity();
        result.E             = std::move(step.E);
        result.A             = std::move(step.A);
        result.B             = std::move(step.B);
        result.C             = std::move(step.C);
        result.interpolation = step.next;
        result.iterations    = it;
        cur                  = std::move(step.next);
        if (metric <= tol)
        {
            result.converged = true;
            break;
        }
    }
    return result;
}

InterpolationUpdate update_interpolation(const CompanionPencil& pencil,
                                         const IrkaConfig& cfg,
                                         const InterpolationData& warm_start)
{
    const Index r = pencil.E.rows() / 2;
    InterpolationData init = warm_start;
    if (init.size() != r)
    {
        init = initial_interpolation(r, pencil.B.cols(), pencil.C.rows(),
                                     cfg.freq_lo, cfg.freq_hi, cfg.seed);
    }
    const FirstOrderIrkaResult inner =
        irka_first_order(pencil.E, pencil.A, pencil.B, pencil.C, r,
                         cfg.inner_max_iter, cfg.inner_tol, init);
    return {inner.interpolation, inner.iterations, inner.converged};
}

InterpolationUpdate update_interpolation(const CompanionPencil& pencil,
                                         const IrkaConfig& cfg)
{
    return update_interpolation(pencil, cfg, InterpolationData{});
}

Real convergence_metric(const std::vector<Complex>& old_shifts,
                        const std::vector<Complex>& new_shifts)
{
    if (old_shifts.size() != new_shifts.size())
    {
        throw DimensionError("convergence_metric: shift lists differ in length");
    }
    auto by_parts = [](Complex x, Complex y) {
        if (x.real() != y.real())
        {
            return x.real() < y.real();
        }
        return x.imag() < y.imag();
    };
    std::vector<Complex> a = old_shifts;
    std::vector<Complex> b = new_shifts;
    std::sort(a.begin(), a.end(), by_parts);
    std::sort(b.begin(), b.end(), by_parts);
    const Real eps = std::numeric_limits<Real>::epsilon();
    Real worst     = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        worst = std::max(worst, std::abs(b[i] - a[i]) / std::max(std::abs(a[i]), eps));
    }
    return worst;
}

IrkaResult irka_second_order_index1(const ValidatedSystem& vs,
                                    const IrkaConfig& cfg)
{
    const SystemDimensions d = vs.dimensions();
    if (cfg.r < 1 || cfg.r > d.n1)
    {
        throw DimensionError("irka: reduced order r must satisfy 1 <= r <= n1");
    }
    if (!(cfg.shift_tol > 0) || !(cfg.inner_tol > 0))
    {
        throw DimensionError("irka: tolerances must be positive");
    }

    IrkaResult res;
    IterationTrace& trace = res.trace;
    trace.one_sided = cfg.force_one_sided.value_or(vs.report().symmetric);

    InterpolationData interp =
        initial_interpolation(cfg.r, d.m, d.p, cfg.freq_lo, cfg.freq_hi, cfg.seed);

    for (Index it = 1; it <= cfg.max_iter; ++it)
    {
        IterationRecord rec;
        rec.iteration = it;
        rec.shifts    = interp.shifts;

        SolveCounters counters;
        auto t0 = Clock::now();
        const ProjectionBasis basis =
            build_bases(vs, interp, trace.one_sided, &counters, cfg.threads);
        rec.seconds_solve = seconds_since(t0);
        rec.basis_columns = basis.columns();
        rec.right_solves  = counters.right;
        rec.left_solves   = counters.left;
        trace.solves.right += counters.right;
        trace.solves.left += counters.left;
        if (basis.columns() < interp.size())
        {
            trace.warnings.push_back(
                "iteration " + std::to_string(it) + ": basis rank " +
                std::to_string(basis.columns()) + " < " +
                std::to_string(interp.size()) + ", reduced order shrinks");
        }

        t0 = Clock::now();
        const ReducedSecondOrderModel rom = reduce(vs, basis);
        rec.seconds_reduce = seconds_since(t0);

        t0 = Clock::now();
        const InterpolationUpdate upd = update_interpolation(companion(rom), cfg, interp);
        rec.seconds_update   = seconds_since(t0);
        rec.inner_iterations = upd.inner_iterations;
        rec.inner_converged  = upd.inner_converged;

        rec.metric = upd.interpolation.size() == interp.size()
                         ? convergence_metric(interp.shifts, upd.interpolation.shifts)
                         : std::numeric_limits<Real>::infinity();
        interp = upd.interpolation;
        trace.iterations.push_back(std::move(rec));
        if (trace.iterations.back().metric <= cfg.shift_tol)
        {
            trace.converged = true;
            break;
        }
    }

    SolveCounters counters;
    res.basis = build_bases(vs, interp, trace.one_sided, &counters, cfg.threads);
    trace.solves.right += counters.right;
    trace.solves.left += counters.left;
    res.rom           = reduce(vs, res.basis);
    res.interpolation = std::move(interp);
    return res;
}

SecondOrderIndex1System back_to_index1(const ReducedSecondOrderModel& rom,
                                       const ValidatedSystem& vs,
                                       const ProjectionBasis& basis)
{
    const auto& s     = vs.system();
    const MatrixXr& v = basis.V();
    const MatrixXr& w = basis.W();
    if (v.rows() != s.K11.rows() || v.cols() != rom.order() ||
        w.cols() != rom.order())
    {
        throw DimensionError("back_to_index1: basis does not match model");
    }
    auto sparse = [](const MatrixXr& m) {
        SparseMatrixR out = m.sparseView();
        out.makeCompressed();
        return out;
    };
    SecondOrderIndex1System out;
    out.M11 = sparse(w.transpose() * (s.M11 * v));
    out.L11 = sparse(w.transpose() * (s.L11 * v));
    out.K11 = sparse(w.transpose() * (s.K11 * v));
    out.K12 = sparse(MatrixXr(s.K12.transpose() * w).transpose());
    out.K21 = sparse(s.K21 * v);
    out.K22 = s.K22;
    out.F1  = w.transpose() * s.F1;
    out.F2  = s.F2;
    out.H1  = s.H1 * v;
    out.H2  = s.H2;
    out.Da  = s.Da;
    return out;
}

// --------------------------------------------------------------------------

std::string IterationTrace::format() const
{
    std::string out = "# irka trace\n";
    out += "one_sided = " + std::to_string(one_sided ? 1 : 0) + "\n";
    for (const auto& rec : iterations)
    {
        out += "iteration " + std::to_string(rec.iteration) + " metric " +
               format_real(rec.metric) + " columns " +
               std::to_string(rec.basis_columns) + " right_solves " +
               std::to_string(rec.right_solves) + " left_solves " +
               std::to_string(rec.left_solves) + " inner_iterations " +
               std::to_string(rec.inner_iterations) + " inner_converged " +
               std::to_string(rec.inner_converged ? 1 : 0) + "\n";
        for (const Complex& s : rec.shifts)
        {
            out += "  shift " + format_real(s.real()) + " " +
                   format_real(s.imag()) + "\n";
        }
    }
    for (const auto& w : warnings)
    {
        out += "warning " + w + "\n";
    }
    out += "converged = " + std::to_string(converged ? 1 : 0) + "\n";
    out += "right_solves_total = " + std::to_string(solves.right) + "\n";
    out += "left_solves_total = " + std::to_string(solves.left) + "\n";
    return out;
}

std::string IterationTrace::format_timings() const
{
    std::string out = "iteration,seconds_solve,seconds_reduce,seconds_update\n";
    char buf[128];
    for (const auto& rec : iterations)
    {
        std::snprintf(buf, sizeof buf, "%lld,%.6f,%.6f,%.6f\n",
                      static_cast<long long>(rec.iteration), rec.seconds_solve,
                      rec.seconds_reduce, rec.seconds_update);
        out += buf;
    }
    return out;
}

} // namespace morkit
