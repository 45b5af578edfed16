#include "morkit/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "morkit/io.hpp"
#include "parallel.hpp"

namespace morkit
{

FullModelEvaluator::FullModelEvaluator(const ValidatedSystem& vs) : m_vs(&vs)
{
    const auto& s = vs.system();
    m_order       = column_order(assemble_shifted_augmented(s, Complex(1.0, 1.0), false),
                                 ColumnOrdering::Amd);
    const Index n1 = s.K11.rows();
    const Index n2 = s.K22.rows();
    m_rhs.resize(n1 + n2, s.F1.cols());
    m_rhs.topRows(n1)    = s.F1.cast<Complex>();
    m_rhs.bottomRows(n2) = s.F2.cast<Complex>();
    m_dc                 = feedthrough(vs).cast<Complex>();
}

MatrixXc FullModelEvaluator::operator()(Complex s) const
{
    const auto& sys = m_vs->system();
    const Index n1  = sys.K11.rows();
    const SparseMatrixC a = assemble_shifted_augmented(sys, s, false);
    const ComplexSparseLU lu(a, 0.1, m_order);
    const MatrixXc v = lu.solve(m_rhs).topRows(n1);

    const MatrixXc k21v = sys.K21 * v;
    const auto& k22     = m_vs->k22_lu();
    const MatrixXr zr   = k22.solve(MatrixXr(k21v.real()));
    const MatrixXr zi   = k22.solve(MatrixXr(k21v.imag()));
    MatrixXc z(zr.rows(), zr.cols());
    z.real() = zr;
    z.imag() = zi;
    return sys.H1 * v - sys.H2 * z + m_dc;
}

TransferSample eval_full(const ValidatedSystem& vs, Complex s)
{
    return {s, FullModelEvaluator(vs)(s)};
}

TransferSample eval_reduced(const ReducedSecondOrderModel& rom, Complex s)
{
    const MatrixXc k = (s * s) * rom.M.cast<Complex>() + s * rom.L.cast<Complex>() +
                       rom.K.cast<Complex>();
    MatrixXc g = rom.D.cast<Complex>();
    if (rom.order() > 0)
    {
        g += rom.H.cast<Complex>() * dense_solve(k, rom.F.cast<Complex>());
    }
    return {s, g};
}

MatrixXc eval_reduced_derivative(const ReducedSecondOrderModel& rom, Complex s)
{
    if (rom.order() == 0)
    {
        return MatrixXc::Zero(rom.D.rows(), rom.D.cols());
    }
    const MatrixXc mr = rom.M.cast<Complex>();
    const MatrixXc k  = (s * s) * mr + s * rom.L.cast<Complex>() + rom.K.cast<Complex>();
    const MatrixXc x  = dense_solve(k, rom.F.cast<Complex>());
    const MatrixXc y  = dense_solve(k, ((2.0 * s) * mr + rom.L.cast<Complex>()) * x);
    return -(rom.H.cast<Complex>() * y);
}

MatrixXc eval_dense_schur(const DenseSchurSystem& d, Complex s)
{
    const MatrixXc k = (s * s) * d.Mc.cast<Complex>() + s * d.Lc.cast<Complex>() +
                       d.Kc.cast<Complex>();
    return d.Hc.cast<Complex>() * dense_solve(k, d.Fc.cast<Complex>()) +
           d.Dc.cast<Complex>();
}

Real sampling_deviation(const TransferFunction& a, const TransferFunction& b,
                        const std::vector<Complex>& points)
{
    Real worst = 0;
    for (const Complex& s : points)
    {
        const MatrixXc ga = a(s);
        const MatrixXc gb = b(s);
        const Real den = std::max(sigma_max(ga), std::numeric_limits<Real>::epsilon());
        worst          = std::max(worst, sigma_max(ga - gb) / den);
    }
    return worst;
}

Real schur_equivalence_check(const ValidatedSystem& vs,
                             const std::vector<Complex>& points)
{
    const FullModelEvaluator full(vs);
    const DenseSchurSystem dense = to_dense_schur(vs);
    return sampling_deviation([&](Complex s) { return full(s); },
                              [&](Complex s) { return eval_dense_schur(dense, s); },
                              points);
}

HermiteDeviation hermite_deviation(const ValidatedSystem& vs,
                                   const ReducedSecondOrderModel& rom,
                                   const InterpolationData& interp)
{
    const FullModelEvaluator full(vs);
    auto reduced = [&](Complex s) { return eval_reduced(rom, s).G; };
    const Real tiny = std::numeric_limits<Real>::min();
    HermiteDeviation dev;
    for (Index i = 0; i < interp.size(); ++i)
    {
        const auto k      = static_cast<std::size_t>(i);
        const Complex a   = interp.shifts[k];
        const VectorXc& b = interp.right[k];
        const VectorXc& c = interp.left[k];

        const MatrixXc g  = full(a);
        const MatrixXc gr = reduced(a);
        const VectorXc gb = g * b;
        dev.value = std::max(dev.value, (gb - gr * b).norm() / std::max(gb.norm(), tiny));
        const Complex m = c.transpose() * gb;
        const Complex mr = c.transpose() * (gr * b);
        dev.moment = std::max(dev.moment, std::abs(m - mr) / std::max(std::abs(m), tiny));

        const Complex h = 1e-4 * std::abs(a);
        const Complex d  = (c.transpose() * ((full(a + h) - full(a - h)) * b)).value() / (2.0 * h);
        const Complex dr = c.transpose() * (eval_reduced_derivative(rom, a) * b);
        dev.derivative =
            std::max(dev.derivative, std::abs(d - dr) / std::max(std::abs(d), tiny));
    }
    return dev;
}

std::vector<Real> log_grid(Real lo, Real hi, Index n)
{
    if (n < 1 || !(lo > 0) || !(hi >= lo))
    {
        throw DimensionError("log_grid: need n >= 1 and 0 < lo <= hi");
    }
    std::vector<Real> out(static_cast<std::size_t>(n));
    const Real a = std::log10(lo);
    const Real b = std::log10(hi);
    for (Index i = 0; i < n; ++i)
    {
        const Real t = n == 1 ? 0 : static_cast<Real>(i) / static_cast<Real>(n - 1);
        out[static_cast<std::size_t>(i)] = std::pow(10.0, a + t * (b - a));
    }
    out.front() = lo;
    if (n > 1)
    {
        out.back() = hi;
    }
    return out;
}

namespace
{

struct PairedSample
{
    MatrixXc full, rom;
    bool ok = false;
};

std::vector<PairedSample> sample_both(const ValidatedSystem& vs,
                                      const ReducedSecondOrderModel& rom,
                                      const std::vector<Real>& omegas,
                                      unsigned threads)
{
    const SystemDimensions d = vs.dimensions();
    if (rom.F.cols() != d.m || rom.H.rows() != d.p || rom.D.rows() != d.p ||
        rom.D.cols() != d.m)
    {
        throw DimensionError("sweep: reduced model inputs/outputs do not match "
                             "the system");
    }
    const FullModelEvaluator full(vs);
    std::vector<PairedSample> out(omegas.size());
    detail::parallel_for(omegas.size(), threads, [&](std::size_t i) {
        const Complex s(0.0, omegas[i]);
        try
        {
            out[i].full = full(s);
            out[i].rom  = eval_reduced(rom, s).G;
            out[i].ok   = out[i].full.allFinite() && out[i].rom.allFinite();
        }
        catch (const Error&)
        {
            out[i].ok = false;
        }
    });
    return out;
}

std::string fmt(Real x)
{
    return std::isfinite(x) ? format_real(x) : std::string("nan");
}

} // namespace

std::string FrequencySweep::to_csv() const
{
    std::string out = "omega,sigma_full,sigma_rom,rel_err,flag\n";
    for (std::size_t i = 0; i < omegas.size(); ++i)
    {
        out += fmt(omegas[i]) + "," + fmt(sigma_full[i]) + "," + fmt(sigma_rom[i]) +
               "," + fmt(rel_err[i]) + "," +
               std::to_string(static_cast<int>(flags[i])) + "\n";
    }
    return out;
}

FrequencySweep sweep(const ValidatedSystem& vs, const ReducedSecondOrderModel& rom,
                     const std::vector<Real>& omegas, unsigned threads)
{
    const std::vector<PairedSample> samples = sample_both(vs, rom, omegas, threads);
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    FrequencySweep sw;
    sw.omegas = omegas;
    for (const auto& smp : samples)
    {
        if (!smp.ok)
        {
            sw.sigma_full.push_back(nan);
            sw.sigma_rom.push_back(nan);
            sw.rel_err.push_back(nan);
            sw.flags.push_back(SampleFlag::Singular);
            continue;
        }
        const Real sf  = sigma_max(smp.full);
        const Real err = sigma_max(smp.full - smp.rom);
        sw.sigma_full.push_back(sf);
        sw.sigma_rom.push_back(sigma_max(smp.rom));
        if (sf > 0)
        {
            sw.rel_err.push_back(err / sf);
            sw.flags.push_back(SampleFlag::Ok);
        }
        else
        {
            sw.rel_err.push_back(err);
            sw.flags.push_back(SampleFlag::AbsoluteError);
        }
    }
    return sw;
}

std::string channel_csv(const ValidatedSystem& vs, const ReducedSecondOrderModel& rom,
                        const std::vector<Real>& omegas, Index input, Index output,
                        unsigned threads)
{
    const SystemDimensions d = vs.dimensions();
    if (input < 1 || input > d.m || output < 1 || output > d.p)
    {
        throw DimensionError("channel_csv: channel out of range");
    }
    const std::vector<PairedSample> samples = sample_both(vs, rom, omegas, threads);
    std::string out = "omega,abs_full,abs_rom,rel_err,flag\n";
    for (std::size_t i = 0; i < omegas.size(); ++i)
    {
        const auto& smp = samples[i];
        if (!smp.ok)
        {
            out += fmt(omegas[i]) + ",nan,nan,nan,2\n";
            continue;
        }
        const Complex gf = smp.full(output - 1, input - 1);
        const Complex gr = smp.rom(output - 1, input - 1);
        const Real af    = std::abs(gf);
        const Real err   = std::abs(gf - gr);
        const bool rel   = af > 0;
        out += fmt(omegas[i]) + "," + fmt(af) + "," + fmt(std::abs(gr)) + "," +
               fmt(rel ? err / af : err) + "," + (rel ? "0" : "1") + "\n";
    }
    return out;
}

StabilityReport stability_report(const ReducedSecondOrderModel& rom)
{
    StabilityReport rep;
    const CompanionPencil c = companion(rom);
    try
    {
        rep.eigenvalues = eigenvalues_generalized(c.A, c.E);
    }
    catch (const PencilSingularError& e)
    {
        rep.determinate = false;
        rep.stable      = false;
        rep.diagnostic  = std::string("singular reduced mass matrix: ") + e.what();
        return rep;
    }
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
              [](Complex a, Complex b) {
                  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
              });
    rep.max_real_part = -std::numeric_limits<Real>::infinity();
    for (const Complex& l : rep.eigenvalues)
    {
        rep.max_real_part = std::max(rep.max_real_part, l.real());
    }
    rep.stable = !rep.eigenvalues.empty() && rep.max_real_part < 0;
    return rep;
}

std::string StabilityReport::format() const
{
    std::string out = "# stability\n";
    if (!determinate)
    {
        out += "verdict = indeterminate\n";
        out += "diagnostic = " + diagnostic + "\n";
        return out;
    }
    out += std::string("verdict = ") + (stable ? "stable" : "unstable") + "\n";
    out += "max_real_part = " + format_real(max_real_part) + "\n";
    out += "eigenvalues = " + std::to_string(eigenvalues.size()) + "\n";
    for (const Complex& l : eigenvalues)
    {
        out += format_real(l.real()) + " " + format_real(l.imag()) + "\n";
    }
    return out;
}

SpeedupReport speedup_report(const ValidatedSystem& vs,
                             const ReducedSecondOrderModel& rom,
                             const std::vector<Real>& omegas, Index repetitions)
{
    if (repetitions < 3)
    {
        throw DimensionError("speedup_report: need at least 3 repetitions");
    }
    using Clock = std::chrono::steady_clock;
    const FullModelEvaluator full(vs);

    // The accumulated trace keeps the evaluations from being optimized away.
    Complex sink = 0;
    auto run_full = [&] {
        for (Real w : omegas)
        {
            sink += full(Complex(0.0, w)).trace();
        }
    };
    auto run_rom = [&] {
        for (Real w : omegas)
        {
            sink += eval_reduced(rom, Complex(0.0, w)).G.trace();
        }
    };
    auto median_time = [&](auto&& run) {
        run();
        std::vector<double> t;
        for (Index k = 0; k < repetitions; ++k)
        {
            const auto t0 = Clock::now();
            run();
            t.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
        }
        std::sort(t.begin(), t.end());
        const std::size_t h = t.size() / 2;
        return t.size() % 2 == 1 ? t[h] : 0.5 * (t[h - 1] + t[h]);
    };

    SpeedupReport rep;
    const SystemDimensions d = vs.dimensions();
    rep.full_dimension       = d.n1 + d.n2;
    rep.rom_dimension        = rom.order();
    rep.repetitions          = repetitions;
    rep.full_seconds         = median_time(run_full);
    rep.rom_seconds          = median_time(run_rom);
    volatile Real guard = sink.real();
    (void)guard;
    return rep;
}

std::string SpeedupReport::format() const
{
    char buf[256];
    std::string out = "model,dimension,seconds_per_cycle,speed_up\n";
    std::snprintf(buf, sizeof buf, "full,%lld,%.6f,1\n",
                  static_cast<long long>(full_dimension), full_seconds);
    out += buf;
    std::snprintf(buf, sizeof buf, "rom,%lld,%.6f,%.1f\n",
                  static_cast<long long>(rom_dimension), rom_seconds, ratio());
    out += buf;
    return out;
}

} // namespace morkit
