// morkit: generate, reduce, analyze and verify second-order index-1 systems.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "morkit/analysis.hpp"
#include "morkit/io.hpp"
#include "morkit/irka.hpp"
#include "morkit/random.hpp"
#include "morkit/system.hpp"

namespace fs = std::filesystem;
using namespace morkit;

namespace
{

constexpr int exit_ok        = 0;
constexpr int exit_input     = 1;
constexpr int exit_not_conv  = 2;

unsigned env_threads()
{
    const char* v = std::getenv("MORKIT_THREADS");
    if (v == nullptr)
    {
        return 0;
    }
    char* end     = nullptr;
    const long n  = std::strtol(v, &end, 10);
    return (end != v && n > 0) ? static_cast<unsigned>(n) : 0;
}

std::string join(const std::string& dir, const std::string& name)
{
    return (fs::path(dir) / name).string();
}

// ---- generate --------------------------------------------------------------

struct GenerateArgs
{
    SyntheticOptions opt;
    std::string out = "system";
};

int run_generate(const GenerateArgs& a)
{
    const std::string manifest = save_system(generate_synthetic(a.opt), a.out);
    std::cout << manifest << "\n";
    return exit_ok;
}

// ---- reduce ----------------------------------------------------------------

struct ReduceArgs
{
    std::string manifest;
    std::string config;
    std::string out = "rom";
    IrkaConfig cfg;
    bool one_sided   = false;
    bool two_sided   = false;
    bool index1_form = false;
};

// Fills fields not given on the command line from the config file.
void apply_config(const std::string& path, const CLI::App& cmd, ReduceArgs& a)
{
    for (const auto& [key, value] : read_key_values(path))
    {
        if (cmd.count("--" + key) > 0)
        {
            continue;
        }
        auto as_int = [&] { return static_cast<Index>(std::stoll(value)); };
        auto as_real = [&] { return std::stod(value); };
        try
        {
            if (key == "r") a.cfg.r = as_int();
            else if (key == "max-iter") a.cfg.max_iter = as_int();
            else if (key == "tol") a.cfg.shift_tol = as_real();
            else if (key == "inner-max-iter") a.cfg.inner_max_iter = as_int();
            else if (key == "inner-tol") a.cfg.inner_tol = as_real();
            else if (key == "seed") a.cfg.seed = std::stoull(value);
            else if (key == "freq-lo") a.cfg.freq_lo = as_real();
            else if (key == "freq-hi") a.cfg.freq_hi = as_real();
            else if (key == "one-sided")
            {
                if (cmd.count("--force-one-sided") == 0 &&
                    cmd.count("--force-two-sided") == 0)
                {
                    a.cfg.force_one_sided = value == "1" || value == "true";
                }
            }
            else throw FormatError("unknown config key '" + key + "'");
        }
        catch (const std::logic_error&)
        {
            throw FormatError("bad value for config key '" + key + "'");
        }
    }
}

void write_rom(const ReducedSecondOrderModel& rom, const std::string& dir)
{
    write_matrix_market(rom.M, join(dir, "rom_M.mtx"));
    write_matrix_market(rom.L, join(dir, "rom_L.mtx"));
    write_matrix_market(rom.K, join(dir, "rom_K.mtx"));
    write_matrix_market(rom.F, join(dir, "rom_F.mtx"));
    write_matrix_market(rom.H, join(dir, "rom_H.mtx"));
    write_matrix_market(rom.D, join(dir, "rom_D.mtx"));
}

ReducedSecondOrderModel read_rom(const std::string& dir)
{
    ReducedSecondOrderModel rom;
    rom.M = read_matrix_market_dense(join(dir, "rom_M.mtx"));
    rom.L = read_matrix_market_dense(join(dir, "rom_L.mtx"));
    rom.K = read_matrix_market_dense(join(dir, "rom_K.mtx"));
    rom.F = read_matrix_market_dense(join(dir, "rom_F.mtx"));
    rom.H = read_matrix_market_dense(join(dir, "rom_H.mtx"));
    rom.D = read_matrix_market_dense(join(dir, "rom_D.mtx"));
    const Index r = rom.M.rows();
    if (rom.M.cols() != r || rom.L.rows() != r || rom.L.cols() != r ||
        rom.K.rows() != r || rom.K.cols() != r || rom.F.rows() != r ||
        rom.H.cols() != r || rom.D.rows() != rom.H.rows() ||
        rom.D.cols() != rom.F.cols())
    {
        throw DimensionError("reduced model blocks have inconsistent sizes");
    }
    return rom;
}

int run_reduce(ReduceArgs a, const CLI::App& cmd)
{
    if (!a.config.empty())
    {
        apply_config(a.config, cmd, a);
    }
    if (a.one_sided)
    {
        a.cfg.force_one_sided = true;
    }
    if (a.two_sided)
    {
        a.cfg.force_one_sided = false;
    }
    a.cfg.threads = env_threads();

    const ValidatedSystem vs(load_system(a.manifest));
    if (a.cfg.r < 1 || a.cfg.r > vs.dimensions().n1)
    {
        throw DimensionError("--r must be between 1 and n1 = " +
                             std::to_string(vs.dimensions().n1));
    }
    const IrkaResult res = irka_second_order_index1(vs, a.cfg);

    fs::create_directories(a.out);
    write_rom(res.rom, a.out);
    write_file_atomic(join(a.out, "trace.log"), res.trace.format());
    write_file_atomic(join(a.out, "timings.log"), res.trace.format_timings());
    if (a.index1_form)
    {
        save_system(back_to_index1(res.rom, vs, res.basis), join(a.out, "index1"));
    }
    const std::string flag = join(a.out, "NOT_CONVERGED");
    for (const auto& w : res.trace.warnings)
    {
        std::cerr << "warning: " << w << "\n";
    }
    if (!res.trace.converged)
    {
        write_file_atomic(flag, "iterations = " +
                                    std::to_string(res.trace.iterations.size()) + "\n");
        std::cerr << "not converged after " << res.trace.iterations.size()
                  << " iterations\n";
        return exit_not_conv;
    }
    fs::remove(flag);
    std::cout << "converged after " << res.trace.iterations.size()
              << " iterations, r = " << res.rom.order() << "\n";
    return exit_ok;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs
{
    std::string manifest;
    std::string rom;
    std::string out;
    Index points = 200;
    Real freq_lo = 10;
    Real freq_hi = 1e4;
    std::vector<std::string> channels;
    Index benchmark = 0;
};

std::pair<Index, Index> parse_channel(const std::string& s)
{
    Index i = 0, o = 0;
    char comma = 0;
    std::istringstream in(s);
    if (!(in >> i >> comma >> o) || comma != ',' || !in.eof())
    {
        throw FormatError("--channel expects input,output (1-based), got '" + s + "'");
    }
    return {i, o};
}

int run_analyze(const AnalyzeArgs& a)
{
    const ValidatedSystem vs(load_system(a.manifest));
    const ReducedSecondOrderModel rom = read_rom(a.rom);
    const std::string out = a.out.empty() ? a.rom : a.out;
    fs::create_directories(out);
    const unsigned threads        = env_threads();
    const std::vector<Real> grid  = log_grid(a.freq_lo, a.freq_hi, a.points);

    write_file_atomic(join(out, "sweep.csv"), sweep(vs, rom, grid, threads).to_csv());
    for (const auto& ch : a.channels)
    {
        const auto [i, o] = parse_channel(ch);
        write_file_atomic(join(out, "channel_" + std::to_string(i) + "_" +
                                        std::to_string(o) + ".csv"),
                          channel_csv(vs, rom, grid, i, o, threads));
    }
    const StabilityReport st = stability_report(rom);
    write_file_atomic(join(out, "stability.txt"), st.format());
    std::cout << "sweep: " << grid.size() << " samples\n";
    std::cout << "stability: "
              << (!st.determinate ? "indeterminate" : st.stable ? "stable" : "unstable")
              << "\n";
    if (a.benchmark > 0)
    {
        const SpeedupReport sp = speedup_report(vs, rom, grid, a.benchmark);
        write_file_atomic(join(out, "timing.csv"), sp.format());
        std::cout << sp.format();
    }
    return exit_ok;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs
{
    std::string manifest;
    Index r            = 6;
    std::uint64_t seed = 1;
};

int run_verify(const VerifyArgs& a)
{
    const ValidatedSystem vs(load_system(a.manifest));
    const SystemDimensions d = vs.dimensions();
    bool ok = true;
    auto line = [&](const char* name, bool pass, const std::string& detail) {
        std::printf("%-24s %s  %s\n", name, pass ? "PASS" : "FAIL", detail.c_str());
        ok = ok && pass;
    };
    auto dev = [](const char* what, Real v, Real tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s = %.3e (tol %.0e)", what, v, tol);
        return std::string(buf);
    };

    Rng rng(a.seed);
    std::vector<Complex> points;
    for (int k = 0; k < 20; ++k)
    {
        points.emplace_back(0.0, std::pow(10.0, rng.uniform(1.0, 4.0)));
    }
    const Real schur = schur_equivalence_check(vs, points);
    line("schur_equivalence", schur <= 1e-10, dev("deviation", schur, 1e-10));

    const Index r = std::min<Index>(a.r, d.n1);
    const InterpolationData interp = initial_interpolation(r, d.m, d.p, 10, 1e4, a.seed);
    const ReducedSecondOrderModel two =
        reduce(vs, build_bases(vs, interp, false, nullptr, env_threads()));
    const HermiteDeviation h = hermite_deviation(vs, two, interp);
    line("hermite_value", h.value <= 1e-8, dev("deviation", h.value, 1e-8));
    line("hermite_moment", h.moment <= 1e-8, dev("deviation", h.moment, 1e-8));
    line("hermite_derivative", h.derivative <= 1e-6, dev("deviation", h.derivative, 1e-6));

    const SystemReport& rep = vs.report();
    std::printf("%-24s %s  %s\n", "symmetric", rep.symmetric ? "true" : "false",
                dev("deviation", rep.symmetry_deviation, 1e-12).c_str());

    if (rep.symmetric)
    {
        const ReducedSecondOrderModel one =
            reduce(vs, build_bases(vs, interp, true, nullptr, env_threads()));
        const Real asym = std::max({(one.M - one.M.transpose()).norm() / one.M.norm(),
                                    (one.L - one.L.transpose()).norm() /
                                        std::max(one.L.norm(), 1e-300),
                                    (one.K - one.K.transpose()).norm() / one.K.norm(),
                                    (one.H - one.F.transpose()).norm() /
                                        std::max(one.F.norm(), 1e-300)});
        line("rom_symmetry", asym <= 1e-12, dev("deviation", asym, 1e-12));
        const StabilityReport st = stability_report(one);
        line("rom_stability", st.determinate && st.stable,
             st.determinate ? dev("max_real_part", st.max_real_part, 0)
                            : st.diagnostic);
    }
    else
    {
        const StabilityReport st = stability_report(two);
        std::printf("%-24s %s  %s\n", "rom_stability",
                    !st.determinate ? "indeterminate" : st.stable ? "stable" : "unstable",
                    "(not asserted for nonsymmetric systems)");
    }
    return ok ? exit_ok : exit_input;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Structure-preserving reduction of second-order index-1 systems"};
    app.require_subcommand(1);

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "write a synthetic system");
    gen->add_option("--n1", ga.opt.n1, "differential unknowns")->check(CLI::PositiveNumber);
    gen->add_option("--n2", ga.opt.n2, "algebraic unknowns")->check(CLI::PositiveNumber);
    gen->add_option("--m", ga.opt.m, "inputs")->check(CLI::PositiveNumber);
    gen->add_option("--p", ga.opt.p, "outputs")->check(CLI::PositiveNumber);
    gen->add_option("--seed", ga.opt.seed);
    gen->add_option("--alpha", ga.opt.alpha, "Rayleigh damping mass factor");
    gen->add_option("--beta", ga.opt.beta, "Rayleigh damping stiffness factor");
    bool symmetric = false, nonsymmetric = false;
    gen->add_flag("--symmetric", symmetric);
    gen->add_flag("--nonsymmetric", nonsymmetric);
    gen->add_option("--out", ga.out, "output directory");

    ReduceArgs ra;
    auto* red = app.add_subcommand("reduce", "run IRKA on a system");
    red->add_option("--manifest", ra.manifest)->required();
    red->add_option("--config", ra.config, "key = value defaults");
    red->add_option("--r", ra.cfg.r)->check(CLI::PositiveNumber);
    red->add_option("--max-iter", ra.cfg.max_iter)->check(CLI::PositiveNumber);
    red->add_option("--tol", ra.cfg.shift_tol)->check(CLI::PositiveNumber);
    red->add_option("--inner-max-iter", ra.cfg.inner_max_iter)->check(CLI::PositiveNumber);
    red->add_option("--inner-tol", ra.cfg.inner_tol)->check(CLI::PositiveNumber);
    red->add_option("--seed", ra.cfg.seed);
    red->add_option("--freq-lo", ra.cfg.freq_lo)->check(CLI::PositiveNumber);
    red->add_option("--freq-hi", ra.cfg.freq_hi)->check(CLI::PositiveNumber);
    auto* f1 = red->add_flag("--force-one-sided", ra.one_sided);
    auto* f2 = red->add_flag("--force-two-sided", ra.two_sided);
    f1->excludes(f2);
    red->add_flag("--index1-form", ra.index1_form, "also write the index-1 bundle");
    red->add_option("--out", ra.out, "output directory");

    AnalyzeArgs aa;
    auto* ana = app.add_subcommand("analyze", "frequency sweep and stability");
    ana->add_option("--manifest", aa.manifest)->required();
    ana->add_option("--rom", aa.rom, "directory with rom_*.mtx")->required();
    ana->add_option("--out", aa.out, "output directory (default: --rom)");
    ana->add_option("--points", aa.points)->check(CLI::PositiveNumber);
    ana->add_option("--freq-lo", aa.freq_lo)->check(CLI::PositiveNumber);
    ana->add_option("--freq-hi", aa.freq_hi)->check(CLI::PositiveNumber);
    ana->add_option("--channel", aa.channels, "input,output (1-based)");
    ana->add_option("--benchmark", aa.benchmark, "timing repetitions (>= 3)");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "property checks on a system");
    ver->add_option("--manifest", va.manifest)->required();
    ver->add_option("--r", va.r)->check(CLI::PositiveNumber);
    ver->add_option("--seed", va.seed);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try
    {
        if (*gen)
        {
            ga.opt.symmetric = !nonsymmetric;
            (void)symmetric;
            return run_generate(ga);
        }
        if (*red)
        {
            return run_reduce(ra, *red);
        }
        if (*ana)
        {
            if (aa.benchmark != 0 && aa.benchmark < 3)
            {
                throw DimensionError("--benchmark needs at least 3 repetitions");
            }
            return run_analyze(aa);
        }
        if (*ver)
        {
            return run_verify(va);
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
