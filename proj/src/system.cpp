#include "morkit/system.hpp"

#include <algorithm>
#include <filesystem>

#include "morkit/io.hpp"

namespace morkit
{

namespace
{

constexpr Real symmetry_rtol = 1e-12;

void expect(bool ok, const std::string& what)
{
    if (!ok)
    {
        throw StructuralError("inconsistent system: " + what);
    }
}

std::string dims(Index r, Index c)
{
    return std::to_string(r) + "x" + std::to_string(c);
}

// max|a - b| / max(max|a|, max|b|), 0 when both vanish.
Real relative_gap(const MatrixXr& a, const MatrixXr& b)
{
    if (a.size() == 0)
    {
        return 0;
    }
    const Real scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    if (scale == 0)
    {
        return 0;
    }
    return (a - b).cwiseAbs().maxCoeff() / scale;
}

Real relative_gap(const SparseMatrixR& a, const SparseMatrixR& b)
{
    const Real scale = std::max(max_abs(a), max_abs(b));
    if (scale == 0)
    {
        return 0;
    }
    const SparseMatrixR d = a - b;
    return max_abs(d) / scale;
}

Real asymmetry(const SparseMatrixR& a)
{
    const SparseMatrixR at = a.transpose();
    return relative_gap(a, at);
}

} // namespace

void check_structure(const SecondOrderIndex1System& s)
{
    const Index n1 = s.K11.rows();
    const Index n2 = s.K22.rows();
    const Index m  = s.F1.cols();
    const Index p  = s.H1.rows();
    expect(n1 > 0, "K11 is empty");
    expect(n2 > 0, "K22 is empty");
    expect(s.K11.cols() == n1, "K11 is " + dims(s.K11.rows(), s.K11.cols()));
    expect(s.K22.cols() == n2, "K22 is " + dims(s.K22.rows(), s.K22.cols()));
    expect(s.M11.rows() == n1 && s.M11.cols() == n1,
           "M11 is " + dims(s.M11.rows(), s.M11.cols()) + ", expected " +
               dims(n1, n1));
    expect(s.L11.rows() == n1 && s.L11.cols() == n1,
           "L11 is " + dims(s.L11.rows(), s.L11.cols()) + ", expected " +
               dims(n1, n1));
    expect(s.K12.rows() == n1 && s.K12.cols() == n2,
           "K12 is " + dims(s.K12.rows(), s.K12.cols()) + ", expected " +
               dims(n1, n2));
    expect(s.K21.rows() == n2 && s.K21.cols() == n1,
           "K21 is " + dims(s.K21.rows(), s.K21.cols()) + ", expected " +
               dims(n2, n1));
    expect(s.F1.rows() == n1, "F1 is " + dims(s.F1.rows(), s.F1.cols()));
    expect(s.F2.rows() == n2 && s.F2.cols() == m,
           "F2 is " + dims(s.F2.rows(), s.F2.cols()) + ", expected " +
               dims(n2, m));
    expect(s.H1.cols() == n1, "H1 is " + dims(s.H1.rows(), s.H1.cols()));
    expect(s.H2.rows() == p && s.H2.cols() == n2,
           "H2 is " + dims(s.H2.rows(), s.H2.cols()) + ", expected " +
               dims(p, n2));
    expect(s.Da.rows() == p && s.Da.cols() == m,
           "Da is " + dims(s.Da.rows(), s.Da.cols()) + ", expected " +
               dims(p, m));
    expect(m > 0 && p > 0, "system has no inputs or outputs");
}

namespace
{

Real symmetry_deviation(const SecondOrderIndex1System& s)
{
    Real dev = 0;
    dev      = std::max(dev, asymmetry(s.M11));
    dev      = std::max(dev, asymmetry(s.L11));
    dev      = std::max(dev, asymmetry(s.K11));
    dev      = std::max(dev, asymmetry(s.K22));
    const SparseMatrixR k12t = s.K12.transpose();
    dev = std::max(dev, relative_gap(s.K21, k12t));
    if (s.H1.rows() != s.F1.cols() || s.H2.rows() != s.F2.cols() ||
        s.Da.rows() != s.Da.cols())
    {
        return std::numeric_limits<Real>::infinity();
    }
    dev = std::max(dev, relative_gap(s.H1, s.F1.transpose()));
    dev = std::max(dev, relative_gap(s.H2, s.F2.transpose()));
    dev = std::max(dev, relative_gap(s.Da, s.Da.transpose()));
    return dev;
}

} // namespace

ValidatedSystem::ValidatedSystem(SecondOrderIndex1System sys)
{
    check_structure(sys);
    m_report.dims = sys.dimensions();
    try
    {
        m_k22 = std::make_shared<const RealSparseLU>(sys.K22);
    }
    catch (const SingularMatrixError& e)
    {
        throw IndexAssumptionError(
            "K22 is singular (column " + std::to_string(e.column()) +
            "); the system is not index-1");
    }
    m_report.index1             = true;
    m_report.symmetry_deviation = symmetry_deviation(sys);
    m_report.symmetric = m_report.symmetry_deviation <= symmetry_rtol;
    m_sys = std::make_shared<const SecondOrderIndex1System>(std::move(sys));
}

SystemReport validate(const SecondOrderIndex1System& sys)
{
    return ValidatedSystem(sys).report();
}

SparseMatrixC assemble_shifted_augmented(const SecondOrderIndex1System& s,
                                         Complex sigma, bool transposed)
{
    return shifted_augmented(s.M11, s.L11, s.K11, s.K12, s.K21, s.K22, sigma,
                             transposed);
}

DenseSchurSystem to_dense_schur(const ValidatedSystem& vs)
{
    const auto& s = vs.system();
    const auto& lu = vs.k22_lu();
    const MatrixXr k21 = MatrixXr(s.K21);
    const MatrixXr x21 = lu.solve(k21);  // K22^{-1} K21
    const MatrixXr xf  = lu.solve(s.F2); // K22^{-1} F2

    DenseSchurSystem d;
    d.Mc = MatrixXr(s.M11);
    d.Lc = MatrixXr(s.L11);
    d.Kc = MatrixXr(s.K11) - s.K12 * x21;
    d.Fc = s.F1 - s.K12 * xf;
    d.Hc = s.H1 - s.H2 * x21;
    d.Dc = s.Da + s.H2 * xf;
    return d;
}

MatrixXr feedthrough(const ValidatedSystem& vs)
{
    const auto& s = vs.system();
    return s.Da + s.H2 * vs.k22_lu().solve(s.F2);
}

// --------------------------------------------------------------------------
// Persistence
// --------------------------------------------------------------------------

namespace
{

const char* const sparse_keys[] = {"M11", "L11", "K11", "K12", "K21", "K22"};
const char* const dense_keys[]  = {"F1", "F2", "H1", "H2", "Da"};

template <typename System>
auto& sparse_block(System& s, const std::string& k)
{
    if (k == "M11") return s.M11;
    if (k == "L11") return s.L11;
    if (k == "K11") return s.K11;
    if (k == "K12") return s.K12;
    if (k == "K21") return s.K21;
    return s.K22;
}

template <typename System>
auto& dense_block(System& s, const std::string& k)
{
    if (k == "F1") return s.F1;
    if (k == "F2") return s.F2;
    if (k == "H1") return s.H1;
    if (k == "H2") return s.H2;
    return s.Da;
}

} // namespace

std::string save_system(const SecondOrderIndex1System& sys,
                        const std::string& dir)
{
    namespace fs = std::filesystem;
    check_structure(sys);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
    {
        throw IoError("cannot create directory '" + dir + "'");
    }
    const auto& s = sys;
    const SystemDimensions d = sys.dimensions();
    KeyValueList manifest = {{"n1", std::to_string(d.n1)},
                             {"n2", std::to_string(d.n2)},
                             {"m", std::to_string(d.m)},
                             {"p", std::to_string(d.p)}};
    for (const char* key : sparse_keys)
    {
        const std::string file = std::string(key) + ".mtx";
        write_matrix_market(sparse_block(s, key), (fs::path(dir) / file).string());
        manifest.emplace_back(key, file);
    }
    for (const char* key : dense_keys)
    {
        const std::string file = std::string(key) + ".mtx";
        write_matrix_market(dense_block(s, key), (fs::path(dir) / file).string());
        manifest.emplace_back(key, file);
    }
    const std::string path = (fs::path(dir) / "manifest.txt").string();
    write_file_atomic(path, format_key_values(manifest));
    return path;
}

SecondOrderIndex1System load_system(const std::string& manifest_path)
{
    namespace fs        = std::filesystem;
    const KeyValueList kv = read_key_values(manifest_path);
    const fs::path base   = fs::path(manifest_path).parent_path();
    auto lookup = [&](const std::string& key) -> const std::string* {
        for (const auto& [k, v] : kv)
        {
            if (k == key)
            {
                return &v;
            }
        }
        return nullptr;
    };
    auto resolve = [&](const std::string& key) {
        const std::string* v = lookup(key);
        if (v == nullptr)
        {
            throw StructuralError("manifest '" + manifest_path +
                                  "' has no entry for " + key);
        }
        const fs::path p = *v;
        return (p.is_absolute() ? p : base / p).string();
    };

    SecondOrderIndex1System s;
    for (const char* key : sparse_keys)
    {
        sparse_block(s, key) = read_matrix_market_sparse(resolve(key));
    }
    for (const char* key : dense_keys)
    {
        dense_block(s, key) = read_matrix_market_dense(resolve(key));
    }
    check_structure(s);

    const SystemDimensions d = s.dimensions();
    const std::pair<const char*, Index> declared[] = {
        {"n1", d.n1}, {"n2", d.n2}, {"m", d.m}, {"p", d.p}};
    for (const auto& [key, actual] : declared)
    {
        if (const std::string* v = lookup(key))
        {
            long long value = -1;
            try
            {
                value = std::stoll(*v);
            }
            catch (const std::exception&)
            {
                throw FormatError("manifest entry " + std::string(key) +
                                  " is not an integer");
            }
            if (value != actual)
            {
                throw StructuralError(
                    "manifest declares " + std::string(key) + " = " + *v +
                    " but the blocks give " + std::to_string(actual));
            }
        }
    }
    validate(s);
    return s;
}

} // namespace morkit
