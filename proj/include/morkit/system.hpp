#ifndef MORKIT_SYSTEM_HPP
#define MORKIT_SYSTEM_HPP

///
/// \file system.hpp
///
/// Second-order index-1 descriptor systems
///
///   M11 v'' + L11 v' + K11 v + K12 eta = F1 u
///                    K21 v + K22 eta = F2 u
///             y = H1 v + H2 eta + Da u
///
/// with sparse M11, L11, K11 (n1 x n1), K12 (n1 x n2), K21 (n2 x n1) and a
/// nonsingular K22 (n2 x n2). F1, F2, H1, H2 and Da are dense.
///

#include <memory>
#include <string>

#include "morkit/sparse.hpp"
#include "morkit/sparse_lu.hpp"

namespace morkit
{

struct SystemDimensions
{
    Index n1 = 0;
    Index n2 = 0;
    Index m  = 0;
    Index p  = 0;

    bool operator==(const SystemDimensions&) const = default;
};

struct SecondOrderIndex1System
{
    SparseMatrixR M11, L11, K11, K12, K21, K22;
    MatrixXr F1, F2, H1, H2, Da;

    SystemDimensions dimensions() const
    {
        return {K11.rows(), K22.rows(), F1.cols(), H1.rows()};
    }
};

struct SystemReport
{
    SystemDimensions dims;
    bool index1    = false;
    bool symmetric = false;
    /// Largest relative deviation found among the symmetry conditions.
    Real symmetry_deviation = 0;
};

///
/// Checks block dimensions (StructuralError), factors K22
/// (IndexAssumptionError if singular) and evaluates the symmetry
/// conditions M11, L11, K11, K22 symmetric, K21 = K12^T, H1 = F1^T,
/// H2 = F2^T and Da = Da^T, each to 1e-12 relative.
///
SystemReport validate(const SecondOrderIndex1System& sys);

/// Dimension consistency only.
void check_structure(const SecondOrderIndex1System& sys);

///
/// A system together with the retained real LU of K22. Every K22^{-1}
/// product in the library goes through `k22_lu`.
///
class ValidatedSystem
{
public:
    explicit ValidatedSystem(SecondOrderIndex1System sys);

    const SecondOrderIndex1System& system() const
    {
        return *m_sys;
    }

    const SystemReport& report() const
    {
        return m_report;
    }

    const RealSparseLU& k22_lu() const
    {
        return *m_k22;
    }

    SystemDimensions dimensions() const
    {
        return m_report.dims;
    }

private:
    std::shared_ptr<const SecondOrderIndex1System> m_sys;
    std::shared_ptr<const RealSparseLU> m_k22;
    SystemReport m_report;
};

/// The augmented matrix [[s^2 M11 + s L11 + K11, K12], [K21, K22]] or its
/// transpose.
SparseMatrixC assemble_shifted_augmented(const SecondOrderIndex1System& sys,
                                         Complex sigma, bool transposed);

///
/// Dense Schur-complement realization, used only as a verification oracle:
///
///   Kc = K11 - K12 K22^{-1} K21      Fc = F1 - K12 K22^{-1} F2
///   Hc = H1  - H2  K22^{-1} K21      Dc = Da + H2  K22^{-1} F2
///
struct DenseSchurSystem
{
    MatrixXr Mc, Lc, Kc, Fc, Hc, Dc;
};

DenseSchurSystem to_dense_schur(const ValidatedSystem& vs);

/// Feed-through Da + H2 K22^{-1} F2.
MatrixXr feedthrough(const ValidatedSystem& vs);

struct SyntheticOptions
{
    Index n1 = 200;
    Index n2 = 40;
    Index m  = 3;
    Index p  = 3;
    std::uint64_t seed = 1;
    bool symmetric     = true;
    Real alpha         = 0.1;  ///< L11 = alpha M11 + beta K11
    Real beta          = 1e-4;
};

///
/// Deterministic FEM-like test system. M11, K11 and K22 are banded SPD
/// matrices with random couplings, L11 = alpha M11 + beta K11, and K12 is
/// rescaled to 2-norm at most tau = 0.1 * min diag(K11). K22 is scaled so
/// that its Gershgorin bound exceeds 4 tau^2 / lambda_min(K11), which keeps
/// the Schur complement positive definite.
///
SecondOrderIndex1System generate_synthetic(const SyntheticOptions& opt);

/// Writes the eleven blocks as Matrix Market files plus `manifest.txt` into
/// `dir` (created if needed). Returns the manifest path.
std::string save_system(const SecondOrderIndex1System& sys,
                        const std::string& dir);

/// Reads a manifest and the files it names; the result is structurally
/// checked but not factored.
SecondOrderIndex1System load_system(const std::string& manifest_path);

} // namespace morkit

#endif // MORKIT_SYSTEM_HPP
