#include <algorithm>
#include <cmath>
#include <map>

#include "morkit/random.hpp"
#include "morkit/sparse_lu.hpp"
#include "morkit/system.hpp"

namespace morkit
{

namespace
{

// Symmetric off-diagonal couplings (i < j) within a band, keyed by position.
using Couplings = std::map<std::pair<Index, Index>, Real>;

// Chain neighbours plus ~n extra random pairs with |i - j| <= bandwidth.
Couplings random_couplings(Index n, Index bandwidth, Rng& rng)
{
    Couplings c;
    for (Index i = 0; i + 1 < n; ++i)
    {
        c[{i, i + 1}] = 1.0;
    }
    for (Index k = 0; k < n && n > 2; ++k)
    {
        const Index i = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
        const Index off =
            2 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(bandwidth - 1)));
        const Index j = i + off;
        if (j < n)
        {
            c[{i, j}] = rng.uniform(0.1, 0.5);
        }
    }
    return c;
}

///
/// Springs between coupled nodes plus a grounding term per node:
///   A = sum_ij kappa w_ij sqrt(g_i g_j) (e_i - e_j)(e_i - e_j)^T + diag(g)
/// The Gershgorin lower bound of A is min(g).
///
SparseMatrixR spring_matrix(Index n, const Couplings& c, Real kappa,
                            const std::vector<Real>& ground)
{
    std::vector<Triplet<Real>> t;
    t.reserve(static_cast<std::size_t>(4 * c.size() + n));
    for (const auto& [ij, w] : c)
    {
        const Real v = kappa * w *
                       std::sqrt(ground[static_cast<std::size_t>(ij.first)] *
                                 ground[static_cast<std::size_t>(ij.second)]);
        t.push_back({ij.first, ij.first, v});
        t.push_back({ij.second, ij.second, v});
        t.push_back({ij.first, ij.second, -v});
        t.push_back({ij.second, ij.first, -v});
    }
    for (Index i = 0; i < n; ++i)
    {
        t.push_back({i, i, ground[static_cast<std::size_t>(i)]});
    }
    return assemble<Real>(n, n, t);
}

// Strictly diagonally dominant SPD matrix: positive couplings with diagonal
// = row sum of |off-diagonals| + base_i.
SparseMatrixR dominant_matrix(Index n, const Couplings& c, Real coupling,
                              const std::vector<Real>& base)
{
    std::vector<Real> rowsum(static_cast<std::size_t>(n), 0.0);
    std::vector<Triplet<Real>> t;
    for (const auto& [ij, w] : c)
    {
        const Real v = coupling * w;
        t.push_back({ij.first, ij.second, v});
        t.push_back({ij.second, ij.first, v});
        rowsum[static_cast<std::size_t>(ij.first)] += std::abs(v);
        rowsum[static_cast<std::size_t>(ij.second)] += std::abs(v);
    }
    for (Index i = 0; i < n; ++i)
    {
        t.push_back({i, i,
                     rowsum[static_cast<std::size_t>(i)] +
                         base[static_cast<std::size_t>(i)]});
    }
    return assemble<Real>(n, n, t);
}

MatrixXr normal_matrix(Index rows, Index cols, Real scale, Rng& rng)
{
    MatrixXr a(rows, cols);
    for (Index j = 0; j < cols; ++j)
    {
        for (Index i = 0; i < rows; ++i)
        {
            a(i, j) = scale * rng.normal();
        }
    }
    return a;
}

} // namespace

SecondOrderIndex1System generate_synthetic(const SyntheticOptions& opt)
{
    if (opt.n1 < 1 || opt.n2 < 1 || opt.m < 1 || opt.p < 1)
    {
        throw DimensionError("generate_synthetic: n1, n2, m, p must be >= 1");
    }
    if (opt.symmetric && opt.m != opt.p)
    {
        throw DimensionError("generate_synthetic: a symmetric system needs m == p");
    }
    const Index n1 = opt.n1;
    const Index n2 = opt.n2;
    Rng rng(opt.seed);

    // Mass: unit-order lumped masses with weak consistent-mass couplings.
    std::vector<Real> mass_base(static_cast<std::size_t>(n1));
    for (auto& b : mass_base)
    {
        b = rng.uniform(0.5, 1.5);
    }
    const Couplings mc = random_couplings(n1, 6, rng);
    const SparseMatrixR m11 = dominant_matrix(n1, mc, 0.05, mass_base);

    // Stiffness: each node is grounded so that its own natural frequency is
    // beam-like, w_k ~ 5 k^2 rad/s (jittered) up to 1.8e4; further nodes are
    // spread log-uniformly on [1.8e4, 1e5], above the band of interest.
    // Nodes are coupled to neighbours in proportion to local stiffness.
    constexpr Real w_first = 5.0;
    constexpr Real w_band  = 1.8e4;
    constexpr Real w_top   = 1e5;
    std::vector<Real> omega(static_cast<std::size_t>(n1));
    Index k = 0;
    for (; k < n1; ++k)
    {
        const Real w = w_first * static_cast<Real>((k + 1) * (k + 1)) *
                       rng.uniform(0.9, 1.1);
        if (w > w_band)
        {
            break;
        }
        omega[static_cast<std::size_t>(k)] = w;
    }
    for (Index i = k; i < n1; ++i)
    {
        omega[static_cast<std::size_t>(i)] =
            std::pow(10.0, rng.uniform(std::log10(w_band), std::log10(w_top)));
    }
    std::sort(omega.begin(), omega.end());
    std::vector<Real> ground(static_cast<std::size_t>(n1));
    for (Index i = 0; i < n1; ++i)
    {
        const auto k = static_cast<std::size_t>(i);
        ground[k]    = mass_base[k] * omega[k] * omega[k];
    }
    const Couplings kc = random_couplings(n1, 8, rng);
    const SparseMatrixR k11 = spring_matrix(n1, kc, 0.2, ground);
    const Real k11_lower = *std::min_element(ground.begin(), ground.end());

    Real k11_min_diag = std::numeric_limits<Real>::infinity();
    for (Index i = 0; i < n1; ++i)
    {
        k11_min_diag = std::min(k11_min_diag, k11.coeff(i, i));
    }
    const Real tau = 0.1 * k11_min_diag;

    // K12: each algebraic unknown couples to a few nearby differential ones.
    std::vector<Triplet<Real>> k12t;
    for (Index j = 0; j < n2; ++j)
    {
        const Index centre = (2 * j + 1) * n1 / (2 * n2);
        const int fan      = 1 + static_cast<int>(rng.below(3));
        for (int f = -fan; f <= fan; ++f)
        {
            const Index i = std::clamp<Index>(centre + f, 0, n1 - 1);
            k12t.push_back({i, j, rng.normal()});
        }
    }
    SparseMatrixR k12 = assemble<Real>(n1, n2, k12t);
    // Frobenius norm bounds the 2-norm.
    const Real k12_norm = k12.norm();
    if (k12_norm > 0)
    {
        k12 *= tau / k12_norm;
    }

    // K22 scaled so that ||K12 K22^{-1} K21|| <= tau^2 / s22 = k11_lower / 4.
    const Real s22 = 4 * tau * tau / k11_lower;
    std::vector<Real> k22_base(static_cast<std::size_t>(n2));
    for (auto& b : k22_base)
    {
        b = s22 * rng.uniform(1.0, 2.0);
    }
    const Couplings ac = random_couplings(n2, 4, rng);
    const SparseMatrixR k22 = dominant_matrix(n2, ac, 0.2 * s22, k22_base);

    SecondOrderIndex1System s;
    s.M11 = m11;
    s.K11 = k11;
    s.L11 = opt.alpha * m11 + opt.beta * k11;
    s.L11.makeCompressed();
    s.K22 = k22;

    // Input scales: the algebraic input F2 enters through K12 K22^{-1} F2;
    // s22 / tau would put it at the order of F1. It is kept at 5% of that,
    // which also keeps H2 K22^{-1} F2 near the static gain of the response.
    const Real f2_scale = 0.05 * s22 / tau;
    s.F1 = normal_matrix(n1, opt.m, 1.0, rng);
    s.F2 = normal_matrix(n2, opt.m, f2_scale, rng);

    if (opt.symmetric)
    {
        s.K12 = k12;
        s.K21 = k12.transpose();
        s.H1  = s.F1.transpose();
        s.H2  = s.F2.transpose();
    }
    else
    {
        // Independent coupling pattern and output maps break every symmetry
        // condition while keeping the same norm bound on K21.
        s.K12 = k12;
        std::vector<Triplet<Real>> k21t;
        for (Index j = 0; j < n2; ++j)
        {
            const Index centre = (2 * j + 1) * n1 / (2 * n2);
            for (int f = -1; f <= 1; ++f)
            {
                const Index i = std::clamp<Index>(centre + f, 0, n1 - 1);
                k21t.push_back({j, i, rng.normal()});
            }
        }
        s.K21 = assemble<Real>(n2, n1, k21t);
        const Real k21_norm = s.K21.norm();
        if (k21_norm > 0)
        {
            s.K21 *= tau / k21_norm;
        }
        s.H1 = normal_matrix(opt.p, n1, 1.0, rng);
        s.H2 = normal_matrix(opt.p, n2, f2_scale, rng);
    }
    s.K21.makeCompressed();

    // Da cancels the algebraic feedthrough H2 K22^{-1} F2, so the response
    // is strictly proper while F2 and H2 still shape Fc and Hc.
    s.Da = -(s.H2 * RealSparseLU(s.K22).solve(s.F2));
    if (opt.symmetric)
    {
        s.Da = 0.5 * (s.Da + s.Da.transpose()).eval();
    }
    return s;
}

} // namespace morkit
