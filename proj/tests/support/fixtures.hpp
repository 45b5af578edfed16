#ifndef MORKIT_TESTS_FIXTURES_HPP
#define MORKIT_TESTS_FIXTURES_HPP

#include <vector>

#include "morkit/irka.hpp"
#include "morkit/sparse.hpp"
#include "morkit/system.hpp"

namespace morkit::testing
{

inline SparseMatrixR scalar_sparse(Real x)
{
    std::vector<Triplet<Real>> t;
    if (x != 0)
    {
        t.push_back({0, 0, x});
    }
    return assemble<Real>(1, 1, t);
}

inline MatrixXr scalar_dense(Real x)
{
    return MatrixXr::Constant(1, 1, x);
}

/// M11=1, L11=2, K11=5, K12=K21=1, K22=2, F1=H1=1, F2=H2=Da=0.
inline SecondOrderIndex1System make_s1()
{
    SecondOrderIndex1System s;
    s.M11 = scalar_sparse(1);
    s.L11 = scalar_sparse(2);
    s.K11 = scalar_sparse(5);
    s.K12 = scalar_sparse(1);
    s.K21 = scalar_sparse(1);
    s.K22 = scalar_sparse(2);
    s.F1  = scalar_dense(1);
    s.F2  = scalar_dense(0);
    s.H1  = scalar_dense(1);
    s.H2  = scalar_dense(0);
    s.Da  = scalar_dense(0);
    return s;
}

/// S1 with F2 = H2 = 2: Fc = Hc = 0, Dc = 2.
inline SecondOrderIndex1System make_s2()
{
    SecondOrderIndex1System s = make_s1();
    s.F2 = scalar_dense(2);
    s.H2 = scalar_dense(2);
    return s;
}

inline SecondOrderIndex1System make_generated(Index n1, Index n2, Index m,
                                              Index p, std::uint64_t seed,
                                              bool symmetric = true)
{
    SyntheticOptions o;
    o.n1        = n1;
    o.n2        = n2;
    o.m         = m;
    o.p         = p;
    o.seed      = seed;
    o.symmetric = symmetric;
    return generate_synthetic(o);
}

/// Conjugate pairs w (0.5 +- j) on a log grid over [lo, hi], plus one real
/// shift when r is odd. Directions are seeded unit vectors, conjugated
/// within each pair.
inline InterpolationData complex_interpolation(Index r, Index m, Index p,
                                               Real lo, Real hi,
                                               std::uint64_t seed)
{
    const InterpolationData base = initial_interpolation(r, m, p, lo, hi, seed);
    InterpolationData d;
    const Index pairs = r / 2;
    for (Index k = 0; k < pairs; ++k)
    {
        const Real t = pairs == 1 ? 0.5 : static_cast<Real>(k) / (pairs - 1);
        const Real w = lo * std::pow(hi / lo, t);
        const Complex s(0.5 * w, w);
        const auto i   = static_cast<std::size_t>(2 * k);
        VectorXc b     = base.right[i] + Complex(0, 1) * base.right[i + 1];
        VectorXc c     = base.left[i] + Complex(0, 1) * base.left[i + 1];
        b.normalize();
        c.normalize();
        d.shifts.push_back(s);
        d.right.push_back(b);
        d.left.push_back(c);
        d.shifts.push_back(std::conj(s));
        d.right.push_back(b.conjugate());
        d.left.push_back(c.conjugate());
    }
    if (r % 2 == 1)
    {
        const auto i = static_cast<std::size_t>(r - 1);
        d.shifts.push_back(std::sqrt(lo * hi));
        d.right.push_back(base.right[i]);
        d.left.push_back(base.left[i]);
    }
    return d;
}

/// Largest entry magnitude of a - b relative to the largest of b.
template <typename A, typename B>
Real relative_entrywise(const A& a, const B& b)
{
    const Real scale = b.cwiseAbs().maxCoeff();
    const Real diff  = (a - b).cwiseAbs().maxCoeff();
    return scale > 0 ? diff / scale : diff;
}

} // namespace morkit::testing

#endif
