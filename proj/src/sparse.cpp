#include "morkit/sparse.hpp"

namespace morkit
{

namespace
{

// Appends the entries of `block` (optionally transposed) at the given offset.
void append_block(std::vector<Eigen::Triplet<Complex, int>>& out,
                  const SparseMatrixR& block, Complex scale, Index row0,
                  Index col0, bool transposed)
{
    for (Index j = 0; j < block.outerSize(); ++j)
    {
        for (SparseMatrixR::InnerIterator it(block, j); it; ++it)
        {
            const Index r = transposed ? it.col() : it.row();
            const Index c = transposed ? it.row() : it.col();
            out.emplace_back(static_cast<int>(row0 + r),
                             static_cast<int>(col0 + c), scale * it.value());
        }
    }
}

} // namespace

SparseMatrixC shifted_augmented(const SparseMatrixR& m11,
                                const SparseMatrixR& l11,
                                const SparseMatrixR& k11,
                                const SparseMatrixR& k12,
                                const SparseMatrixR& k21,
                                const SparseMatrixR& k22, Complex sigma,
                                bool transposed)
{
    const Index n1 = k11.rows();
    const Index n2 = k22.rows();
    if (m11.rows() != n1 || m11.cols() != n1 || l11.rows() != n1 ||
        l11.cols() != n1 || k11.cols() != n1 || k12.rows() != n1 ||
        k12.cols() != n2 || k21.rows() != n2 || k21.cols() != n1 ||
        k22.cols() != n2)
    {
        throw DimensionError("shifted_augmented: inconsistent block sizes");
    }

    std::vector<Eigen::Triplet<Complex, int>> entries;
    entries.reserve(static_cast<std::size_t>(
        m11.nonZeros() + l11.nonZeros() + k11.nonZeros() + k12.nonZeros() +
        k21.nonZeros() + k22.nonZeros()));

    append_block(entries, m11, sigma * sigma, 0, 0, transposed);
    append_block(entries, l11, sigma, 0, 0, transposed);
    append_block(entries, k11, Complex(1.0), 0, 0, transposed);
    if (transposed)
    {
        append_block(entries, k21, Complex(1.0), 0, n1, true);
        append_block(entries, k12, Complex(1.0), n1, 0, true);
    }
    else
    {
        append_block(entries, k12, Complex(1.0), 0, n1, false);
        append_block(entries, k21, Complex(1.0), n1, 0, false);
    }
    append_block(entries, k22, Complex(1.0), n1, n1, transposed);

    SparseMatrixC a(n1 + n2, n1 + n2);
    a.setFromTriplets(entries.begin(), entries.end());
    a.makeCompressed();
    return a;
}

} // namespace morkit
