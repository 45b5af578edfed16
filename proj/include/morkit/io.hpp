#ifndef MORKIT_IO_HPP
#define MORKIT_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "morkit/types.hpp"

namespace morkit
{

// Matrix Market exchange format. Writers always emit `general` storage with
// 17 significant digits, so a write/read cycle is exact.

void write_matrix_market(const SparseMatrixR& a, const std::string& path);
void write_matrix_market(const MatrixXr& a, const std::string& path);

/// Accepts `coordinate` (general or symmetric; symmetric files store the
/// lower triangle, which is mirrored) and `array` files.
SparseMatrixR read_matrix_market_sparse(const std::string& path);
MatrixXr read_matrix_market_dense(const std::string& path);

std::string format_matrix_market(const SparseMatrixR& a);
std::string format_matrix_market(const MatrixXr& a);

/// `%.17g`
std::string format_real(Real x);

/// Ordered `key = value` pairs; `#` starts a comment line.
using KeyValueList = std::vector<std::pair<std::string, std::string>>;

KeyValueList read_key_values(const std::string& path);
std::string format_key_values(const KeyValueList& kv);

/// Writes to a temporary sibling file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace morkit

#endif // MORKIT_IO_HPP
