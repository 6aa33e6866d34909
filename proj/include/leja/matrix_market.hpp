#pragma once

#include "leja/matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <variant>

namespace leja {

/// A matrix read from a file keeps the field it was stored with.
using AnyMatrix = std::variant<RealSparse, ComplexSparse>;

/// Matrix Market reader: coordinate or array format; real, integer, pattern
/// or complex field; general, symmetric, skew-symmetric or hermitian storage
/// (expanded to full). Duplicate coordinate entries are summed. Errors carry
/// the offending line.
AnyMatrix read_matrix_market(std::istream& is);
AnyMatrix load_matrix(const std::filesystem::path& path);

/// Coordinate/general output with 17 significant digits (round-trips exactly).
template <class S>
void write_matrix_market(std::ostream& os, const SparseMatrix<S>& a);

bool is_complex(const AnyMatrix& m);

} // namespace leja
