#pragma once

#include "leja/matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <variant>

namespace leja {

using AnyVector = std::variant<Vector<double>, Vector<cplx>>;

/// One entry per line, `re` or `re im`; blank lines and lines starting with
/// '#' are skipped. The result is complex if any line carries two values.
AnyVector read_vector(std::istream& is);
AnyVector load_vector(const std::filesystem::path& path);

/// One entry per line with 17 significant digits; complex vectors write `re im`.
template <class S>
void write_vector(std::ostream& os, const Vector<S>& v);

} // namespace leja
