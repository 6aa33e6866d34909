#pragma once

#include "leja/be_tables.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace leja {

/// Writes the versioned text format:
///   lejatab v1 <kind> <tol-name> <tol-hex>
///   # free-form comment lines
///   leja <kind> <count> + `re im` lines
///   theta <m> <value>
///   ellipse <m> <j> <a> <b>
///   circle <m> <k> <radius>
///   dd <kind> <m> <c> + `re im` lines (m = 0 is the Taylor limit c = 0)
/// All reals use 17 significant digits.
void write_table(std::ostream& os, const TableSet& tables, const std::string& comment = {});

/// Parses write_table output; ParseError carries the offending line.
TableSet read_table(std::istream& is);

/// "lejatab_<kind>_<tol-name>.txt"; custom tolerances use the hex form.
std::string table_file_name(Tolerance tol, PointKind kind);

/// Table directory from the explicit argument, else LEJA_TABLES, else the
/// compiled-in default.
std::filesystem::path resolve_table_dir(const std::string& explicit_dir = {});

/// Loads and caches the tables for (tol, kind) from `dir`. Throws TableError
/// when the file does not exist or does not match the request.
const TableSet& load_tables(const std::filesystem::path& dir, Tolerance tol, PointKind kind);

} // namespace leja
