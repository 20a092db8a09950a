#pragma once

#include "weil/algebra.hpp"

#include <string>

namespace weil {

/// Text form of an algebra table.  Fields: `dim`, `unit`, `aug`, optional
/// `labels`, optional `gens`, and one `sc i j -> k:v k:v ...` line per basis
/// pair (i, j) with i <= j that has a nonzero product.  Lines with i > j and
/// duplicate (i, j) lines are rejected by the parser instead of being folded
/// into their mirror.
std::string serialize_algebra(const WeilAlgebra& a);

/// Parses the format written by serialize_algebra.  Throws
/// std::runtime_error with a line number on malformed input.
AlgebraPtr parse_algebra(const std::string& text, const std::string& name = "algebra");

AlgebraPtr load_algebra_file(const std::string& path);
void save_algebra_file(const WeilAlgebra& a, const std::string& path);

} // namespace weil
