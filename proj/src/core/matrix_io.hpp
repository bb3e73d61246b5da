#pragma once

#include <iosfwd>
#include <string>

#include "core/matrix.hpp"

namespace qae {

// Text exchange format: a header line "rows cols" followed by row-major
// "re im" pairs. The writer emits one matrix row per line with shortest
// round-trip formatting; the reader is whitespace-insensitive.
void write_matrix(std::ostream& os, const ComplexMatrix& m);
ComplexMatrix read_matrix(std::istream& is);

void save_matrix(const std::string& path, const ComplexMatrix& m);
ComplexMatrix load_matrix(const std::string& path);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double x);

}  // namespace qae
