#include "core/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qae {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_matrix(std::ostream& os, const ComplexMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c != 0) os << ' ';
      os << format_double(m(r, c).real()) << ' ' << format_double(m(r, c).imag());
    }
    os << '\n';
  }
}

ComplexMatrix read_matrix(std::istream& is) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(is >> rows >> cols)) throw std::runtime_error("matrix read: bad header line");
  if (rows == 0 || cols == 0) throw std::runtime_error("matrix read: zero dimension");
  if (rows > 1u << 20 || cols > 1u << 20) throw std::runtime_error("matrix read: absurd dimension");
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      double re = 0.0;
      double im = 0.0;
      if (!(is >> re >> im)) throw std::runtime_error("matrix read: truncated entries");
      m(r, c) = complexd(re, im);
    }
  return m;
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_matrix(os, m);
  if (!os) throw std::runtime_error("write failed: " + path);
}

ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_matrix(is);
}

}  // namespace qae
