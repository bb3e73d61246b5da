#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qae {

using complexd = std::complex<double>;

// Dense row-major complex matrix. Deliberately small: just the value
// semantics and arithmetic the toolkit needs, with the heavy decompositions
// in linalg.hpp.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::initializer_list<std::initializer_list<complexd>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  complexd& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const complexd& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  complexd* data() { return data_.data(); }
  const complexd* data() const { return data_.data(); }

  ComplexMatrix dagger() const;
  complexd trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(complexd scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(complexd scale, ComplexMatrix m) { return m *= scale; }
  friend ComplexMatrix operator*(ComplexMatrix m, complexd scale) { return m *= scale; }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  std::vector<complexd> operator*(const std::vector<complexd>& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complexd> data_;
};

// Unit-norm complex vector with its dimension. The constructor normalizes
// and rejects the zero vector, so downstream code can rely on the norm.
class PureState {
 public:
  explicit PureState(std::vector<complexd> amplitudes);

  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  const std::vector<complexd>& amplitudes() const { return amps_; }
  const complexd& operator[](std::size_t i) const { return amps_[i]; }

 private:
  std::vector<complexd> amps_;
};

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

enum class Subsystem { first, second };

// Partial trace of a (dim_first * dim_second) square matrix over the tagged
// subsystem; indices follow the trash-major convention i = a * dim_second + b.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_first,
                            std::size_t dim_second, Subsystem over);

ComplexMatrix outer(const PureState& v);
complexd inner(const PureState& a, const PureState& b);
// <v|M|v>
complexd expectation(const PureState& v, const ComplexMatrix& m);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_unitary(const ComplexMatrix& m, double tol);
void require_unitary(const ComplexMatrix& m, double tol, const char* who);
void require_density(const ComplexMatrix& m, const char* who);

}  // namespace qae
