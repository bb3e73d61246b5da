#include "core/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/tolerances.hpp"

namespace qae {

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<complexd>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

complexd ComplexMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
  complexd t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix add: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix subtract: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complexd scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix multiply: shape mismatch");
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const complexd lhs_rk = (*this)(r, k);
      if (lhs_rk == complexd(0.0)) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += lhs_rk * rhs(k, c);
    }
  }
  return out;
}

std::vector<complexd> ComplexMatrix::operator*(const std::vector<complexd>& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix apply: shape mismatch");
  std::vector<complexd> out(rows_, complexd(0.0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

PureState::PureState(std::vector<complexd> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw std::invalid_argument("PureState: empty amplitude vector");
  double norm_sq = 0.0;
  for (const auto& a : amps_) norm_sq += std::norm(a);
  const double norm = std::sqrt(norm_sq);
  if (norm < kTol.norm_zero) throw std::invalid_argument("PureState: zero vector");
  for (auto& a : amps_) a /= norm;
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("PureState::basis: index out of range");
  std::vector<complexd> amps(dim, complexd(0.0));
  amps[index] = 1.0;
  return PureState(std::move(amps));
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const complexd scale = a(ar, ac);
      if (scale == complexd(0.0)) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = scale * b(br, bc);
    }
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<complexd> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a[i] * b[j];
  return PureState(std::move(amps));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_first,
                            std::size_t dim_second, Subsystem over) {
  const std::size_t dim = dim_first * dim_second;
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("partial_trace: dimensions do not factor the matrix");
  if (over == Subsystem::second) {
    ComplexMatrix out(dim_first, dim_first);
    for (std::size_t a = 0; a < dim_first; ++a)
      for (std::size_t ap = 0; ap < dim_first; ++ap) {
        complexd sum = 0.0;
        for (std::size_t b = 0; b < dim_second; ++b)
          sum += m(a * dim_second + b, ap * dim_second + b);
        out(a, ap) = sum;
      }
    return out;
  }
  ComplexMatrix out(dim_second, dim_second);
  for (std::size_t b = 0; b < dim_second; ++b)
    for (std::size_t bp = 0; bp < dim_second; ++bp) {
      complexd sum = 0.0;
      for (std::size_t a = 0; a < dim_first; ++a)
        sum += m(a * dim_second + b, a * dim_second + bp);
      out(b, bp) = sum;
    }
  return out;
}

ComplexMatrix outer(const PureState& v) {
  ComplexMatrix out(v.dim(), v.dim());
  for (std::size_t r = 0; r < v.dim(); ++r)
    for (std::size_t c = 0; c < v.dim(); ++c) out(r, c) = v[r] * std::conj(v[c]);
  return out;
}

complexd inner(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  complexd sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

complexd expectation(const PureState& v, const ComplexMatrix& m) {
  if (m.rows() != v.dim() || m.cols() != v.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  const std::vector<complexd> mv = m * v.amplitudes();
  complexd sum = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) sum += std::conj(v[i]) * mv[i];
  return sum;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m.dagger() * m, ComplexMatrix::identity(m.rows())) <= tol;
}

void require_unitary(const ComplexMatrix& m, double tol, const char* who) {
  if (!is_unitary(m, tol))
    throw std::invalid_argument(std::string(who) + ": matrix is not unitary within tolerance");
}

void require_density(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(who) + ": density matrix not square");
  if (max_abs_diff(m, m.dagger()) > kTol.hermiticity)
    throw std::invalid_argument(std::string(who) + ": density matrix not Hermitian");
  if (std::abs(m.trace() - complexd(1.0)) > kTol.density_trace)
    throw std::invalid_argument(std::string(who) + ": density matrix trace is not 1");
}

}  // namespace qae
