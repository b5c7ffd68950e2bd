#pragma once

// Dense complex matrices for desk-scale quantum simulation: arithmetic,
// Kronecker products, partial traces/transposes over arbitrary tensor
// factors, and a cyclic Jacobi eigensolver for Hermitian matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ctcsim/errors.hpp"

namespace ctcsim {

using Complex = std::complex<double>;

inline constexpr double kTolHermitian = 1e-10;
inline constexpr double kTolEigen = 1e-10;

// Local dimensions of the tensor factors of a composite system, most
// significant factor first.
struct SubsystemShape {
  std::vector<std::size_t> dims;

  SubsystemShape() = default;
  SubsystemShape(std::initializer_list<std::size_t> d) : dims(d) { validate(); }
  explicit SubsystemShape(std::vector<std::size_t> d) : dims(std::move(d)) { validate(); }

  static SubsystemShape qubits(std::size_t n) {
    return SubsystemShape(std::vector<std::size_t>(n, 2));
  }

  std::size_t factors() const noexcept { return dims.size(); }
  std::size_t total() const noexcept {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  }

  // Shape with factor `index` removed.
  SubsystemShape without(std::size_t index) const {
    if (index >= dims.size()) throw ShapeMismatch("subsystem index out of range");
    std::vector<std::size_t> rest = dims;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(index));
    return SubsystemShape(std::move(rest));
  }

  friend bool operator==(const SubsystemShape&, const SubsystemShape&) = default;

 private:
  void validate() const {
    for (auto d : dims)
      if (d == 0) throw ShapeMismatch("subsystem dimensions must be positive");
  }
};

inline std::string to_string(const SubsystemShape& s) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < s.dims.size(); ++i) os << (i ? "," : "") << s.dims[i];
  os << ']';
  return os.str();
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw ShapeMismatch("entry count does not match rows*cols");
    for (const auto& z : data_)
      if (!is_finite(z)) throw std::invalid_argument("matrix entries must be finite");
  }

  Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static Matrix column(std::span<const Complex> v) {
    return Matrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
  }

  // |v><w|
  static Matrix outer(std::span<const Complex> v, std::span<const Complex> w) {
    Matrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  std::vector<Complex> diagonal_entries() const {
    std::vector<Complex> d(std::min(rows_, cols_));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*this)(i, i);
    return d;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product: inner dimensions differ");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend std::vector<Complex> operator*(const Matrix& a, std::span<const Complex> v) {
    if (a.cols_ != v.size()) throw ShapeMismatch("matrix-vector product: dimensions differ");
    std::vector<Complex> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline double max_abs(const Matrix& m) {
  double r = 0.0;
  for (const auto& z : m.entries()) r = std::max(r, std::abs(z));
  return r;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

inline double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

// Hilbert-Schmidt inner product Tr(a† b).
inline Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("hs_inner: shapes differ");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    s += std::conj(a.entries()[i]) * b.entries()[i];
  return s;
}

inline double hermiticity_defect(const Matrix& m) {
  if (!m.is_square()) throw ShapeMismatch("hermiticity requires a square matrix");
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
  return r;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

inline std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> v(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) v[i * b.size() + k] = a[i] * b[k];
  return v;
}

namespace detail {

// Splits the factor list around `index` into (left block, factor, right block).
struct FactorSplit {
  std::size_t left;
  std::size_t mid;
  std::size_t right;
};

inline FactorSplit split_at(const Matrix& m, const SubsystemShape& shape, std::size_t index) {
  if (!m.is_square()) throw ShapeMismatch("operation requires a square matrix");
  if (shape.total() != m.rows())
    throw ShapeMismatch("subsystem shape " + to_string(shape) + " does not match matrix dimension " +
                        std::to_string(m.rows()));
  if (index >= shape.factors()) throw ShapeMismatch("subsystem index out of range");
  FactorSplit s{1, shape.dims[index], 1};
  for (std::size_t i = 0; i < index; ++i) s.left *= shape.dims[i];
  for (std::size_t i = index + 1; i < shape.factors(); ++i) s.right *= shape.dims[i];
  return s;
}

}  // namespace detail

// Traces out factor `traced_index`; the result is annotated by shape.without(traced_index).
inline Matrix partial_trace(const Matrix& m, const SubsystemShape& shape, std::size_t traced_index) {
  const auto [L, D, R] = detail::split_at(m, shape, traced_index);
  Matrix out(L * R, L * R);
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t lp = 0; lp < L; ++lp)
        for (std::size_t rp = 0; rp < R; ++rp) {
          Complex s = 0.0;
          for (std::size_t j = 0; j < D; ++j) s += m((l * D + j) * R + r, (lp * D + j) * R + rp);
          out(l * R + r, lp * R + rp) = s;
        }
  return out;
}

// Transposes the indices of factor `index` only.
inline Matrix partial_transpose(const Matrix& m, const SubsystemShape& shape, std::size_t index) {
  const auto [L, D, R] = detail::split_at(m, shape, index);
  Matrix out(m.rows(), m.cols());
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t j = 0; j < D; ++j)
      for (std::size_t r = 0; r < R; ++r)
        for (std::size_t lp = 0; lp < L; ++lp)
          for (std::size_t jp = 0; jp < D; ++jp)
            for (std::size_t rp = 0; rp < R; ++rp)
              out((l * D + j) * R + r, (lp * D + jp) * R + rp) =
                  m((l * D + jp) * R + r, (lp * D + j) * R + rp);
  return out;
}

// I ⊗ op ⊗ I with `op` acting on factor `index`.
inline Matrix embed(const Matrix& op, const SubsystemShape& shape, std::size_t index) {
  if (index >= shape.factors() || op.rows() != shape.dims[index] || !op.is_square())
    throw ShapeMismatch("operator does not fit subsystem " + std::to_string(index));
  std::size_t left = 1, right = 1;
  for (std::size_t i = 0; i < index; ++i) left *= shape.dims[i];
  for (std::size_t i = index + 1; i < shape.factors(); ++i) right *= shape.dims[i];
  return kron(kron(Matrix::identity(left), op), Matrix::identity(right));
}

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // orthonormal columns, same order as values
};

// Cyclic Jacobi eigensolver for Hermitian matrices. Each rotation first
// removes the phase of the pivot, then applies a real Givens rotation.
inline EigenDecomposition eig_hermitian(const Matrix& input, double tol_herm = kTolHermitian) {
  const double defect = hermiticity_defect(input);
  if (defect > tol_herm) {
    std::ostringstream os;
    os << "eig_hermitian: matrix is not Hermitian (max |m - m^dagger| entry = " << defect << ")";
    throw NotHermitian(os.str(), defect);
  }
  const std::size_t n = input.rows();
  Matrix a = 0.5 * (input + input.adjoint());
  Matrix v = Matrix::identity(n);

  const double scale = std::max(1.0, frobenius_norm(a));
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) < 1e-14 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
        const Complex g_pp = c;
        const Complex g_pq = s;
        const Complex g_qp = -s * std::conj(phase);
        const Complex g_qq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

inline std::vector<double> eigvals_hermitian(const Matrix& m) { return eig_hermitian(m).values; }

// V f(Λ) V† for a Hermitian matrix.
template <typename F>
Matrix hermitian_function(const Matrix& m, F&& f) {
  const auto e = eig_hermitian(m);
  const std::size_t n = m.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += fk * e.vectors(i, k) * std::conj(e.vectors(j, k));
  }
  return out;
}

}  // namespace ctcsim
