#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptalg {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Default tolerance for identity checks.
inline constexpr double kDefaultTol = 1e-10;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by eig_sym_tridiag when an eigenvalue fails to converge.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Dense complex matrix, row-major, immutable value type.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  /// Copy with a single entry replaced.
  Matrix with_entry(std::size_t r, std::size_t c, Complex value) const;
  /// Contiguous sub-block [r0, r0+nr) x [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Vector mat_vec(const Matrix& a, std::span<const Complex> x);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, Complex s);
Matrix dagger(const Matrix& a);
Matrix transpose(const Matrix& a);
Matrix conj(const Matrix& a);
Matrix kron(const Matrix& a, const Matrix& b);
/// AB + BA.
Matrix anticommutator(const Matrix& a, const Matrix& b);
/// AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);
Complex trace(const Matrix& a);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, const Matrix& a);

/// Largest absolute entry.
double max_abs(const Matrix& a);
double max_abs(std::span<const Complex> v);

/// max|actual - expected| / max(1, max|expected|). Every identity check in
/// the library reports this number.
double residual(const Matrix& actual, const Matrix& expected);
double residual(std::span<const Complex> actual, std::span<const Complex> expected);

// Vector helpers.
Vector vec_scale(std::span<const Complex> v, Complex s);
Vector vec_sub(std::span<const Complex> a, std::span<const Complex> b);
Vector vec_conj(std::span<const Complex> v);
double euclidean_norm(std::span<const Complex> v);
/// Plain bilinear sum, no conjugation.
Complex dot(std::span<const Complex> a, std::span<const Complex> b);

struct Eigen2 {
  Complex lambda_plus;
  Complex lambda_minus;
  Vector v_plus;
  Vector v_minus;
  /// Set for a defective matrix; then v_plus == v_minus.
  bool defective = false;
};

/// Closed-form 2x2 eigensystem. lambda_plus = tr/2 + sqrt((tr/2)^2 - det)
/// using the principal complex square root. Eigenvectors have unit
/// Euclidean norm with the first nonzero component positive real.
Eigen2 eig_2x2(const Matrix& a);

struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;  // size diag.size() - 1

  std::size_t size() const noexcept { return diag.size(); }
  Matrix to_matrix() const;
};

/// All eigenvalues of a real symmetric tridiagonal matrix, ascending.
/// Implicit QL with Wilkinson shifts; at most 50 sweeps per eigenvalue.
std::vector<double> eig_sym_tridiag(const SymTridiag& t, double tol = kDefaultTol);

}  // namespace ptalg
