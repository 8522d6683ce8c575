#include "ptalg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ptalg {

namespace {

void require_finite(std::span<const Complex> entries) {
  for (const auto& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ParameterError("matrix entry is not finite");
    }
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

template <typename F>
Matrix map_entries(const Matrix& a, F&& f) {
  std::vector<Complex> out(a.entries().begin(), a.entries().end());
  for (auto& z : out) z = f(z);
  return Matrix(a.rows(), a.cols(), std::move(out));
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  if (entries_.size() != rows * cols) throw DimensionError("entry count does not match shape");
  require_finite(entries_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix dimensions must be positive");
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged initializer list");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  require_finite(entries_);
}

Matrix Matrix::identity(std::size_t n) {
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return Matrix(n, n, std::move(e));
}

Matrix Matrix::diagonal(std::span<const Complex> diag) {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return Matrix(n, n, std::move(e));
}

Matrix Matrix::with_entry(std::size_t r, std::size_t c, Complex value) const {
  if (r >= rows_ || c >= cols_) throw DimensionError("with_entry: index out of range");
  auto e = entries_;
  e[r * cols_ + c] = value;
  return Matrix(rows_, cols_, std::move(e));
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block: out of range");
  std::vector<Complex> e;
  e.reserve(nr * nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) e.push_back((*this)(r0 + i, c0 + j));
  return Matrix(nr, nc, std::move(e));
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
  }
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  std::vector<Complex> out(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const Complex aip = a(i, p);
      if (aip == Complex{}) continue;
      for (std::size_t j = 0; j < m; ++j) out[i * m + j] += aip * b(p, j);
    }
  }
  return Matrix(n, m, std::move(out));
}

Vector mat_vec(const Matrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) throw DimensionError("mat_vec: dimension mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "add");
  std::vector<Complex> out(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.entries()[i];
  return Matrix(a.rows(), a.cols(), std::move(out));
}

Matrix sub(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "sub");
  std::vector<Complex> out(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.entries()[i];
  return Matrix(a.rows(), a.cols(), std::move(out));
}

Matrix scale(const Matrix& a, Complex s) {
  return map_entries(a, [s](Complex z) { return s * z; });
}

Matrix dagger(const Matrix& a) { return conj(transpose(a)); }

Matrix transpose(const Matrix& a) {
  std::vector<Complex> out(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[j * a.rows() + i] = a(i, j);
  return Matrix(a.cols(), a.rows(), std::move(out));
}

Matrix conj(const Matrix& a) {
  return map_entries(a, [](Complex z) { return std::conj(z); });
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t r = a.rows() * b.rows(), c = a.cols() * b.cols();
  std::vector<Complex> out(r * c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out[(i * b.rows() + k) * c + j * b.cols() + l] = a(i, j) * b(k, l);
  return Matrix(r, c, std::move(out));
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError("anticommutator: operands must be square of equal size");
  }
  const Matrix ab = mat_mul(a, b);
  const Matrix ba = mat_mul(b, a);
  // Summed entrywise as ab[i] + ba[i]; since complex addition commutes this
  // is bitwise symmetric in (a, b).
  return add(ab, ba);
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError("commutator: operands must be square of equal size");
  }
  return sub(mat_mul(a, b), mat_mul(b, a));
}

Complex trace(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("trace: matrix not square");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
Matrix operator-(const Matrix& a, const Matrix& b) { return sub(a, b); }
Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }
Matrix operator*(Complex s, const Matrix& a) { return scale(a, s); }

double max_abs(const Matrix& a) { return max_abs(a.entries()); }

double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

double residual(const Matrix& actual, const Matrix& expected) {
  require_same_shape(actual, expected, "residual");
  return residual(actual.entries(), expected.entries());
}

double residual(std::span<const Complex> actual, std::span<const Complex> expected) {
  if (actual.size() != expected.size()) throw DimensionError("residual: length mismatch");
  double diff = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i)
    diff = std::max(diff, std::abs(actual[i] - expected[i]));
  return diff / std::max(1.0, max_abs(expected));
}

Vector vec_scale(std::span<const Complex> v, Complex s) {
  Vector out(v.begin(), v.end());
  for (auto& z : out) z *= s;
  return out;
}

Vector vec_sub(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("vec_sub: length mismatch");
  Vector out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

Vector vec_conj(std::span<const Complex> v) {
  Vector out(v.begin(), v.end());
  for (auto& z : out) z = std::conj(z);
  return out;
}

double euclidean_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// Unit Euclidean norm, first nonzero component rotated onto the positive real axis.
Vector normalize_phase(Vector v) {
  const double n = euclidean_norm(v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 0.0) {
      const double lead = std::abs(v[i]);
      const Complex phase = std::conj(v[i]) / lead;
      for (auto& w : v) w *= phase / n;
      v[i] = lead / n;
      break;
    }
  }
  return v;
}

Vector eigvec_2x2(const Matrix& a, Complex lambda) {
  // (A - lambda) v = 0; both rows give a candidate null vector.
  const Vector from_row0{a(0, 1), lambda - a(0, 0)};
  const Vector from_row1{lambda - a(1, 1), a(1, 0)};
  const Vector& best = euclidean_norm(from_row0) >= euclidean_norm(from_row1) ? from_row0 : from_row1;
  return normalize_phase(best);
}

}  // namespace

Eigen2 eig_2x2(const Matrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw DimensionError("eig_2x2: matrix must be 2x2");
  const Complex half_tr = 0.5 * (a(0, 0) + a(1, 1));
  const Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const Complex root = std::sqrt(half_tr * half_tr - det);

  Eigen2 out;
  out.lambda_plus = half_tr + root;
  out.lambda_minus = half_tr - root;

  const double scale_ref = std::max(1.0, max_abs(a));
  const bool scalar = std::abs(a(0, 1)) == 0.0 && std::abs(a(1, 0)) == 0.0 &&
                      std::abs(a(0, 0) - a(1, 1)) == 0.0;
  if (scalar) {
    out.v_plus = {1.0, 0.0};
    out.v_minus = {0.0, 1.0};
    return out;
  }
  if (std::abs(root) <= 1e-14 * scale_ref) {
    out.defective = true;
    out.v_plus = eigvec_2x2(a, half_tr);
    out.v_minus = out.v_plus;
    return out;
  }
  out.v_plus = eigvec_2x2(a, out.lambda_plus);
  out.v_minus = eigvec_2x2(a, out.lambda_minus);
  return out;
}

Matrix SymTridiag::to_matrix() const {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i * n + i] = diag[i];
    if (i + 1 < n) {
      e[i * n + i + 1] = offdiag[i];
      e[(i + 1) * n + i] = offdiag[i];
    }
  }
  return Matrix(n, n, std::move(e));
}

std::vector<double> eig_sym_tridiag(const SymTridiag& t, double tol) {
  if (!(tol > 0.0)) throw ParameterError("eig_sym_tridiag: tol must be positive");
  const std::size_t n = t.diag.size();
  if (n == 0) throw DimensionError("eig_sym_tridiag: empty matrix");
  if (t.offdiag.size() + 1 != n) throw DimensionError("eig_sym_tridiag: offdiag length must be n-1");
  for (double x : t.diag)
    if (!std::isfinite(x)) throw ParameterError("eig_sym_tridiag: non-finite diagonal");
  for (double x : t.offdiag)
    if (!std::isfinite(x)) throw ParameterError("eig_sym_tridiag: non-finite off-diagonal");

  constexpr int kMaxSweeps = 50;
  const double deflate = std::min(tol, std::numeric_limits<double>::epsilon());

  std::vector<double> d = t.diag;
  std::vector<double> e(n, 0.0);
  std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());

  // Implicit QL with Wilkinson-type shift, eigenvalue l converges at d[l].
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= deflate * dd) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxSweeps) {
        throw ConvergenceError("eig_sym_tridiag: no convergence for eigenvalue " + std::to_string(l), l);
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t ii = m; ii-- > l;) {
        double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace ptalg
