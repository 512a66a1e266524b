#include "anisoq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "anisoq/errors.hpp"

namespace anisoq {

namespace {

constexpr double kOffDiagonalTolerance = 1e-13;
constexpr int kMaxSweeps = 64;
constexpr double kClampTolerance = 1e-9;

// Rotation angle for a real symmetric 2x2 block [[a, b], [b, d]] with b != 0.
// Returns (c, s) such that the block is diagonalized by [[c, s], [-s, c]].
std::pair<double, double> jacobi_rotation(double a, double d, double b) {
  const double theta = (d - a) / (2.0 * b);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c};
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

double frobenius(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<Complex> row_major)
    : rows_(rows), cols_(cols), data_(row_major) {
  if (data_.size() != rows * cols)
    throw ContractViolation("ComplexMatrix: initializer size does not match shape");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket) {
  ComplexMatrix m(ket.size(), ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m = *this;
  for (auto& z : m.data_) z = std::conj(z);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ContractViolation("ComplexMatrix: shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ContractViolation("ComplexMatrix: shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw ContractViolation("ComplexMatrix: shape mismatch in product");
  ComplexMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols_ != v.size()) throw ContractViolation("ComplexMatrix: shape mismatch in apply");
  std::vector<Complex> out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
  return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

const ComplexMatrix& pauli(int index) {
  using namespace std::complex_literals;
  static const std::array<ComplexMatrix, 4> basis = {
      ComplexMatrix(2, 2, {1.0, 0.0, 0.0, 1.0}),
      ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}),
      ComplexMatrix(2, 2, {0.0, -1i, 1i, 0.0}),
      ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}),
  };
  if (index < 0 || index > 3) throw ContractViolation("pauli: index must be in 0..3");
  return basis[static_cast<std::size_t>(index)];
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) {
    std::ostringstream os;
    os << "matrix is not square (" << m.rows() << "x" << m.cols() << ")";
    throw ContractViolation(os.str());
  }
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      const double dev = std::abs(m(i, j) - std::conj(m(j, i)));
      if (dev > tol) {
        std::ostringstream os;
        os << "matrix is not Hermitian: entry (" << i << "," << j << ") deviates from the "
           << "conjugate of (" << j << "," << i << ") by " << dev;
        throw ContractViolation(os.str());
      }
    }
}

void require_unitary(const ComplexMatrix& u, double tol) {
  if (!u.is_square()) throw ContractViolation("unitary: matrix is not square");
  const ComplexMatrix prod = u * u.adjoint();
  const double dev = (prod - ComplexMatrix::identity(u.rows())).max_abs();
  if (dev > tol) {
    std::ostringstream os;
    os << "matrix is not unitary: max |U U^dagger - I| = " << dev;
    throw ContractViolation(os.str());
  }
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  require_hermitian(m);
  const std::size_t n = m.rows();
  if (n > 8) throw ContractViolation("hermitian_eigensystem: dimension must be <= 8");

  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kOffDiagonalTolerance * std::max(1.0, frobenius(a));

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) >= threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase out apq, then rotate the real block.
        const Complex phase = std::conj(apq) / mag;
        const auto [c, s] = jacobi_rotation(a(p, p).real(), a(q, q).real(), mag);
        const Complex jpp = c, jpq = s, jqp = -s * phase, jqq = c * phase;

        for (std::size_t r = 0; r < n; ++r) {
          const Complex ap = a(r, p), aq = a(r, q);
          a(r, p) = ap * jpp + aq * jqp;
          a(r, q) = ap * jpq + aq * jqq;
        }
        for (std::size_t col = 0; col < n; ++col) {
          const Complex ap = a(p, col), aq = a(q, col);
          a(p, col) = std::conj(jpp) * ap + std::conj(jqp) * aq;
          a(q, col) = std::conj(jpq) * ap + std::conj(jqq) * aq;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t r = 0; r < n; ++r) {
          const Complex vp = v(r, p), vq = v(r, q);
          v(r, p) = vp * jpp + vq * jqp;
          v(r, q) = vp * jpq + vq * jqq;
        }
      }
  }
  if (off_diagonal_norm(a) >= threshold)
    throw ConsistencyError("hermitian_eigensystem: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });
  EigenSystem es{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    es.values[i] = a(order[i], order[i]).real();
    for (std::size_t r = 0; r < n; ++r) es.vectors(r, i) = v(r, order[i]);
  }
  return es;
}

SymmetricEigenSystem3 symmetric3_eigensystem(const Mat3& s) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(s[i][j] - s[j][i]) > 1e-12) {
        std::ostringstream os;
        os << "symmetric3_eigensystem: entry (" << i << "," << j << ") differs from (" << j
           << "," << i << ") by " << std::abs(s[i][j] - s[j][i]);
        throw ContractViolation(os.str());
      }

  Mat3 a = s;
  Mat3 v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  auto off = [&] {
    return std::sqrt(2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]));
  };
  double scale = 0.0;
  for (const auto& row : a)
    for (double x : row) scale += x * x;
  const double threshold = kOffDiagonalTolerance * std::max(1.0, std::sqrt(scale));

  for (int sweep = 0; sweep < kMaxSweeps && off() >= threshold; ++sweep) {
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const auto [c, sn] = jacobi_rotation(a[p][p], a[q][q], a[p][q]);
        for (int r = 0; r < 3; ++r) {
          const double ap = a[r][p], aq = a[r][q];
          a[r][p] = c * ap - sn * aq;
          a[r][q] = sn * ap + c * aq;
        }
        for (int col = 0; col < 3; ++col) {
          const double ap = a[p][col], aq = a[q][col];
          a[p][col] = c * ap - sn * aq;
          a[q][col] = sn * ap + c * aq;
        }
        a[p][q] = a[q][p] = 0.0;
        for (int r = 0; r < 3; ++r) {
          const double vp = v[r][p], vq = v[r][q];
          v[r][p] = c * vp - sn * vq;
          v[r][q] = sn * vp + c * vq;
        }
      }
  }
  if (off() >= threshold)
    throw ConsistencyError("symmetric3_eigensystem: Jacobi sweeps did not converge");

  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a[x][x] > a[y][y]; });
  SymmetricEigenSystem3 es{};
  for (int i = 0; i < 3; ++i) {
    double lambda = a[order[i]][order[i]];
    if (lambda < 0.0 && lambda > -kClampTolerance) lambda = 0.0;
    es.values[i] = lambda;
    for (int r = 0; r < 3; ++r) es.vectors[r][i] = v[r][order[i]];
  }
  return es;
}

Vec3 real_symmetric3_eigenvalues(const Mat3& s) { return symmetric3_eigensystem(s).values; }

ComplexMatrix reconstruct(const EigenSystem& es) {
  const std::size_t n = es.values.size();
  ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) += es.vectors(i, k) * es.values[k] * std::conj(es.vectors(j, k));
  return m;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

Mat3 transpose(const Mat3& m) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace anisoq
