#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace anisoq {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
// Row-major 3x3 real matrix, m[row][col].
using Mat3 = std::array<Vec3, 3>;

// Dense complex matrix sized for the few-qubit work in this library
// (dimension 2, 3, 4 or 8). Storage is row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::initializer_list<Complex> row_major);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix outer(std::span<const Complex> ket);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  // Largest entrywise modulus.
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Kronecker product: (a ⊗ b)(i*rb + k, j*cb + l) = a(i,j) * b(k,l).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z, with Z|0> = +|0>.
const ComplexMatrix& pauli(int index);

// Throws ContractViolation naming the first entry with |m - m^dagger| > tol.
void require_hermitian(const ComplexMatrix& m, double tol = 1e-12);
void require_unitary(const ComplexMatrix& u, double tol = 1e-10);

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column i pairs with values[i]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix (dimension <= 8).
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

struct SymmetricEigenSystem3 {
  Vec3 values;   // descending
  Mat3 vectors;  // vectors[row][i] is row component of eigenvector i
};

// Real Jacobi for 3x3 symmetric matrices. Eigenvalues in (-1e-9, 0) are
// clamped to 0 since every caller feeds a Gram matrix.
SymmetricEigenSystem3 symmetric3_eigensystem(const Mat3& s);
Vec3 real_symmetric3_eigenvalues(const Mat3& s);

// Rebuilds V diag(values) V^dagger.
ComplexMatrix reconstruct(const EigenSystem& es);

// Small real 3-vector / 3x3 helpers.
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 normalized(const Vec3& a);
Vec3 operator*(const Mat3& m, const Vec3& v);
Mat3 transpose(const Mat3& m);
Mat3 operator*(const Mat3& a, const Mat3& b);

}  // namespace anisoq
