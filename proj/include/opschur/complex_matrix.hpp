#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "opschur/errors.hpp"

namespace opschur::linalg {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Zero rows/columns are allowed so that
// factorizations of rank-deficient matrices have an honest empty shape.
class ComplexMatrix {
  public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  private:
    std::size_t rows_, cols_;
    std::vector<Complex> data_;
};

// Complex square matrix with exact conjugate symmetry. The constructor
// symmetrizes via (M + M*)/2 and records the applied correction norm;
// input with ||M - M*||_F > 1e-6 * ||M||_F is rejected rather than repaired.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(const ComplexMatrix& m);

    static HermitianMatrix identity(std::size_t n) { return HermitianMatrix(ComplexMatrix::identity(n)); }
    static HermitianMatrix zero(std::size_t n) { return HermitianMatrix(ComplexMatrix(n, n)); }

    std::size_t dim() const { return dim_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const ComplexMatrix& matrix() const { return m_; }
    double frobenius_norm() const { return m_.frobenius_norm(); }

    // ||M - (M + M*)/2||_F applied at construction; 0 for exactly Hermitian input.
    double correction_norm() const { return correction_; }

  private:
    std::size_t dim_;
    ComplexMatrix m_;
    double correction_;
};

}  // namespace opschur::linalg
