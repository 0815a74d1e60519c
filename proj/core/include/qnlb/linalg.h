// Copyright 2026 The qnlb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QNLB_LINALG_H
#define QNLB_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qnlb {

using Complex = std::complex<double>;

/// Default absolute tolerance on the minimum eigenvalue for PSD checks.
inline constexpr double kPsdTolerance = 1e-9;

/// Largest matrix (in entries) that kron() will materialize.
inline constexpr std::size_t kMaxKronEntries = std::size_t{1} << 26;

/// Dense row-major complex matrix. Column vectors are n x 1 matrices.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
    static ComplexMatrix identity(std::size_t n);
    /// Builds a real-valued matrix from nested rows; all rows must be equally long.
    static ComplexMatrix from_real(std::initializer_list<std::initializer_list<double>> rows);
    static ComplexMatrix from_rows(const std::vector<std::vector<Complex>> &rows);
    static ComplexMatrix column(std::span<const Complex> entries);
    static ComplexMatrix diagonal(std::span<const double> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Complex> entries() { return data_; }
    std::span<const Complex> entries() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    Complex trace() const;
    /// Induced infinity norm (maximum absolute row sum).
    double norm_inf() const;
    double norm_frobenius() const;
    double max_abs() const;

    /// Largest |m(i,j) - conj(m(j,i))|; infinite for non-square matrices.
    double hermitian_defect() const;
    bool is_hermitian(double tol = 1e-12) const;
    bool is_real(double tol = 0.0) const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Largest entrywise |a - b|; throws on shape mismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix pauli_x();
ComplexMatrix pauli_z();

/// Kronecker product. Throws std::length_error above kMaxKronEntries entries.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
/// a ⊗ a ⊗ ... ⊗ a (count factors); count == 0 yields the 1x1 identity.
ComplexMatrix kron_power(const ComplexMatrix &a, int count);
ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors);

/// <u|v> for column vectors (conjugate-linear in u).
Complex inner(const ComplexMatrix &u, const ComplexMatrix &v);
/// <v|m|v>.
Complex expectation(const ComplexMatrix &v, const ComplexMatrix &m);
/// Tr(a * b) without forming the product.
Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);

struct EigenResult {
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Column i is the unit eigenvector for eigenvalues[i].
    ComplexMatrix eigenvectors;
};

/// Full spectrum of a Hermitian matrix by cyclic Jacobi rotations. Complex input
/// is diagonalized through its 2d x 2d real-symmetric embedding; real input is
/// rotated directly. Throws std::invalid_argument when the input is not square or
/// its Hermitian defect exceeds 1e-10 * max(1, max|m_ij|).
EigenResult hermitian_eigen(const ComplexMatrix &m);

double min_eigenvalue(const ComplexMatrix &m);

/// True iff the minimum eigenvalue is >= -tol.
bool is_psd(const ComplexMatrix &m, double tol = kPsdTolerance);

/// PSD test for a real symmetric 2x2 matrix from its entries: both diagonal
/// entries and the determinant must be >= -tol. Checking a single diagonal
/// entry is not enough ([[0,0],[0,-1]] has zero determinant).
bool is_psd_2x2(double a, double b, double d, double tol = kPsdTolerance);

/// Coefficients of det(tI - m), highest power first (leading 1), by the
/// Faddeev-LeVerrier recursion. Restricted to dimension <= 8.
std::vector<double> char_poly_coeffs(const ComplexMatrix &m);

/// Sign-alternation PSD criterion on characteristic polynomial coefficients.
///
/// Coefficient c_k (multiplying t^{n-k}) counts as zero when
/// |c_k| <= tol * s^k, where s bounds the spectral radius. A trailing run of
/// zeros is allowed; every coefficient before it must be nonzero with sign
/// (-1)^k.
bool horn_psd_test(std::span<const double> coeffs, double tol = kPsdTolerance);

/// Length of the trailing run of coefficients horn_psd_test treats as zero.
/// A PSD matrix of rank r has n - r of them.
std::size_t horn_trailing_zeros(std::span<const double> coeffs, double tol = kPsdTolerance);

}  // namespace qnlb

#endif  // QNLB_LINALG_H
