#ifndef HODGEVAR_EXACT_HPP
#define HODGEVAR_EXACT_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>
#include <vector>

namespace hodgevar::exact {

using Rat = boost::multiprecision::cpp_rational;

// Gaussian rational a + b*i with exact arithmetic.
struct Scalar {
  Rat re = 0;
  Rat im = 0;

  Scalar() = default;
  Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  explicit Scalar(long v) : re(v) {}

  // Exact conversion: every double is a binary rational.
  static Scalar from_double(double r, double i = 0.0) { return Scalar(Rat(r), Rat(i)); }
  // Exact parse of a decimal literal like "-0.05" or "1/20".
  static Scalar from_decimal(const std::string& re_text, const std::string& im_text = "0");

  bool is_zero() const { return re == 0 && im == 0; }
  Scalar conj() const { return Scalar(re, -im); }
  std::complex<double> to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
  }

  Scalar operator-() const { return Scalar(-re, -im); }
  Scalar operator+(const Scalar& o) const { return Scalar(re + o.re, im + o.im); }
  Scalar operator-(const Scalar& o) const { return Scalar(re - o.re, im - o.im); }
  Scalar operator*(const Scalar& o) const {
    return Scalar(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  Scalar operator/(const Scalar& o) const {
    Rat d = o.re * o.re + o.im * o.im;
    return Scalar((re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d);
  }
  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }
};

Rat parse_decimal(const std::string& text);

// Dense matrix over Gaussian rationals.  Sized for the small operator
// blocks of invariant-form models; all eliminations are exact.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix adjoint() const;
  bool is_zero() const;

  Matrix select_rows(const std::vector<int>& idx) const;
  Matrix select_cols(const std::vector<int>& idx) const;
  // Submatrix with the given row and column index lists.
  Matrix block(const std::vector<int>& ridx, const std::vector<int>& cidx) const;

  static Matrix hcat(const Matrix& a, const Matrix& b);
  static Matrix vcat(const Matrix& a, const Matrix& b);

  int rank() const;
  // Columns spanning the kernel; empty matrix (cols = 0) when trivial.
  Matrix kernel_basis() const;
  // Full-column-rank subset of the columns (pivot columns of the rref).
  Matrix column_space_basis() const;
  Matrix inverse() const;
  // Moore-Penrose inverse of a Hermitian matrix.
  Matrix pinv_hermitian() const;
  // Orthogonal projector onto the column span.
  Matrix projector_onto_columns() const;

  Eigen::MatrixXcd to_complex() const;

 private:
  // Reduced row echelon form in place; returns pivot column indices.
  std::vector<int> rref();

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> a_;
};

}  // namespace hodgevar::exact

#endif
