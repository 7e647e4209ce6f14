#include "hodgevar/exact.hpp"

#include <stdexcept>

namespace hodgevar::exact {

Rat parse_decimal(const std::string& text) {
  std::string s = text;
  bool neg = false;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
  }
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat num(s.substr(pos, slash - pos));
    Rat den(s.substr(slash + 1));
    Rat r = num / den;
    return neg ? -r : r;
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false;
  long expo = 0;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal: " + text);
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      expo = std::stol(s.substr(pos + 1));
      break;
    } else if (c >= '0' && c <= '9') {
      digits += c;
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("bad decimal: " + text);
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad decimal: " + text);
  Rat r{boost::multiprecision::cpp_int(digits)};
  boost::multiprecision::cpp_int pow10 = 1;
  long down = frac_digits - expo;
  for (long i = 0; i < std::abs(down); ++i) pow10 *= 10;
  if (down > 0)
    r /= Rat(pow10);
  else
    r *= Rat(pow10);
  return neg ? -r : r;
}

Scalar Scalar::from_decimal(const std::string& re_text, const std::string& im_text) {
  return Scalar(parse_decimal(re_text), parse_decimal(im_text));
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("exact::Matrix: size mismatch in *");
  Matrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& bkj = o.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

Matrix Matrix::adjoint() const {
  Matrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
  return r;
}

bool Matrix::is_zero() const {
  for (const Scalar& s : a_)
    if (!s.is_zero()) return false;
  return true;
}

Matrix Matrix::select_rows(const std::vector<int>& idx) const {
  Matrix r(int(idx.size()), cols_);
  for (int i = 0; i < int(idx.size()); ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(idx[i], j);
  return r;
}

Matrix Matrix::select_cols(const std::vector<int>& idx) const {
  Matrix r(rows_, int(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < int(idx.size()); ++j) r.at(i, j) = at(i, idx[j]);
  return r;
}

Matrix Matrix::block(const std::vector<int>& ridx, const std::vector<int>& cidx) const {
  return select_rows(ridx).select_cols(cidx);
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
  if (a.cols_ == 0) return b;
  if (b.cols_ == 0) return a;
  if (a.rows_ != b.rows_) throw std::invalid_argument("exact::Matrix: hcat size mismatch");
  Matrix r(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
  }
  return r;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
  if (a.rows_ == 0) return b;
  if (b.rows_ == 0) return a;
  if (a.cols_ != b.cols_) throw std::invalid_argument("exact::Matrix: vcat size mismatch");
  Matrix r(a.rows_ + b.rows_, a.cols_);
  for (int j = 0; j < a.cols_; ++j) {
    for (int i = 0; i < a.rows_; ++i) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows_; ++i) r.at(a.rows_ + i, j) = b.at(i, j);
  }
  return r;
}

std::vector<int> Matrix::rref() {
  std::vector<int> pivots;
  int lead = 0;
  for (int col = 0; col < cols_ && lead < rows_; ++col) {
    int pr = -1;
    for (int i = lead; i < rows_; ++i)
      if (!at(i, col).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != lead)
      for (int j = 0; j < cols_; ++j) std::swap(at(pr, j), at(lead, j));
    Scalar inv = Scalar(1) / at(lead, col);
    for (int j = col; j < cols_; ++j) at(lead, j) = at(lead, j) * inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == lead || at(i, col).is_zero()) continue;
      Scalar f = at(i, col);
      for (int j = col; j < cols_; ++j) at(i, j) = at(i, j) - f * at(lead, j);
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

int Matrix::rank() const {
  Matrix m = *this;
  return int(m.rref().size());
}

Matrix Matrix::kernel_basis() const {
  Matrix m = *this;
  std::vector<int> pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(cols_, int(free_cols.size()));
  for (int fi = 0; fi < int(free_cols.size()); ++fi) {
    int fc = free_cols[fi];
    k.at(fc, fi) = Scalar(1);
    for (int pi = 0; pi < int(pivots.size()); ++pi) k.at(pivots[pi], fi) = -m.at(pi, fc);
  }
  return k;
}

Matrix Matrix::column_space_basis() const {
  Matrix m = *this;
  std::vector<int> pivots = m.rref();
  return select_cols(pivots);
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("exact::Matrix: inverse of non-square");
  Matrix aug = hcat(*this, identity(rows_));
  std::vector<int> pivots = aug.rref();
  if (int(pivots.size()) != rows_) throw std::invalid_argument("exact::Matrix: singular");
  std::vector<int> right(rows_);
  for (int j = 0; j < rows_; ++j) right[j] = cols_ + j;
  return aug.select_cols(right);
}

Matrix Matrix::pinv_hermitian() const {
  Matrix v = column_space_basis();
  if (v.cols() == 0) return Matrix(rows_, cols_);
  Matrix s = v.adjoint() * (*this) * v;
  return v * s.inverse() * v.adjoint();
}

Matrix Matrix::projector_onto_columns() const {
  Matrix v = column_space_basis();
  if (v.cols() == 0) return Matrix(rows_, rows_);
  Matrix g = v.adjoint() * v;
  return v * g.inverse() * v.adjoint();
}

Eigen::MatrixXcd Matrix::to_complex() const {
  Eigen::MatrixXcd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j).to_complex();
  return m;
}

}  // namespace hodgevar::exact
