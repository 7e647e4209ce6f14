#include "hodgevar/form.hpp"

#include <sstream>

namespace hodgevar {

std::set<std::pair<int, int>> Form::bidegrees(double eps) const {
  std::set<std::pair<int, int>> out;
  if (!alg_) return out;
  for (int id = 0; id < alg_->dim(); ++id)
    if (std::abs(v_[id]) > eps) {
      Bidegree b = alg_->bidegree(id);
      out.insert({b.p, b.q});
    }
  return out;
}

std::optional<Bidegree> Form::pure_type(double eps) const {
  auto degs = bidegrees(eps);
  if (degs.size() != 1) return std::nullopt;
  return Bidegree{degs.begin()->first, degs.begin()->second};
}

Eigen::VectorXcd Form::block(int p, int q) const {
  if (!alg_) return {};
  const auto& ids = alg_->block(p, q);
  Eigen::VectorXcd out(ids.size());
  for (int i = 0; i < int(ids.size()); ++i) out[i] = v_[ids[i]];
  return out;
}

Form Form::projected(int p, int q) const {
  if (!alg_) return {};
  Form out(*alg_);
  for (int id : alg_->block(p, q)) out.v_[id] = v_[id];
  return out;
}

Form Form::operator+(const Form& o) const {
  if (!alg_) return o;
  if (!o.alg_) return *this;
  return Form(*alg_, v_ + o.v_);
}

Form Form::operator-(const Form& o) const {
  if (!o.alg_) return *this;
  if (!alg_) return Form(*o.alg_, -o.v_);
  return Form(*alg_, v_ - o.v_);
}

Form Form::operator*(Complex c) const {
  if (!alg_) return {};
  return Form(*alg_, v_ * c);
}

std::string Form::describe(double eps) const {
  if (!alg_) return "0";
  std::ostringstream os;
  bool first = true;
  for (int id = 0; id < alg_->dim(); ++id) {
    Complex c = v_[id];
    if (std::abs(c) <= eps) continue;
    if (!first) os << " + ";
    os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)*" << alg_->name(id);
    first = false;
  }
  return first ? "0" : os.str();
}

Form wedge(const Form& a, const Form& b) {
  if (a.is_unset() || b.is_unset()) return {};
  const Algebra& alg = *a.algebra();
  Form out(alg);
  const auto& va = a.coeffs();
  const auto& vb = b.coeffs();
  for (int i = 0; i < alg.dim(); ++i) {
    if (va[i] == Complex(0, 0)) continue;
    for (int j = 0; j < alg.dim(); ++j) {
      if (vb[j] == Complex(0, 0)) continue;
      auto [sign, id] = alg.mul(i, j);
      if (sign != 0) out.coeffs()[id] += double(sign) * va[i] * vb[j];
    }
  }
  return out;
}

Form conjugate(const Form& a) {
  if (a.is_unset()) return {};
  const Algebra& alg = *a.algebra();
  Form out(alg);
  for (int id = 0; id < alg.dim(); ++id) {
    Complex c = a.coeffs()[id];
    if (c == Complex(0, 0)) continue;
    auto [sign, target] = alg.conj(id);
    out.coeffs()[target] += double(sign) * std::conj(c);
  }
  return out;
}

}  // namespace hodgevar
