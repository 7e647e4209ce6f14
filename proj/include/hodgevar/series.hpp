#ifndef HODGEVAR_SERIES_HPP
#define HODGEVAR_SERIES_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <numeric>
#include <vector>

#include "hodgevar/config.hpp"
#include "hodgevar/errors.hpp"
#include "hodgevar/form.hpp"

namespace hodgevar {

// Coefficient-space operations for series terms.  Default works for any
// type with +, * Complex and a norm; specializations cover Eigen types
// where a default-constructed value means zero.
template <class C>
struct CoeffOps {
  static C add(const C& a, const C& b) { return a + b; }
  static C scale(const C& a, Complex c) { return a * c; }
  static double norm(const C& a) { return a.norm(); }
};

template <>
struct CoeffOps<Complex> {
  static Complex add(Complex a, Complex b) { return a + b; }
  static Complex scale(Complex a, Complex c) { return a * c; }
  static double norm(Complex a) { return std::abs(a); }
};

template <>
struct CoeffOps<Eigen::MatrixXcd> {
  static Eigen::MatrixXcd add(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.size() == 0) return b;
    if (b.size() == 0) return a;
    return a + b;
  }
  static Eigen::MatrixXcd scale(const Eigen::MatrixXcd& a, Complex c) { return a * c; }
  static double norm(const Eigen::MatrixXcd& a) { return a.norm(); }
};

template <>
struct CoeffOps<Eigen::VectorXcd> {
  static Eigen::VectorXcd add(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    if (a.size() == 0) return b;
    if (b.size() == 0) return a;
    return a + b;
  }
  static Eigen::VectorXcd scale(const Eigen::VectorXcd& a, Complex c) { return a * c; }
  static double norm(const Eigen::VectorXcd& a) { return a.norm(); }
};

inline int exponent_degree(const std::vector<int>& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Multivariate power series in holomorphic parameters t_1..t_m, truncated at
// total degree N, with coefficients in a fixed complex vector space.
// Absent terms are zero; no t-bar terms are representable by construction.
template <class C>
class Series {
 public:
  using TermMap = std::map<std::vector<int>, C>;

  Series() = default;
  Series(int m, int N) : m_(m), N_(N) {}

  static Series constant(int m, int N, const C& c) {
    Series s(m, N);
    s.add_term(std::vector<int>(m, 0), c);
    return s;
  }
  static Series monomial(int m, int N, const std::vector<int>& e, const C& c) {
    Series s(m, N);
    s.add_term(e, c);
    return s;
  }

  int params() const { return m_; }
  int order() const { return N_; }
  const TermMap& terms() const { return t_; }
  bool empty() const { return t_.empty(); }

  void add_term(const std::vector<int>& e, const C& c) {
    if (int(e.size()) != m_) throw ArityMismatch("exponent arity != m");
    if (exponent_degree(e) > N_) return;
    auto it = t_.find(e);
    if (it == t_.end())
      t_.emplace(e, c);
    else
      it->second = CoeffOps<C>::add(it->second, c);
  }

  C coeff(const std::vector<int>& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? C() : it->second;
  }

  Series operator+(const Series& o) const {
    check_arity(o);
    Series r = *this;
    r.N_ = std::min(N_, o.N_);
    for (const auto& [e, c] : o.t_) r.add_term(e, c);
    r.prune(r.N_);
    return r;
  }
  Series operator-(const Series& o) const { return *this + o.scaled(Complex(-1, 0)); }

  Series scaled(Complex c) const {
    Series r(m_, N_);
    for (const auto& [e, v] : t_) r.t_.emplace(e, CoeffOps<C>::scale(v, c));
    return r;
  }

  // Lift a linear map on coefficients degreewise.
  template <class F>
  auto map(F&& f) const -> Series<std::decay_t<decltype(f(std::declval<const C&>()))>> {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    Series<D> r(m_, N_);
    for (const auto& [e, v] : t_) r.add_term(e, f(v));
    return r;
  }

  Series truncate_to(int N) const {
    Series r(m_, N);
    for (const auto& [e, v] : t_)
      if (exponent_degree(e) <= N) r.t_.emplace(e, v);
    return r;
  }

  Series homogeneous(int k) const {
    Series r(m_, N_);
    for (const auto& [e, v] : t_)
      if (exponent_degree(e) == k) r.t_.emplace(e, v);
    return r;
  }

  C eval(const std::vector<Complex>& t) const {
    if (int(t.size()) != m_) throw ArityMismatch("evaluation point arity != m");
    C acc{};
    bool any = false;
    for (const auto& [e, v] : t_) {
      Complex mono(1, 0);
      for (int i = 0; i < m_; ++i)
        for (int r = 0; r < e[i]; ++r) mono *= t[i];
      C term = CoeffOps<C>::scale(v, mono);
      acc = any ? CoeffOps<C>::add(acc, term) : term;
      any = true;
    }
    return acc;
  }

  // Exact formal derivative d/dt_i; output truncation N-1.
  Series partial(int dir) const {
    Series r(m_, std::max(0, N_ - 1));
    for (const auto& [e, v] : t_) {
      if (e[dir] == 0) continue;
      std::vector<int> e2 = e;
      e2[dir] -= 1;
      r.add_term(e2, CoeffOps<C>::scale(v, Complex(double(e[dir]), 0)));
    }
    return r;
  }

  double max_norm() const {
    double m = 0;
    for (const auto& [e, v] : t_) m = std::max(m, CoeffOps<C>::norm(v));
    return m;
  }

  void check_arity(int m) const {
    if (m != m_) throw ArityMismatch("series parameter counts differ");
  }
  template <class D>
  void check_arity(const Series<D>& o) const {
    check_arity(o.params());
  }

 private:
  template <class D>
  friend class Series;
  void prune(int N) {
    for (auto it = t_.begin(); it != t_.end();)
      it = (exponent_degree(it->first) > N) ? t_.erase(it) : std::next(it);
    N_ = N;
  }

  int m_ = 0, N_ = 0;
  TermMap t_;
};

using FormSeries = Series<Form>;

// Degreewise lift of a linear map on coefficients.
template <class C, class F>
auto series_apply(F&& f, const Series<C>& a) {
  return a.map(std::forward<F>(f));
}

// Degreewise lift of a bilinear map: coefficient of degree e in the result
// is the convolution over e1 + e2 = e; degrees above the truncation drop.
template <class A, class B, class F>
auto series_apply(F&& f, const Series<A>& a, const Series<B>& b)
    -> Series<std::decay_t<decltype(f(std::declval<const A&>(), std::declval<const B&>()))>> {
  using D = std::decay_t<decltype(f(std::declval<const A&>(), std::declval<const B&>()))>;
  a.check_arity(b.params());
  Series<D> r(a.params(), std::min(a.order(), b.order()));
  for (const auto& [ea, ca] : a.terms()) {
    int da = exponent_degree(ea);
    for (const auto& [eb, cb] : b.terms()) {
      if (da + exponent_degree(eb) > r.order()) continue;
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, f(ca, cb));
    }
  }
  return r;
}

template <class C>
Series<C> series_add(const Series<C>& a, const Series<C>& b) {
  return a + b;
}
template <class C>
Series<C> series_scale(const Series<C>& a, Complex c) {
  return a.scaled(c);
}
template <class C>
C series_eval(const Series<C>& a, const std::vector<Complex>& t) {
  return a.eval(t);
}
template <class C>
Series<C> series_partial(const Series<C>& a, int dir) {
  return a.partial(dir);
}

}  // namespace hodgevar

#endif
