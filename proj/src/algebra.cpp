#include "hodgevar/algebra.hpp"

#include <stdexcept>

namespace hodgevar {

Algebra::Algebra(int n) : n_(n) {
  if (n < 1 || n > 12) throw std::invalid_argument("Algebra: n out of range");
  block_ids_.assign(n + 1, std::vector<std::vector<int>>(n + 1));
  degree_ids_.assign(2 * n + 1, {});
  id_table_.assign(std::size_t(1) << (2 * n), -1);

  std::vector<std::vector<Mask>> combs(n + 1);
  for (int p = 0; p <= n; ++p) combs[p] = combinations(n, p);

  for (int k = 0; k <= 2 * n; ++k) {
    for (int p = std::min(n, k); p >= std::max(0, k - n); --p) {
      int q = k - p;
      for (Mask I : combs[p]) {
        for (Mask J : combs[q]) {
          int id = int(monomials_.size());
          monomials_.push_back({I, J});
          id_table_[(std::size_t(I) << n_) | J] = id;
          block_ids_[p][q].push_back(id);
          degree_ids_[k].push_back(id);
        }
      }
    }
  }
}

std::vector<int> Algebra::filtration(int p, int k) const {
  std::vector<int> out;
  for (int id : degree_ids_[k])
    if (mask_size(monomials_[id].I) >= p) out.push_back(id);
  return out;
}

std::pair<int, int> Algebra::mul(int a, int b) const {
  const Monomial& ma = monomials_[a];
  const Monomial& mb = monomials_[b];
  if ((ma.I & mb.I) != 0 || (ma.J & mb.J) != 0) return {0, -1};
  // Move the holomorphic part of b left past the antiholomorphic part of a,
  // then merge within each type.
  int sign = ((mask_size(mb.I) * mask_size(ma.J)) % 2 == 0) ? 1 : -1;
  sign *= merge_sign(ma.I, mb.I);
  sign *= merge_sign(ma.J, mb.J);
  return {sign, id_of(ma.I | mb.I, ma.J | mb.J)};
}

std::pair<int, int> Algebra::conj(int id) const {
  const Monomial& m = monomials_[id];
  int sign = ((mask_size(m.I) * mask_size(m.J)) % 2 == 0) ? 1 : -1;
  return {sign, id_of(m.J, m.I)};
}

std::string Algebra::name(int id) const {
  const Monomial& m = monomials_[id];
  if (m.I == 0 && m.J == 0) return "1";
  std::string s;
  for (int i : mask_indices(m.I)) {
    if (!s.empty()) s += "^";
    s += "w" + std::to_string(i);
  }
  for (int j : mask_indices(m.J)) {
    if (!s.empty()) s += "^";
    s += "w~" + std::to_string(j);
  }
  return s;
}

}  // namespace hodgevar
