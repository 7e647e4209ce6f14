#ifndef HODGEVAR_ALGEBRA_HPP
#define HODGEVAR_ALGEBRA_HPP

#include <string>
#include <utility>
#include <vector>

#include "hodgevar/multiindex.hpp"

namespace hodgevar {

struct Bidegree {
  int p = 0;
  int q = 0;
  bool operator==(const Bidegree&) const = default;
  auto operator<=>(const Bidegree&) const = default;
  int total() const { return p + q; }
};

// Basis monomial w^I /\ wbar^J of the bigraded invariant exterior algebra.
struct Monomial {
  Mask I = 0;
  Mask J = 0;
};

// Fixed monomial basis of the full exterior algebra on n holomorphic and n
// antiholomorphic coframe elements.  Global order: total degree ascending,
// then p descending within each degree (so F^p A^k is a prefix of the A^k
// range), then lexicographic on (I, J) inside a bidegree block.
class Algebra {
 public:
  explicit Algebra(int n);

  int n() const { return n_; }
  int dim() const { return int(monomials_.size()); }

  const Monomial& monomial(int id) const { return monomials_[id]; }
  Bidegree bidegree(int id) const {
    return {mask_size(monomials_[id].I), mask_size(monomials_[id].J)};
  }
  int id_of(Mask I, Mask J) const { return id_table_[(std::size_t(I) << n_) | J]; }

  // Monomial ids of one bidegree block, in the block's canonical order.
  const std::vector<int>& block(int p, int q) const { return block_ids_[p][q]; }
  // Monomial ids of total degree k (all bidegrees, p descending).
  const std::vector<int>& degree(int k) const { return degree_ids_[k]; }
  // Ids with holomorphic degree >= p within total degree k (prefix of degree(k)).
  std::vector<int> filtration(int p, int k) const;

  // Wedge of two basis monomials: {sign, id}; sign 0 when the product vanishes.
  std::pair<int, int> mul(int a, int b) const;

  // Conjugation as a signed involution of the basis: (I,J) -> (J,I).
  std::pair<int, int> conj(int id) const;

  std::string name(int id) const;

 private:
  int n_;
  std::vector<Monomial> monomials_;
  std::vector<int> id_table_;
  std::vector<std::vector<std::vector<int>>> block_ids_;
  std::vector<std::vector<int>> degree_ids_;
};

}  // namespace hodgevar

#endif
