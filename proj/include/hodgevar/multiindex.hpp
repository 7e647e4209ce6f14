#ifndef HODGEVAR_MULTIINDEX_HPP
#define HODGEVAR_MULTIINDEX_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace hodgevar {

// Strictly increasing multi-indices over {1..n} stored as bitmasks;
// bit r (0-based) stands for the index r+1.
using Mask = std::uint32_t;

inline int mask_size(Mask m) { return std::popcount(m); }

inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  for (int r = 0; m != 0; ++r, m >>= 1)
    if (m & 1u) out.push_back(r + 1);
  return out;
}

inline Mask index_bit(int i) { return Mask(1) << (i - 1); }

// All p-element subsets of {1..n} in lexicographic order of the
// increasing index sequence, e.g. (1,2) < (1,3) < (2,3).
inline std::vector<Mask> combinations(int n, int p) {
  std::vector<Mask> out;
  if (p < 0 || p > n) return out;
  std::vector<int> idx(p);
  for (int r = 0; r < p; ++r) idx[r] = r + 1;
  while (true) {
    Mask m = 0;
    for (int i : idx) m |= index_bit(i);
    out.push_back(m);
    int r = p - 1;
    while (r >= 0 && idx[r] == n - (p - 1 - r)) --r;
    if (r < 0) break;
    ++idx[r];
    for (int s = r + 1; s < p; ++s) idx[s] = idx[s - 1] + 1;
  }
  if (p == 0) out = {Mask(0)};
  return out;
}

// Sign of the shuffle merging the concatenation (A, B) of two disjoint
// increasing sequences into one increasing sequence.
inline int merge_sign(Mask a, Mask b) {
  int inversions = 0;
  Mask bb = b;
  while (bb != 0) {
    int r = std::countr_zero(bb);
    bb &= bb - 1;
    inversions += std::popcount(a >> (r + 1));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * std::uint64_t(n - i) / std::uint64_t(i + 1);
  return r;
}

}  // namespace hodgevar

#endif
