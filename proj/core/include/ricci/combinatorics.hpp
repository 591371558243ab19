#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace ricci {

/// C(n, k) when it fits in 64 bits.
std::optional<std::uint64_t> binomial_checked(std::uint64_t n, std::uint64_t k);
/// C(n, k) as a double (for counts used only for reporting).
double binomial_real(std::uint64_t n, std::uint64_t k);
/// C(n, k); throws TooLarge on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Colexicographic rank of a k-subset given as a bitmask.
std::uint64_t subset_rank(std::uint64_t mask);
/// Inverse of subset_rank for k-subsets.
std::uint64_t subset_unrank(std::uint64_t rank, unsigned k);

/// All k-subsets of {0..n-1} as bitmasks, in colex order.
std::vector<std::uint64_t> all_subsets(unsigned n, unsigned k);

/// Lehmer-code rank of a permutation of {1..n} (0 for the identity).
std::uint64_t permutation_rank(const std::vector<std::uint64_t>& perm);
std::vector<std::uint64_t> permutation_unrank(std::uint64_t rank, unsigned n);

/// Index of the unordered vertex pair {i, j}, i < j, among the C(n,2) pairs in
/// lexicographic order: (0,1), (0,2), ..., (n-2,n-1).
constexpr unsigned pair_index(unsigned n, unsigned i, unsigned j) noexcept {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Bit positions of a mask, ascending.
inline std::vector<unsigned> bit_positions(std::uint64_t mask) {
  std::vector<unsigned> out;
  while (mask != 0) {
    out.push_back(static_cast<unsigned>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace ricci
