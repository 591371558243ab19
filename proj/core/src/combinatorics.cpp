#include "ricci/combinatorics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ricci/error.hpp"

namespace ricci {

std::optional<std::uint64_t> binomial_checked(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n-k+i) is divisible by i; split the division so nothing overflows early.
    const std::uint64_t g = std::gcd(acc, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    acc /= g;
    if (acc > ~std::uint64_t{0} / factor) return std::nullopt;
    acc *= factor;
  }
  return acc;
}

double binomial_real(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  const auto value = binomial_checked(n, k);
  if (!value) throw Error(ErrorKind::TooLarge, "C(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows");
  return *value;
}

std::uint64_t subset_rank(std::uint64_t mask) {
  std::uint64_t rank = 0;
  unsigned i = 0;
  while (mask != 0) {
    const auto pos = static_cast<unsigned>(std::countr_zero(mask));
    rank += binomial(pos, ++i);
    mask &= mask - 1;
  }
  return rank;
}

std::uint64_t subset_unrank(std::uint64_t rank, unsigned k) {
  std::uint64_t mask = 0;
  for (unsigned i = k; i >= 1; --i) {
    // Largest pos with C(pos, i) <= rank.
    unsigned pos = i - 1;
    while (binomial(pos + 1, i) <= rank) ++pos;
    mask |= std::uint64_t{1} << pos;
    rank -= binomial(pos, i);
  }
  return mask;
}

std::vector<std::uint64_t> all_subsets(unsigned n, unsigned k) {
  std::vector<std::uint64_t> out;
  const std::uint64_t count = binomial(n, k);
  out.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) out.push_back(subset_unrank(r, k));
  return out;
}

std::uint64_t permutation_rank(const std::vector<std::uint64_t>& perm) {
  const std::size_t n = perm.size();
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller += perm[j] < perm[i];
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

std::vector<std::uint64_t> permutation_unrank(std::uint64_t rank, unsigned n) {
  std::vector<std::uint64_t> digits(n, 0);
  for (unsigned i = n; i-- > 0;) {
    const std::uint64_t base = n - i;
    digits[i] = rank % base;
    rank /= base;
  }
  std::vector<std::uint64_t> pool;
  for (unsigned v = 1; v <= n; ++v) pool.push_back(v);
  std::vector<std::uint64_t> perm;
  perm.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    perm.push_back(pool[digits[i]]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
  }
  return perm;
}

}  // namespace ricci
