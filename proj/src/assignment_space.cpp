#include "rbci/assignment_space.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rbci/errors.hpp"
#include "rbci/random.hpp"

namespace rbci {

const char* to_string(ReferenceMode mode) noexcept {
  return mode == ReferenceMode::Exhaustive ? "exact" : "mc";
}

ReferenceSet::ReferenceSet(std::size_t units, std::size_t treated, ReferenceMode mode,
                           std::vector<std::uint8_t> flat, std::optional<std::uint64_t> seed)
    : units_(units), treated_(treated), mode_(mode), flat_(std::move(flat)), seed_(seed) {
  if (units_ == 0 || flat_.size() % units_ != 0 || flat_.empty())
    throw Error(ErrorCode::InvalidDesign, "reference set storage does not hold whole assignments");
}

std::string ReferenceSet::generator() const {
  return mode_ == ReferenceMode::MonteCarlo ? kGeneratorName : "";
}

bool ReferenceSet::contains(AssignmentView z) const noexcept {
  if (z.size() != units_) return false;
  for (std::size_t i = 0; i < cardinality(); ++i) {
    const auto row = (*this)[i];
    if (std::equal(row.begin(), row.end(), z.begin())) return true;
  }
  return false;
}

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i is integral; divide out the common factor first
    const std::uint64_t g = std::gcd(acc, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    if (__builtin_mul_overflow(acc / g, factor, &acc)) return std::nullopt;
  }
  return acc;
}

std::size_t treated_count(AssignmentView z) noexcept {
  std::size_t s = 0;
  for (auto v : z) s += v;
  return s;
}

void validate_assignment(AssignmentView z) {
  for (auto v : z)
    if (v > 1) throw Error(ErrorCode::InvalidDesign, "assignment entries must be 0 or 1");
  const std::size_t n1 = treated_count(z);
  if (n1 == 0 || n1 == z.size())
    throw Error(ErrorCode::InvalidDesign, "both arms must be nonempty");
}

namespace {

void check_design(std::size_t n, std::size_t n1) {
  if (n1 == 0 || n1 >= n)
    throw Error(ErrorCode::InvalidDesign,
                "treated count " + std::to_string(n1) + " outside (0, " + std::to_string(n) + ")");
}

}  // namespace

ReferenceSet enumerate_cre(std::size_t n, std::size_t n1, std::uint64_t cap) {
  check_design(n, n1);
  const auto total = binomial(n, n1);
  if (!total || *total > cap)
    throw Error(ErrorCode::CapExceeded, "C(" + std::to_string(n) + ", " + std::to_string(n1) +
                                            ") exceeds the enumeration cap of " +
                                            std::to_string(cap) + "; use Monte Carlo");

  std::vector<std::uint8_t> flat;
  flat.reserve(*total * n);
  std::vector<std::size_t> pick(n1);
  for (std::size_t i = 0; i < n1; ++i) pick[i] = i;
  while (true) {
    const std::size_t base = flat.size();
    flat.resize(base + n, 0);
    for (auto p : pick) flat[base + p] = 1;

    // advance to the next k-subset in lexicographic order
    std::size_t i = n1;
    while (i > 0 && pick[i - 1] == n - n1 + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n1; ++j) pick[j] = pick[j - 1] + 1;
  }
  return ReferenceSet(n, n1, ReferenceMode::Exhaustive, std::move(flat));
}

ReferenceSet sample_cre(std::size_t n, std::size_t n1, std::size_t draws, std::uint64_t seed,
                        AssignmentView observed) {
  check_design(n, n1);
  if (observed.size() != n) throw Error(ErrorCode::InvalidDesign, "observed assignment has wrong length");
  validate_assignment(observed);
  if (treated_count(observed) != n1)
    throw Error(ErrorCode::InvalidDesign, "observed assignment does not match the design");
  if (draws == 0) throw Error(ErrorCode::InvalidDesign, "draw count must be positive");

  std::vector<std::uint8_t> flat;
  flat.reserve(draws * n);
  flat.insert(flat.end(), observed.begin(), observed.end());
  Rng rng(seed);
  for (std::size_t d = 1; d < draws; ++d) {
    const Assignment z = draw_assignment(n, n1, rng);
    flat.insert(flat.end(), z.begin(), z.end());
  }
  return ReferenceSet(n, n1, ReferenceMode::MonteCarlo, std::move(flat), seed);
}

}  // namespace rbci
