#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rbci {

/// Treatment indicator vector, one entry in {0,1} per unit.
using Assignment = std::vector<std::uint8_t>;
using AssignmentView = std::span<const std::uint8_t>;

enum class ReferenceMode { Exhaustive, MonteCarlo };

const char* to_string(ReferenceMode mode) noexcept;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// The assignments an FRT averages over. Storage is a flat row-major
/// buffer; row i is assignment i. Immutable once built.
class ReferenceSet {
 public:
  ReferenceSet(std::size_t units, std::size_t treated, ReferenceMode mode,
               std::vector<std::uint8_t> flat, std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t units() const noexcept { return units_; }
  std::size_t treated() const noexcept { return treated_; }
  /// |Z|, the p-value denominator.
  std::size_t cardinality() const noexcept { return units_ == 0 ? 0 : flat_.size() / units_; }
  ReferenceMode mode() const noexcept { return mode_; }
  const std::optional<std::uint64_t>& seed() const noexcept { return seed_; }
  /// Empty for exhaustive sets.
  std::string generator() const;

  AssignmentView operator[](std::size_t i) const noexcept {
    return {flat_.data() + i * units_, units_};
  }
  bool contains(AssignmentView z) const noexcept;

  bool operator==(const ReferenceSet&) const = default;

 private:
  std::size_t units_;
  std::size_t treated_;
  ReferenceMode mode_;
  std::vector<std::uint8_t> flat_;
  std::optional<std::uint64_t> seed_;
};

/// C(n, k), or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) noexcept;

std::size_t treated_count(AssignmentView z) noexcept;

/// Throws InvalidDesign unless z is binary with 0 < sum(z) < size(z).
void validate_assignment(AssignmentView z);

/// All C(n, n1) assignments, treated index sets in lexicographic order.
/// Throws CapExceeded above `cap`, InvalidDesign unless 0 < n1 < n.
ReferenceSet enumerate_cre(std::size_t n, std::size_t n1,
                           std::uint64_t cap = kDefaultEnumerationCap);

/// Draw one completely randomized assignment with n1 treated units.
template <class Generator>
Assignment draw_assignment(std::size_t n, std::size_t n1, Generator& rng);

/// Monte Carlo reference set: the observed assignment first, then
/// draws - 1 uniform draws with replacement. draws == 1 yields {observed}.
ReferenceSet sample_cre(std::size_t n, std::size_t n1, std::size_t draws, std::uint64_t seed,
                        AssignmentView observed);

}  // namespace rbci

#include "rbci/random.hpp"

namespace rbci {

template <class Generator>
Assignment draw_assignment(std::size_t n, std::size_t n1, Generator& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Assignment z(n, 0);
  // partial Fisher-Yates: the first n1 slots become the treated set
  for (std::size_t i = 0; i < n1; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
    std::swap(idx[i], idx[j]);
    z[idx[i]] = 1;
  }
  return z;
}

}  // namespace rbci
