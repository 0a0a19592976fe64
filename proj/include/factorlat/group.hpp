#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace factorlat {

// Finite abelian group in invariant-factor form: factors[i] >= 2 and
// factors[i] | factors[i+1]. Empty vector = trivial group.
struct AbelianGroup {
  std::vector<int64_t> factors;

  bool operator==(const AbelianGroup&) const = default;
  size_t rank() const { return factors.size(); }
};

// Coordinate vector, coords[i] in [0, factors[i]). Elements do not carry a
// reference to their group; every operation takes the group as context.
struct GroupElement {
  std::vector<int64_t> c;

  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;
};

// Normalizes any valid abelian decomposition (each factor >= 2) to
// invariant-factor form, e.g. [2,3] -> [6], [4,2] -> [2,4].
AbelianGroup make_group(const std::vector<int64_t>& factors);

GroupElement identity(const AbelianGroup& g);
bool is_identity(const GroupElement& e);

GroupElement add(const AbelianGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement neg(const AbelianGroup& g, const GroupElement& a);
GroupElement scalar_mul(const AbelianGroup& g, int64_t k, const GroupElement& a);

int64_t element_order(const AbelianGroup& g, const GroupElement& a);

// Group order; TooLarge if it exceeds int64 range.
int64_t group_order(const AbelianGroup& g);
bool order_at_most(const AbelianGroup& g, int64_t cap);

// All elements exactly once, in lexicographic coordinate order.
std::vector<GroupElement> enumerate_elements(const AbelianGroup& g, int64_t cap = 1'000'000);

// Mixed-radix rank of an element, in [0, order).
uint64_t element_rank(const AbelianGroup& g, const GroupElement& a);
GroupElement element_unrank(const AbelianGroup& g, uint64_t r);

void validate_element(const AbelianGroup& g, const GroupElement& a);

std::string to_string(const AbelianGroup& g);
std::string to_string(const GroupElement& e);

}  // namespace factorlat
