#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "factorlat/group.hpp"

namespace factorlat {

// Validated negative fundamental discriminant. `radicand` is the squarefree
// m with K = Q(sqrt(m)): m = value for odd discriminants, value/4 otherwise.
struct Discriminant {
  int64_t value = 0;
  int64_t radicand = 0;

  bool operator==(const Discriminant&) const = default;
};

// Primitive positive definite binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
  int64_t a = 0, b = 0, c = 0;

  bool operator==(const QuadForm&) const = default;
  auto operator<=>(const QuadForm&) const = default;
  int64_t disc() const;
  int64_t eval(int64_t x, int64_t y) const;
};

enum class SplittingType { Inert, Split, Ramified };

struct FormClassGroup {
  Discriminant disc;
  std::vector<QuadForm> reduced;  // principal form first, then (a, b, c) ascending
  AbelianGroup group;             // invariant factors
  std::map<QuadForm, GroupElement> class_of;  // reduced form -> coordinates
  std::map<GroupElement, QuadForm> ambiguous;  // one ambiguous form per class of order <= 2

  const QuadForm& principal() const { return reduced.front(); }
  GroupElement class_of_form(const QuadForm& f) const;  // reduces, then looks up
};

// Accepts a fundamental discriminant, or a squarefree d = 2,3 mod 4 which is
// normalized to the field discriminant 4d. d >= 0 -> Unsupported,
// anything else -> NotFundamental.
Discriminant check_fundamental(int64_t d);

QuadForm reduce_form(const QuadForm& f, const Discriminant& disc);

std::vector<QuadForm> reduced_forms(const Discriminant& disc);

// Group law via the product of the corresponding ideals (a, (b - sqrt(D))/2),
// reduced to the canonical representative.
QuadForm compose(const QuadForm& f, const QuadForm& g, const Discriminant& disc);

FormClassGroup class_group(const Discriminant& disc);

// b | a, with b = 0 counting as dividing.
bool is_ambiguous(const QuadForm& f);

// One primitive ambiguous form with squarefree a per class of order <= 2
// (smallest such a); computed as part of class_group.
std::map<GroupElement, QuadForm> ambiguous_representatives(const FormClassGroup& cg);

SplittingType splitting_type(uint64_t p, const Discriminant& disc);

// Class of the primes above p (one of the two conjugate classes for split p),
// via the reduced form (p, b, (b^2 - D)/(4p)). Inert p -> NoFiniteClass.
GroupElement class_of_prime(uint64_t p, const FormClassGroup& cg);

// Exhaustive representation search; first hit by (x, |y|, y<0) with x >= 0.
std::optional<std::pair<int64_t, int64_t>> represent(const QuadForm& f, uint64_t p,
                                                     const Discriminant& disc);

std::string to_string(const QuadForm& f);

}  // namespace factorlat
