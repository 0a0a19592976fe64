#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "factorlat/quadratic.hpp"

namespace factorlat {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Element u + v*sqrt(m) of K = Q(sqrt(m)), m the squarefree field radicand
// (Discriminant::radicand). Exact rational components.
struct KNumber {
  Rat u = 0;
  Rat v = 0;

  bool operator==(const KNumber&) const = default;
};

// gamma / sqrt(d) with d > 0 squarefree; d == 1 means the element lies in K.
struct GradedNumber {
  KNumber gamma;
  int64_t d = 1;

  bool operator==(const GradedNumber&) const = default;
};

KNumber k_mul(const Discriminant& disc, const KNumber& x, const KNumber& y);
KNumber k_conj(const KNumber& x);
Rat k_norm(const Discriminant& disc, const KNumber& x);
Rat k_trace(const KNumber& x);
KNumber k_scale(const KNumber& x, const Rat& s);

// Integral in O_K: u, v in Z for even discriminants; 2u, 2v in Z with
// 2u = 2v mod 2 for odd ones.
bool is_integral(const Discriminant& disc, const KNumber& x);

// The finite unit group of O_K: {1,-1} below -4, four units at -4, six at -3.
std::vector<KNumber> units(const Discriminant& disc);
bool is_unit(const Discriminant& disc, const KNumber& x);
bool associates(const Discriminant& disc, const KNumber& x, const KNumber& y);

// Radicand product reduced by its square part: d1*d2 = s^2*d with
// s = gcd(d1, d2), gamma multiplied and divided by s.
GradedNumber graded_mul(const Discriminant& disc, const GradedNumber& x, const GradedNumber& y);

enum class Sign { Plus, Minus };

// Linear factor of an ambiguous form at (x, y): gamma = (2ax + by)/2 +- (y/2)sqrt(D)
// as a KNumber over sqrt(m), with radicand d = squarefree part of a.
GradedNumber beta_of(const Discriminant& disc, const QuadForm& f, int64_t x, int64_t y, Sign sign);

// graded_mul(beta+, beta-) equals the rational integer f(x, y) = p exactly.
bool beta_pair_product_is_p(const Discriminant& disc, const QuadForm& f, int64_t x, int64_t y);

std::string to_string(const Discriminant& disc, const KNumber& x);
std::string to_string(const Discriminant& disc, const GradedNumber& x);

}  // namespace factorlat
