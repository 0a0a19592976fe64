#include "factorlat/kfield.hpp"

#include <numeric>

#include "factorlat/errors.hpp"
#include "factorlat/intmath.hpp"

namespace factorlat {

namespace {

BigInt num(const Rat& r) { return boost::multiprecision::numerator(r); }
BigInt den(const Rat& r) { return boost::multiprecision::denominator(r); }

}  // namespace

KNumber k_mul(const Discriminant& disc, const KNumber& x, const KNumber& y) {
  Rat m = disc.radicand;
  return KNumber{x.u * y.u + m * x.v * y.v, x.u * y.v + x.v * y.u};
}

KNumber k_conj(const KNumber& x) { return KNumber{x.u, -x.v}; }

Rat k_norm(const Discriminant& disc, const KNumber& x) {
  return x.u * x.u - Rat(disc.radicand) * x.v * x.v;
}

Rat k_trace(const KNumber& x) { return 2 * x.u; }

KNumber k_scale(const KNumber& x, const Rat& s) { return KNumber{x.u * s, x.v * s}; }

bool is_integral(const Discriminant& disc, const KNumber& x) {
  if (disc.value % 2 == 0) return den(x.u) == 1 && den(x.v) == 1;
  Rat tu = 2 * x.u, tv = 2 * x.v;
  if (den(tu) != 1 || den(tv) != 1) return false;
  return (num(tu) - num(tv)) % 2 == 0;
}

std::vector<KNumber> units(const Discriminant& disc) {
  std::vector<KNumber> out = {KNumber{1, 0}, KNumber{-1, 0}};
  if (disc.value == -4) {
    out.push_back(KNumber{0, 1});
    out.push_back(KNumber{0, -1});
  } else if (disc.value == -3) {
    for (int su : {1, -1}) {
      for (int sv : {1, -1}) {
        out.push_back(KNumber{Rat(su, 2), Rat(sv, 2)});
      }
    }
  }
  return out;
}

bool is_unit(const Discriminant& disc, const KNumber& x) {
  for (const KNumber& u : units(disc)) {
    if (x == u) return true;
  }
  return false;
}

bool associates(const Discriminant& disc, const KNumber& x, const KNumber& y) {
  if (!is_integral(disc, x) || !is_integral(disc, y))
    fail(ErrorKind::InvalidInput, "associates() needs integral arguments");
  for (const KNumber& u : units(disc)) {
    if (k_mul(disc, y, u) == x) return true;
  }
  return false;
}

GradedNumber graded_mul(const Discriminant& disc, const GradedNumber& x, const GradedNumber& y) {
  int64_t s = std::gcd(x.d, y.d);
  int64_t d = (x.d / s) * (y.d / s);
  KNumber g = k_scale(k_mul(disc, x.gamma, y.gamma), Rat(1, s));
  return GradedNumber{g, d};
}

GradedNumber beta_of(const Discriminant& disc, const QuadForm& f, int64_t x, int64_t y, Sign sign) {
  if (!is_ambiguous(f))
    fail(ErrorKind::NotAmbiguous, to_string(f) + " is not ambiguous (b does not divide a)");
  if (f.disc() != disc.value) fail(ErrorKind::InvalidForm, "form/discriminant mismatch");
  // (2ax + by)/2 +- (y/2) sqrt(D), expressed over sqrt(m): sqrt(D) = sqrt(m)
  // for odd D and 2 sqrt(m) for even D.
  Rat u = Rat(2 * f.a * x + f.b * y, 2);
  Rat v = disc.value % 2 == 0 ? Rat(y) : Rat(y, 2);
  if (sign == Sign::Minus) v = -v;
  auto [s, d] = square_decompose(static_cast<uint64_t>(f.a));
  KNumber gamma{u, v};
  if (s != 1) gamma = k_scale(gamma, Rat(1, static_cast<int64_t>(s)));
  return GradedNumber{gamma, static_cast<int64_t>(d)};
}

bool beta_pair_product_is_p(const Discriminant& disc, const QuadForm& f, int64_t x, int64_t y) {
  GradedNumber plus = beta_of(disc, f, x, y, Sign::Plus);
  GradedNumber minus = beta_of(disc, f, x, y, Sign::Minus);
  GradedNumber prod = graded_mul(disc, plus, minus);
  return prod.d == 1 && prod.gamma.v == 0 && prod.gamma.u == Rat(f.eval(x, y));
}

namespace {

std::string rat_str(const Rat& r) {
  std::string s = num(r).str();
  if (den(r) != 1) s += "/" + den(r).str();
  return s;
}

}  // namespace

std::string to_string(const Discriminant& disc, const KNumber& x) {
  std::string root = "sqrt(" + std::to_string(disc.radicand) + ")";
  if (x.v == 0) return rat_str(x.u);
  // common denominator 2 prints as (p +- q sqrt(m))/2
  if (den(x.u) == 2 && den(x.v) == 2) {
    BigInt p = num(x.u), q = num(x.v);
    std::string s = "(" + p.str();
    s += q < 0 ? " - " : " + ";
    BigInt qa = q < 0 ? BigInt(-q) : q;
    if (qa != 1) s += qa.str() + "*";
    return s + root + ")/2";
  }
  std::string s;
  if (x.u != 0) s = rat_str(x.u) + (x.v < 0 ? " - " : " + ");
  else if (x.v < 0) s = "-";
  Rat va = x.v < 0 ? Rat(-x.v) : x.v;
  if (va != 1) s += rat_str(va) + "*";
  return s + root;
}

std::string to_string(const Discriminant& disc, const GradedNumber& x) {
  std::string s = to_string(disc, x.gamma);
  if (x.d == 1) return s;
  return "(" + s + ")/sqrt(" + std::to_string(x.d) + ")";
}

}  // namespace factorlat
