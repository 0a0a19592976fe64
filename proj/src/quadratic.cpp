#include "factorlat/quadratic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "factorlat/errors.hpp"
#include "factorlat/intmath.hpp"

namespace factorlat {

int64_t QuadForm::disc() const { return b * b - 4 * a * c; }

int64_t QuadForm::eval(int64_t x, int64_t y) const {
  return static_cast<int64_t>((int128)a * x * x + (int128)b * x * y + (int128)c * y * y);
}

std::string to_string(const QuadForm& f) {
  return "(" + std::to_string(f.a) + ", " + std::to_string(f.b) + ", " + std::to_string(f.c) + ")";
}

Discriminant check_fundamental(int64_t d) {
  if (d >= 0) fail(ErrorKind::Unsupported, "discriminant must be negative");
  int64_t m4 = ((d % 4) + 4) % 4;
  if (m4 == 1) {
    if (!is_squarefree(static_cast<uint64_t>(-d)))
      fail(ErrorKind::NotFundamental, std::to_string(d) + " = 1 mod 4 but not squarefree");
    return Discriminant{d, d};
  }
  if (m4 == 0) {
    int64_t m = d / 4;
    int64_t mm4 = ((m % 4) + 4) % 4;
    if ((mm4 == 2 || mm4 == 3) && is_squarefree(static_cast<uint64_t>(-m))) return Discriminant{d, m};
    fail(ErrorKind::NotFundamental, std::to_string(d) + " is 4m with m not squarefree = 2,3 mod 4");
  }
  // Squarefree d = 2,3 mod 4 names the field Q(sqrt(d)); its discriminant is 4d.
  if (is_squarefree(static_cast<uint64_t>(-d))) {
    if (d < std::numeric_limits<int64_t>::min() / 4) fail(ErrorKind::TooLarge, "discriminant overflow");
    return Discriminant{4 * d, d};
  }
  fail(ErrorKind::NotFundamental, std::to_string(d) + " is not a fundamental discriminant or radicand");
}

namespace {

void validate_form(const QuadForm& f, const Discriminant& disc) {
  if (f.disc() != disc.value)
    fail(ErrorKind::InvalidForm, to_string(f) + " has discriminant " + std::to_string(f.disc()) +
                                     ", expected " + std::to_string(disc.value));
  if (f.a <= 0) fail(ErrorKind::InvalidForm, to_string(f) + " is not positive definite");
  if (std::gcd(std::gcd(f.a, f.b), f.c) != 1) fail(ErrorKind::InvalidForm, to_string(f) + " is not primitive");
}

// b -> b - 2aq in (-a, a], c updated to keep the discriminant
void normalize128(int128& a, int128& b, int128& c) {
  int128 q = floordiv128(b + a - 1, 2 * a);
  c = a * q * q - b * q + c;
  b = b - 2 * a * q;
}

QuadForm reduce128(int128 a, int128 b, int128 c) {
  normalize128(a, b, c);
  while (a > c) {
    std::swap(a, c);
    b = -b;
    normalize128(a, b, c);
  }
  if (a == c && b < 0) b = -b;
  if (a > std::numeric_limits<int64_t>::max() || c > std::numeric_limits<int64_t>::max())
    fail(ErrorKind::TooLarge, "reduced form exceeds int64");
  return QuadForm{static_cast<int64_t>(a), static_cast<int64_t>(b), static_cast<int64_t>(c)};
}

}  // namespace

QuadForm reduce_form(const QuadForm& f, const Discriminant& disc) {
  validate_form(f, disc);
  return reduce128(f.a, f.b, f.c);
}

std::vector<QuadForm> reduced_forms(const Discriminant& disc) {
  int64_t D = disc.value;
  std::vector<QuadForm> out;
  int64_t amax = isqrt(static_cast<uint64_t>((-D) / 3));
  for (int64_t a = 1; a <= amax; ++a) {
    for (int64_t babs = (D % 2 == 0) ? 0 : 1; babs <= a; babs += 2) {
      std::vector<int64_t> bsigns = babs == 0 ? std::vector<int64_t>{0} : std::vector<int64_t>{babs, -babs};
      for (int64_t b : bsigns) {
        int64_t num = b * b - D;
        if (num % (4 * a) != 0) continue;
        int64_t c = num / (4 * a);
        if (c < a) continue;
        if (b < 0 && (babs == a || a == c)) continue;  // boundary forms take b >= 0
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        out.push_back(QuadForm{a, b, c});
      }
    }
  }
  std::sort(out.begin(), out.end());
  // principal form first
  auto is_principal = [&](const QuadForm& f) { return f.a == 1; };
  auto it = std::find_if(out.begin(), out.end(), is_principal);
  std::rotate(out.begin(), it, it + 1);
  return out;
}

bool is_ambiguous(const QuadForm& f) { return f.b == 0 || f.a % f.b == 0; }

// Composition through the ideal product. The ideal of (a, b, c) is the
// Z-module [a, t - w] with t = (b + D)/2 and w = (D + sqrt(D))/2; products of
// the four generators are put in Hermite form and the primitive part is
// mapped back to a form.
QuadForm compose(const QuadForm& f, const QuadForm& g, const Discriminant& disc) {
  QuadForm rf = reduce_form(f, disc);
  QuadForm rg = reduce_form(g, disc);
  int128 D = disc.value;
  int128 W = D * (D - 1) / 4;  // norm of w; trace of w is D
  int128 t1 = ((int128)rf.b + D) / 2;
  int128 t2 = ((int128)rg.b + D) / 2;
  // generators (x + y*w)
  struct Gen {
    int128 x, y;
  };
  Gen gens[4] = {
      {(int128)rf.a * rg.a, 0},
      {(int128)rf.a * t2, -(int128)rf.a},
      {(int128)rg.a * t1, -(int128)rg.a},
      {t1 * t2 - W, D - t1 - t2},
  };
  // second generator (r, gam) with gam = gcd of y-parts
  int128 r = 0, gam = 0;
  for (const Gen& gn : gens) {
    int128 u, v;
    int128 ng = gcdext(gam, gn.y, u, v);
    r = u * r + v * gn.x;
    gam = ng;
  }
  if (gam < 0) {
    gam = -gam;
    r = -r;
  }
  // pure-integer sublattice
  int128 n = 0;
  for (const Gen& gn : gens) {
    int128 x = gn.x - (gn.y / gam) * r;
    int128 u, v;
    n = gcdext(n, x, u, v);
  }
  if (gam == 0 || n == 0) fail(ErrorKind::Internal, "degenerate ideal product");
  if (n % gam != 0 || r % gam != 0) fail(ErrorKind::Internal, "ideal product not an O_K module");
  int128 A = n / gam;
  int128 B = ((r / gam) % A + A) % A;
  int128 b3 = -(2 * B + D);
  int128 c3num = B * B + D * B + W;
  if (c3num % A != 0) fail(ErrorKind::Internal, "ideal norm does not divide");
  return reduce128(A, b3, c3num / A);
}

SplittingType splitting_type(uint64_t p, const Discriminant& disc) {
  if (!is_prime(p)) fail(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
  if (p > static_cast<uint64_t>(std::numeric_limits<int64_t>::max()))
    fail(ErrorKind::TooLarge, "prime exceeds int64");
  int k = kronecker(disc.value, static_cast<int64_t>(p));
  if (k == 0) return SplittingType::Ramified;
  return k == 1 ? SplittingType::Split : SplittingType::Inert;
}

namespace {

// smallest b >= 0 with b^2 = D mod 4p and b = D mod 2
int64_t prime_form_b(uint64_t p, int64_t D) {
  if (p == 2) {
    int64_t m8 = ((D % 8) + 8) % 8;
    if (m8 == 1) return 1;
    if (m8 == 0) return 0;
    if (m8 == 4) return 2;
    fail(ErrorKind::Internal, "no square root of D mod 8");
  }
  int64_t Dp = ((D % static_cast<int64_t>(p)) + static_cast<int64_t>(p)) % static_cast<int64_t>(p);
  if (Dp == 0) return (D % 2 == 0) ? 0 : static_cast<int64_t>(p);
  uint64_t r = sqrt_mod_prime(static_cast<uint64_t>(Dp), p);
  // r and p - r have different parity for odd p; pick the one matching D
  int64_t want = ((D % 2) + 2) % 2;
  if (static_cast<int64_t>(r % 2) != want) r = p - r;
  return static_cast<int64_t>(r);
}

}  // namespace

GroupElement class_of_prime(uint64_t p, const FormClassGroup& cg) {
  SplittingType st = splitting_type(p, cg.disc);
  if (st == SplittingType::Inert) fail(ErrorKind::NoFiniteClass, std::to_string(p) + " is inert");
  if (p > (1ull << 62)) fail(ErrorKind::TooLarge, "prime too large for form construction");
  int64_t D = cg.disc.value;
  int64_t b = prime_form_b(p, D);
  int128 c = ((int128)b * b - D) / (4 * (int128)p);
  QuadForm reduced = reduce128(static_cast<int128>(p), b, c);
  return cg.class_of_form(reduced);
}

GroupElement FormClassGroup::class_of_form(const QuadForm& f) const {
  auto it = class_of.find(f);
  if (it == class_of.end()) it = class_of.find(reduce_form(f, disc));
  if (it == class_of.end()) fail(ErrorKind::InvalidForm, to_string(f) + " not in this class group");
  return it->second;
}

std::optional<std::pair<int64_t, int64_t>> represent(const QuadForm& f, uint64_t p,
                                                     const Discriminant& disc) {
  validate_form(f, disc);
  int64_t D = disc.value;
  // a x^2 + b xy + c y^2 = p  =>  (2ax + by)^2 = 4ap + D y^2, so |y| is
  // bounded by sqrt(4ap / |D|).
  uint128 fourap = 4 * (uint128)f.a * p;
  if (fourap > (uint128(1) << 62)) fail(ErrorKind::TooLarge, "representation search bound overflows");
  int64_t ymax = static_cast<int64_t>(isqrt(static_cast<uint64_t>(fourap / static_cast<uint64_t>(-D))));
  std::set<std::pair<int64_t, int64_t>> found;
  for (int64_t y = -ymax; y <= ymax; ++y) {
    int128 disc_x = (int128)4 * f.a * static_cast<int64_t>(p) + (int128)D * y * y;
    if (disc_x < 0) continue;
    uint64_t s = isqrt(static_cast<uint64_t>(disc_x));
    if ((int128)s * s != disc_x) continue;
    for (int64_t sign : {1, -1}) {
      int128 num = -(int128)f.b * y + sign * (int128)s;
      if (num % (2 * (int128)f.a) != 0) continue;
      int128 x = num / (2 * (int128)f.a);
      if (x < 0) continue;
      if (x == 0 && y <= 0) continue;  // (0, y) ~ (0, -y): keep y > 0
      found.emplace(static_cast<int64_t>(x), y);
    }
  }
  if (found.empty()) return std::nullopt;
  auto key = [](const std::pair<int64_t, int64_t>& xy) {
    return std::tuple<int64_t, int64_t, int>(xy.first, std::abs(xy.second), xy.second < 0 ? 1 : 0);
  };
  return *std::min_element(found.begin(), found.end(),
                           [&](auto& u, auto& v) { return key(u) < key(v); });
}

namespace {

// Invariant factors of a finite abelian group given by its element orders.
// The census n_i = #{x in Sylow_p : ord(x) | p^i} determines the type of each
// p-Sylow part; log_p(n_i / n_{i-1}) is the conjugate of its partition.
std::vector<int64_t> invariant_factors_from_orders(const std::vector<int64_t>& orders) {
  int64_t h = static_cast<int64_t>(orders.size());
  if (h == 1) return {};
  std::map<int64_t, std::vector<int>> lambda;  // p -> partition of v_p(h), desc
  for (auto& [pu, e] : factorize(static_cast<uint64_t>(h))) {
    int64_t p = static_cast<int64_t>(pu);
    std::vector<int64_t> ni(static_cast<size_t>(e) + 1, 0);
    for (int64_t o : orders) {
      int64_t op = o;
      int vp = 0;
      while (op % p == 0) {
        op /= p;
        ++vp;
      }
      if (op == 1) {
        for (int i = vp; i <= e; ++i) ni[static_cast<size_t>(i)] += 1;
      }
    }
    std::vector<int> col;
    for (int i = 1; i <= e; ++i) {
      int cnt = 0;
      int64_t ratio = ni[static_cast<size_t>(i)] / ni[static_cast<size_t>(i) - 1];
      while (ratio > 1) {
        ratio /= p;
        ++cnt;
      }
      col.push_back(cnt);
    }
    int parts = col.empty() ? 0 : col[0];
    std::vector<int> lam;
    for (int j = 1; j <= parts; ++j) {
      int v = 0;
      for (int c : col) {
        if (c >= j) ++v;
      }
      lam.push_back(v);
    }
    lambda[p] = lam;
  }
  size_t k = 0;
  for (auto& [p, lam] : lambda) k = std::max(k, lam.size());
  std::vector<int64_t> inv(k, 1);
  for (auto& [p, lam] : lambda) {
    for (size_t i = 0; i < lam.size(); ++i) {
      int64_t pe = 1;
      for (int j = 0; j < lam[i]; ++j) pe *= p;
      inv[i] *= pe;
    }
  }
  std::reverse(inv.begin(), inv.end());
  return inv;
}

}  // namespace

FormClassGroup class_group(const Discriminant& disc) {
  FormClassGroup cg;
  cg.disc = disc;
  cg.reduced = reduced_forms(disc);
  int h = static_cast<int>(cg.reduced.size());
  std::map<QuadForm, int> index;
  for (int i = 0; i < h; ++i) index[cg.reduced[static_cast<size_t>(i)]] = i;

  std::vector<std::vector<int>> mul(static_cast<size_t>(h), std::vector<int>(static_cast<size_t>(h)));
  for (int i = 0; i < h; ++i) {
    for (int j = i; j < h; ++j) {
      QuadForm prod = compose(cg.reduced[static_cast<size_t>(i)], cg.reduced[static_cast<size_t>(j)], disc);
      auto it = index.find(prod);
      if (it == index.end()) fail(ErrorKind::Internal, "composition left the reduced set");
      mul[static_cast<size_t>(i)][static_cast<size_t>(j)] = it->second;
      mul[static_cast<size_t>(j)][static_cast<size_t>(i)] = it->second;
    }
  }

  std::vector<int64_t> orders(static_cast<size_t>(h), 0);
  for (int i = 0; i < h; ++i) {
    int x = i;
    int64_t o = 1;
    while (x != 0) {
      x = mul[static_cast<size_t>(x)][static_cast<size_t>(i)];
      ++o;
    }
    orders[static_cast<size_t>(i)] = o;
  }

  std::vector<int64_t> inv = invariant_factors_from_orders(orders);
  cg.group = AbelianGroup{inv};

  // Find a basis realizing the invariant factors (largest order first, each
  // new generator independent of the subgroup built so far), backtracking.
  size_t k = inv.size();
  std::vector<int> basis(k, -1);
  std::set<int> subgroup = {0};
  std::function<bool(size_t, std::set<int>&)> pick = [&](size_t pos, std::set<int>& sub) -> bool {
    if (pos == k) return true;
    size_t bi = k - 1 - pos;  // fill largest factor first
    int64_t want = inv[bi];
    for (int cand = 0; cand < h; ++cand) {
      if (orders[static_cast<size_t>(cand)] != want) continue;
      bool indep = true;
      int x = cand;
      for (int64_t t = 1; t < want && indep; ++t) {
        if (sub.count(x)) indep = false;
        x = mul[static_cast<size_t>(x)][static_cast<size_t>(cand)];
      }
      if (!indep) continue;
      std::set<int> bigger;
      for (int s : sub) {
        int y = s;
        for (int64_t t = 0; t < want; ++t) {
          bigger.insert(y);
          y = mul[static_cast<size_t>(y)][static_cast<size_t>(cand)];
        }
      }
      basis[bi] = cand;
      if (pick(pos + 1, bigger)) return true;
    }
    return false;
  };
  if (!pick(0, subgroup)) fail(ErrorKind::Internal, "no basis for class group");

  // discrete-log table over the basis
  std::vector<GroupElement> elems = enumerate_elements(cg.group, h);
  for (const GroupElement& e : elems) {
    int x = 0;
    for (size_t i = 0; i < k; ++i) {
      for (int64_t t = 0; t < e.c[i]; ++t)
        x = mul[static_cast<size_t>(x)][static_cast<size_t>(basis[i])];
    }
    cg.class_of[cg.reduced[static_cast<size_t>(x)]] = e;
  }
  if (cg.class_of.size() != static_cast<size_t>(h)) fail(ErrorKind::Internal, "basis map not bijective");

  // ambiguous representatives: smallest squarefree a, forms (a, 0, c) and
  // (a, a, c); every class of order <= 2 is hit by one of these
  int64_t twotor = 1;
  for (int64_t d : inv) {
    if (d % 2 == 0) twotor *= 2;
  }
  int64_t D = disc.value;
  for (int64_t a = 1; a <= -D && static_cast<int64_t>(cg.ambiguous.size()) < twotor; ++a) {
    if (!is_squarefree(static_cast<uint64_t>(a))) continue;
    for (int64_t b : {int64_t{0}, a}) {
      if (((b - D) % 2) != 0) continue;
      int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      int64_t c = num / (4 * a);
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      QuadForm f{a, b, c};
      GroupElement cls = cg.class_of_form(f);
      if (element_order(cg.group, cls) > 2) continue;
      cg.ambiguous.try_emplace(cls, f);
    }
  }
  if (static_cast<int64_t>(cg.ambiguous.size()) != twotor)
    fail(ErrorKind::Internal, "missing ambiguous representative");
  return cg;
}

std::map<GroupElement, QuadForm> ambiguous_representatives(const FormClassGroup& cg) {
  return cg.ambiguous;
}

}  // namespace factorlat
