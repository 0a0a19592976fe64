#include "factorlat/group.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "factorlat/errors.hpp"
#include "factorlat/intmath.hpp"

namespace factorlat {

AbelianGroup make_group(const std::vector<int64_t>& factors) {
  // Split every factor into prime powers, then rebuild invariant factors by
  // pairing the largest power of each prime.
  std::map<int64_t, std::vector<int64_t>> powers;  // p -> prime powers, desc
  for (int64_t f : factors) {
    if (f < 2) fail(ErrorKind::InvalidGroup, "factor " + std::to_string(f) + " < 2");
    for (auto& [p, e] : factorize(static_cast<uint64_t>(f))) {
      int64_t pe = 1;
      for (int i = 0; i < e; ++i) pe *= static_cast<int64_t>(p);
      powers[static_cast<int64_t>(p)].push_back(pe);
    }
  }
  size_t k = 0;
  for (auto& [p, v] : powers) {
    std::sort(v.begin(), v.end(), std::greater<>());
    k = std::max(k, v.size());
  }
  std::vector<int64_t> inv(k, 1);
  for (auto& [p, v] : powers) {
    for (size_t i = 0; i < v.size(); ++i) {
      if (inv[i] > std::numeric_limits<int64_t>::max() / v[i])
        fail(ErrorKind::TooLarge, "invariant factor overflow");
      inv[i] *= v[i];
    }
  }
  std::reverse(inv.begin(), inv.end());  // ascending, each divides the next
  return AbelianGroup{inv};
}

GroupElement identity(const AbelianGroup& g) {
  return GroupElement{std::vector<int64_t>(g.factors.size(), 0)};
}

bool is_identity(const GroupElement& e) {
  return std::all_of(e.c.begin(), e.c.end(), [](int64_t x) { return x == 0; });
}

void validate_element(const AbelianGroup& g, const GroupElement& a) {
  if (a.c.size() != g.factors.size())
    fail(ErrorKind::GroupMismatch, "element has " + std::to_string(a.c.size()) +
                                       " coordinates, group has " + std::to_string(g.factors.size()));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] < 0 || a.c[i] >= g.factors[i]) fail(ErrorKind::GroupMismatch, "coordinate out of range");
  }
}

GroupElement add(const AbelianGroup& g, const GroupElement& a, const GroupElement& b) {
  validate_element(g, a);
  validate_element(g, b);
  GroupElement r = a;
  for (size_t i = 0; i < r.c.size(); ++i) {
    r.c[i] += b.c[i];
    if (r.c[i] >= g.factors[i]) r.c[i] -= g.factors[i];
  }
  return r;
}

GroupElement neg(const AbelianGroup& g, const GroupElement& a) {
  validate_element(g, a);
  GroupElement r = a;
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (r.c[i] != 0) r.c[i] = g.factors[i] - r.c[i];
  }
  return r;
}

GroupElement scalar_mul(const AbelianGroup& g, int64_t k, const GroupElement& a) {
  validate_element(g, a);
  GroupElement r = a;
  for (size_t i = 0; i < r.c.size(); ++i) {
    int64_t m = g.factors[i];
    int64_t kk = ((k % m) + m) % m;
    r.c[i] = static_cast<int64_t>((int128)a.c[i] * kk % m);
  }
  return r;
}

int64_t element_order(const AbelianGroup& g, const GroupElement& a) {
  validate_element(g, a);
  int64_t ord = 1;
  for (size_t i = 0; i < a.c.size(); ++i) {
    int64_t o = g.factors[i] / std::gcd(g.factors[i], a.c[i]);
    ord = std::lcm(ord, o);
  }
  return ord;
}

bool order_at_most(const AbelianGroup& g, int64_t cap) {
  int128 o = 1;
  for (int64_t f : g.factors) {
    o *= f;
    if (o > cap) return false;
  }
  return true;
}

int64_t group_order(const AbelianGroup& g) {
  if (!order_at_most(g, std::numeric_limits<int64_t>::max()))
    fail(ErrorKind::TooLarge, "group order exceeds int64");
  int64_t o = 1;
  for (int64_t f : g.factors) o *= f;
  return o;
}

std::vector<GroupElement> enumerate_elements(const AbelianGroup& g, int64_t cap) {
  if (!order_at_most(g, cap)) fail(ErrorKind::TooLarge, "group order exceeds enumeration cap");
  int64_t n = group_order(g);
  std::vector<GroupElement> out;
  out.reserve(static_cast<size_t>(n));
  GroupElement cur = identity(g);
  out.push_back(cur);
  // odometer with the last coordinate fastest = lexicographic order
  for (int64_t i = 1; i < n; ++i) {
    for (size_t j = cur.c.size(); j-- > 0;) {
      if (++cur.c[j] < g.factors[j]) break;
      cur.c[j] = 0;
    }
    out.push_back(cur);
  }
  return out;
}

uint64_t element_rank(const AbelianGroup& g, const GroupElement& a) {
  uint64_t r = 0;
  for (size_t i = 0; i < a.c.size(); ++i) r = r * static_cast<uint64_t>(g.factors[i]) + static_cast<uint64_t>(a.c[i]);
  return r;
}

GroupElement element_unrank(const AbelianGroup& g, uint64_t r) {
  GroupElement e = identity(g);
  for (size_t i = g.factors.size(); i-- > 0;) {
    e.c[i] = static_cast<int64_t>(r % static_cast<uint64_t>(g.factors[i]));
    r /= static_cast<uint64_t>(g.factors[i]);
  }
  return e;
}

std::string to_string(const AbelianGroup& g) {
  if (g.factors.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < g.factors.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(g.factors[i]);
  }
  return s;
}

std::string to_string(const GroupElement& e) {
  std::string s = "(";
  for (size_t i = 0; i < e.c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e.c[i]);
  }
  return s + ")";
}

}  // namespace factorlat
