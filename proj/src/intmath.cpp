#include "factorlat/intmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "factorlat/errors.hpp"

namespace factorlat {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::InvalidForm: return "InvalidForm";
    case ErrorKind::InvalidPrime: return "InvalidPrime";
    case ErrorKind::NoFiniteClass: return "NoFiniteClass";
    case ErrorKind::NotAmbiguous: return "NotAmbiguous";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ExplicitUnavailable: return "ExplicitUnavailable";
    case ErrorKind::NoPartition: return "NoPartition";
    case ErrorKind::Undefined: return "Undefined";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

int128 floordiv128(int128 a, int128 b) {
  int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((uint128)a * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = m == 1 ? 0 : 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

uint64_t pollard_rho(uint64_t n) {
  if (n % 2 == 0) return 2;
  // Brent's variant
  for (uint64_t c = 1;; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    uint64_t ys = y, q = 1;
    const int m = 128;
    int r = 1;
    while (d == 1) {
      x = y;
      for (int i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      for (int k = 0; k < r && d == 1; k += m) {
        ys = y;
        int lim = std::min(m, r - k);
        for (int i = 0; i < lim; ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
      r *= 2;
      if (r > (1 << 22)) break;
    }
    if (d == n) {
      d = 1;
      while (d == 1) {
        ys = (mulmod(ys, ys, n) + c) % n;
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (d != n && d != 1) return d;
  }
}

void factor_rec(uint64_t n, std::map<uint64_t, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  uint64_t d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::map<uint64_t, int> factorize(uint64_t n, uint64_t trial_bound) {
  std::map<uint64_t, int> out;
  if (n == 0) fail(ErrorKind::InvalidInput, "factorize(0)");
  for (uint64_t p : {2ull, 3ull, 5ull}) {
    while (n % p == 0) {
      out[p] += 1;
      n /= p;
    }
  }
  // 6k+-1 wheel
  for (uint64_t d = 7; d <= trial_bound && d * d <= n; d += 6) {
    for (uint64_t p : {d, d + 4}) {
      while (n % p == 0) {
        out[p] += 1;
        n /= p;
      }
    }
  }
  if (n > 1) factor_rec(n, out);
  return out;
}

int kronecker(int64_t a, int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int t2 = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++t2;
  }
  if (t2 > 0) {
    if (a % 2 == 0) return 0;
    int64_t am8 = ((a % 8) + 8) % 8;
    if (t2 % 2 == 1 && (am8 == 3 || am8 == 5)) result = -result;
  }
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      int64_t nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

uint64_t sqrt_mod_prime(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) fail(ErrorKind::Internal, "sqrt_mod_prime: not a residue");
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  uint64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  uint64_t m = s;
  uint64_t c = powmod(z, q, p);
  uint64_t t = powmod(a, q, p);
  uint64_t r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    uint64_t b = c;
    for (uint64_t j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

uint64_t isqrt(uint64_t n) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_squarefree(uint64_t n) { return square_decompose(n).first == 1; }

std::pair<uint64_t, uint64_t> square_decompose(uint64_t n) {
  uint64_t s = 1, k = 1;
  for (auto& [p, e] : factorize(n)) {
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) k *= p;
  }
  return {s, k};
}

int128 gcdext(int128 a, int128 b, int128& x, int128& y) {
  if (b == 0) {
    if (a < 0) {
      x = -1;
      y = 0;
      return -a;
    }
    x = 1;
    y = 0;
    return a;
  }
  int128 x1, y1;
  int128 g = gcdext(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

std::vector<uint32_t> spf_sieve(uint32_t limit) {
  std::vector<uint32_t> spf(limit + 1, 0);
  for (uint32_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      for (uint64_t j = i; j <= limit; j += i) {
        if (spf[j] == 0) spf[j] = i;
      }
    }
  }
  return spf;
}

}  // namespace factorlat
