#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace factorlat {

using int128 = __int128;
using uint128 = unsigned __int128;

// floor(a / b) for b > 0
int128 floordiv128(int128 a, int128 b);

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t m);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(uint64_t n);

// Trial division up to `trial_bound`, then Miller-Rabin + Pollard rho.
std::map<uint64_t, int> factorize(uint64_t n, uint64_t trial_bound = 10'000'000);

// Kronecker symbol (a | n), full generality.
int kronecker(int64_t a, int64_t n);

// Square root of a mod odd prime p; requires kronecker(a, p) == 1 or a == 0.
uint64_t sqrt_mod_prime(uint64_t a, uint64_t p);

uint64_t isqrt(uint64_t n);

bool is_squarefree(uint64_t n);

// n = s^2 * k with k squarefree; returns {s, k}.
std::pair<uint64_t, uint64_t> square_decompose(uint64_t n);

// g = gcd(|a|,|b|) >= 0 with g = x*a + y*b
int128 gcdext(int128 a, int128 b, int128& x, int128& y);

// Smallest-prime-factor sieve, for bulk factoring of n <= limit.
std::vector<uint32_t> spf_sieve(uint32_t limit);

}  // namespace factorlat
