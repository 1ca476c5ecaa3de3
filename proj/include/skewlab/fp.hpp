#pragma once

#include <cstdint>

#include "skewlab/error.hpp"

namespace skewlab {

using fp_t = std::uint64_t;

inline bool is_prime(fp_t n) {
  if (n < 2) return false;
  for (fp_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline fp_t fp_add(fp_t a, fp_t b, fp_t p) { return (a + b) % p; }
inline fp_t fp_sub(fp_t a, fp_t b, fp_t p) { return (a + p - b % p) % p; }
inline fp_t fp_mul(fp_t a, fp_t b, fp_t p) { return (a * b) % p; }
inline fp_t fp_neg(fp_t a, fp_t p) { return a == 0 ? 0 : p - a; }

inline fp_t fp_pow(fp_t a, std::uint64_t e, fp_t p) {
  fp_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = fp_mul(r, a, p);
    a = fp_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline fp_t fp_inv(fp_t a, fp_t p) {
  a %= p;
  require(a != 0, errc::division_by_zero, "inverse of 0 mod p");
  return fp_pow(a, p - 2, p);  // p prime
}

/// Reduce a (possibly negative) integer into {0,...,p-1}.
inline fp_t fp_of(long long v, fp_t p) {
  long long m = static_cast<long long>(p);
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<fp_t>(r);
}

/// Binomial coefficient mod p by Lucas' decomposition.
/// Convention: C(n,k) = 0 whenever k < 0, n < 0 or k > n.
inline fp_t binom_mod_p(long long n, long long k, fp_t p) {
  if (k < 0 || n < 0 || k > n) return 0;
  // Pascal row per base-p digit pair; digits of n and k base p.
  fp_t result = 1;
  while (n > 0 || k > 0) {
    fp_t nd = static_cast<fp_t>(n % static_cast<long long>(p));
    fp_t kd = static_cast<fp_t>(k % static_cast<long long>(p));
    if (kd > nd) return 0;
    // C(nd, kd) with kd <= nd < p; numerator and factorial stay units mod p
    fp_t num = 1, den = 1;
    for (fp_t i = 0; i < kd; ++i) {
      num = fp_mul(num, (nd - i) % p, p);
      den = fp_mul(den, (i + 1) % p, p);
    }
    result = fp_mul(result, fp_mul(num, fp_inv(den, p), p), p);
    n /= static_cast<long long>(p);
    k /= static_cast<long long>(p);
  }
  return result;
}

/// Deterministic PRNG (splitmix64); fully specified so that seeded
/// sampling is reproducible across platforms.
class splitmix64 {
 public:
  explicit splitmix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t next_below(std::uint64_t n) { return n ? next() % n : 0; }

 private:
  std::uint64_t state_;
};

}  // namespace skewlab
