#ifndef GENPOS_FIELD_HPP
#define GENPOS_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace genpos {

struct SamplingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t res = 1;
    a %= n;
    while (e) {
      if (e & 1) res = mulmod(res, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return res;
  };
  // These witnesses decide primality for every n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Exact rational arithmetic over GMP.  mpq_class keeps every value
/// canonical: reduced fraction, positive denominator.
struct RationalField {
  using Element = mpq_class;
  static constexpr bool prime_mode = false;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(mpz_class(static_cast<long>(v))); }
  Element from_mpz(const mpz_class& z) const { return Element(z); }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (is_zero(a)) throw std::domain_error("RationalField: inverse of zero");
    return Element(1) / a;
  }
  Element div(const Element& a, const Element& b) const {
    if (is_zero(b)) throw std::domain_error("RationalField: division by zero");
    return a / b;
  }

  std::string str(const Element& a) const { return a.get_str(); }
  std::string name() const { return "rational"; }

  bool operator==(const RationalField&) const { return true; }
};

/// Z/p for a prime p < 2^63, elements stored as canonical residues.
/// Ranks over Z/p can only drop relative to the rational rank of the same
/// integer data, so a maximal-rank certificate obtained here transfers to
/// the rationals while a failure is inconclusive.
struct PrimeField {
  std::uint64_t p = 0;
  using Element = std::uint64_t;
  static constexpr bool prime_mode = true;

  PrimeField() = default;
  explicit PrimeField(std::uint64_t modulus) : p(modulus) {
    if (!is_prime_u64(p)) throw std::invalid_argument("PrimeField: modulus is not prime");
    if (p >> 63) throw std::invalid_argument("PrimeField: modulus must be < 2^63");
  }

  Element zero() const { return 0; }
  Element one() const { return p == 1 ? 0 : 1; }
  Element from_int(std::int64_t v) const {
    std::int64_t sp = static_cast<std::int64_t>(p);
    std::int64_t r = v % sp;
    if (r < 0) r += sp;
    return static_cast<Element>(r);
  }
  Element from_mpz(const mpz_class& z) const {
    mpz_class r = z % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return static_cast<Element>(r.get_ui());
  }

  bool is_zero(const Element& a) const { return a == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }

  Element add(const Element& a, const Element& b) const {
    Element r = a + b;
    if (r >= p) r -= p;
    return r;
  }
  Element sub(const Element& a, const Element& b) const { return a >= b ? a - b : a + p - b; }
  Element mul(const Element& a, const Element& b) const {
    return static_cast<Element>((static_cast<unsigned __int128>(a) * b) % p);
  }
  Element neg(const Element& a) const { return a == 0 ? 0 : p - a; }
  Element inv(const Element& a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    // Extended Euclid on (a, p); p prime guarantees gcd 1.
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<Element>(t);
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  std::string str(const Element& a) const { return std::to_string(a); }
  std::string name() const { return "fp(" + std::to_string(p) + ")"; }

  bool operator==(const PrimeField& o) const { return p == o.p; }
};

}  // namespace genpos

#endif  // GENPOS_FIELD_HPP
