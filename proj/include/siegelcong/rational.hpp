#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "siegelcong/error.hpp"

namespace siegelcong {

using Integer = mpz_class;
// mpq_class keeps lowest terms with a positive denominator as long as every
// value built from raw parts goes through make_rational().
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  require(den != 0, ErrorCode::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

inline Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

/// "num/den", always with the slash, lowest terms and positive denominator.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string num_s(text.substr(0, slash));
  std::string den_s = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  Integer num, den;
  if (num_s.empty() || den_s.empty() || num.set_str(num_s, 10) != 0 || den.set_str(den_s, 10) != 0) {
    throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
  }
  return make_rational(num, den);
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// ---------------------------------------------------------------------------
// machine-integer helpers

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline std::int64_t isqrt(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square(std::int64_t n) {
  if (n < 0) return false;
  const auto r = isqrt(n);
  return r * r == n;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

inline void require_prime(std::int64_t p) {
  require(is_prime(p), ErrorCode::NotPrime, std::to_string(p) + " is not prime");
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo m (gcd must be 1).
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  require(old_r == 1, ErrorCode::InvalidArgument, "not invertible modulo " + std::to_string(m));
  return mod_floor(old_s, m);
}

/// Prime factorization by trial division, ascending primes.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  n = n < 0 ? -n : n;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out{1};
  for (const auto& [q, e] : factorize(n)) {
    const auto size = out.size();
    std::int64_t pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < size; ++j) out.push_back(out[j] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int mobius(std::int64_t n) {
  int mu = 1;
  for (const auto& [q, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

// ---------------------------------------------------------------------------
// p-adic valuation

class PValuation {
 public:
  enum class Kind { Finite, Infinity };

  static PValuation finite(std::int64_t prime, std::int64_t value) {
    return PValuation(prime, Kind::Finite, value);
  }
  static PValuation infinity(std::int64_t prime) { return PValuation(prime, Kind::Infinity, 0); }

  std::int64_t prime() const { return prime_; }
  Kind kind() const { return kind_; }
  bool is_infinite() const { return kind_ == Kind::Infinity; }

  std::int64_t value() const {
    require(!is_infinite(), ErrorCode::InvalidArgument, "valuation of zero is infinite");
    return value_;
  }

  bool at_least(std::int64_t bound) const { return is_infinite() || value_ >= bound; }

  std::string to_string() const { return is_infinite() ? "INFINITY" : std::to_string(value_); }

  friend bool operator==(const PValuation&, const PValuation&) = default;

 private:
  PValuation(std::int64_t prime, Kind kind, std::int64_t value) : prime_(prime), kind_(kind), value_(value) {}

  std::int64_t prime_;
  Kind kind_;
  std::int64_t value_;
};

inline std::int64_t integer_valuation(Integer n, std::int64_t p) {
  std::int64_t v = 0;
  const Integer pp = to_integer(p);
  while (n != 0 && mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
    ++v;
  }
  return v;
}

inline PValuation p_valuation(const Rational& q, std::int64_t p) {
  require_prime(p);
  if (q == 0) return PValuation::infinity(p);
  return PValuation::finite(p, integer_valuation(q.get_num(), p) - integer_valuation(q.get_den(), p));
}

inline std::int64_t residue_mod_p(const Integer& n, std::int64_t p) {
  return static_cast<std::int64_t>(mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(p)));
}

/// num * den^{-1} mod p for a p-integral rational.
inline std::int64_t residue_mod_p(const Rational& q, std::int64_t p) {
  require_prime(p);
  const std::int64_t den = residue_mod_p(q.get_den(), p);
  if (den == 0) {
    throw Error(ErrorCode::DenominatorDivisible, to_string(q) + " is not " + std::to_string(p) + "-integral");
  }
  const std::int64_t num = residue_mod_p(q.get_num(), p);
  return static_cast<std::int64_t>(mul_mod(static_cast<std::uint64_t>(num),
                                           static_cast<std::uint64_t>(inv_mod(den, p)),
                                           static_cast<std::uint64_t>(p)));
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer pow_integer(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Rational pow_rational(const Rational& base, unsigned long exp) {
  Rational r(pow_integer(base.get_num(), exp), pow_integer(base.get_den(), exp));
  return r;
}

}  // namespace siegelcong
