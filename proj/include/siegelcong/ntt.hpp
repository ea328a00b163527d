#pragma once

#include <cstdint>
#include <vector>

#include "siegelcong/rational.hpp"

namespace siegelcong::ntt {

/// Number-theoretic transform modulo an NTT-friendly prime p = c * 2^k + 1.
class Field {
 public:
  explicit Field(std::uint32_t p) : p_(p) {
    std::uint32_t m = p - 1;
    while (m % 2 == 0) {
      m /= 2;
      ++two_adicity_;
    }
    // smallest primitive root: g^((p-1)/q) != 1 for each prime q | p-1
    const auto factors = factorize(p - 1);
    for (std::uint32_t g = 2;; ++g) {
      bool ok = true;
      for (const auto& [q, e] : factors) {
        if (pow_mod(g, (p - 1) / static_cast<std::uint64_t>(q), p) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        root_ = g;
        break;
      }
    }
  }

  std::uint32_t modulus() const { return p_; }
  int two_adicity() const { return two_adicity_; }

  void transform(std::vector<std::uint32_t>& a, bool inverse) const {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      std::uint64_t w = pow_mod(root_, (p_ - 1) / len, p_);
      if (inverse) w = pow_mod(w, p_ - 2, p_);
      for (std::size_t i = 0; i < n; i += len) {
        std::uint64_t wn = 1;
        for (std::size_t k = 0; k < len / 2; ++k) {
          const std::uint64_t u = a[i + k];
          const std::uint64_t v = a[i + k + len / 2] * wn % p_;
          a[i + k] = static_cast<std::uint32_t>(u + v >= p_ ? u + v - p_ : u + v);
          a[i + k + len / 2] = static_cast<std::uint32_t>(u >= v ? u - v : u + p_ - v);
          wn = wn * w % p_;
        }
      }
    }
    if (inverse) {
      const std::uint64_t inv_n = pow_mod(n % p_, p_ - 2, p_);
      for (auto& x : a) x = static_cast<std::uint32_t>(x * inv_n % p_);
    }
  }

  /// Product of two series truncated to `length` terms.
  std::vector<std::uint32_t> multiply(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b,
                                      std::size_t length) const {
    std::size_t n = 1;
    while (n < a.size() + b.size()) n <<= 1;
    require(n <= (std::size_t{1} << two_adicity_), ErrorCode::InvalidArgument, "NTT length exceeds 2-adicity");
    a.resize(n, 0);
    b.resize(n, 0);
    transform(a, false);
    transform(b, false);
    for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<std::uint32_t>(std::uint64_t{a[i]} * b[i] % p_);
    transform(a, true);
    a.resize(length);
    return a;
  }

  std::vector<std::uint32_t> power(const std::vector<std::uint32_t>& base, unsigned exp, std::size_t length) const {
    std::vector<std::uint32_t> result(length, 0);
    result[0] = 1;
    std::vector<std::uint32_t> sq = base;
    sq.resize(length, 0);
    bool first = true;
    while (exp > 0) {
      if (exp & 1) {
        result = first ? sq : multiply(result, sq, length);
        first = false;
      }
      exp >>= 1;
      if (exp > 0) sq = multiply(sq, sq, length);
    }
    return result;
  }

 private:
  std::uint32_t p_;
  std::uint32_t root_ = 0;
  int two_adicity_ = 0;
};

inline const std::vector<std::uint32_t>& friendly_primes() {
  static const std::vector<std::uint32_t> primes{998244353u, 167772161u, 469762049u, 754974721u,
                                                 1004535809u, 2013265921u};
  return primes;
}

/// Symmetric CRT lift of residues (one per prime) to the integer in (-M/2, M/2].
inline Integer crt_symmetric(const std::vector<std::uint32_t>& residues, const std::vector<std::uint32_t>& primes) {
  Integer value(0), modulus(1);
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const Integer p(static_cast<unsigned long>(primes[i]));
    // value + modulus * k == residue (mod p)
    const auto cur = residue_mod_p(value, primes[i]);
    const auto mod_p = residue_mod_p(modulus, primes[i]);
    const std::int64_t diff = mod_floor(static_cast<std::int64_t>(residues[i]) - cur, primes[i]);
    const auto k = mul_mod(static_cast<std::uint64_t>(diff), static_cast<std::uint64_t>(inv_mod(mod_p, primes[i])),
                           primes[i]);
    value += modulus * Integer(static_cast<unsigned long>(k));
    modulus *= p;
  }
  if (2 * value > modulus) value -= modulus;
  return value;
}

}  // namespace siegelcong::ntt
