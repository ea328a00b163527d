#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

#include "siegelcong/bernoulli.hpp"
#include "siegelcong/rational.hpp"

namespace siegelcong {

/// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(std::int64_t a, std::int64_t n) {
  require(n > 0 && n % 2 == 1, ErrorCode::InvalidArgument, "Jacobi symbol needs odd positive n");
  a = mod_floor(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const auto r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

/// Kronecker symbol (a/n) with the sign rule at n < 0 and (a/2) = (2/|a|) for odd a.
inline int kronecker(std::int64_t a, std::int64_t n) {
  require(!(a == 0 && n == 0), ErrorCode::InvalidArgument, "kronecker(0, 0) is undefined");
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    const auto r = mod_floor(a, 8);
    if ((twos % 2 == 1) && (r == 3 || r == 5)) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(a, n);
}

inline bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 1 || d == 0) return false;
  const auto squarefree = [](std::int64_t m) {
    for (const auto& [q, e] : factorize(m)) {
      if (e > 1) return false;
    }
    return true;
  };
  if (mod_floor(d, 4) == 1) return squarefree(d);
  if (mod_floor(d, 4) != 0) return false;
  const auto m = d / 4;
  const auto r = mod_floor(m, 4);
  return (r == 2 || r == 3) && squarefree(m);
}

struct FundamentalDecomposition {
  std::int64_t d0;  // 1 or a fundamental discriminant
  std::int64_t f;   // D = d0 * f^2, f > 0
};

inline FundamentalDecomposition fundamental_decompose(std::int64_t D) {
  require(D != 0, ErrorCode::InvalidArgument, "discriminant must be nonzero");
  const auto r = mod_floor(D, 4);
  require(r == 0 || r == 1, ErrorCode::InvalidArgument,
          "discriminant " + std::to_string(D) + " is not 0 or 1 mod 4");
  std::int64_t core = D < 0 ? -1 : 1;
  std::int64_t g = 1;
  for (const auto& [q, e] : factorize(D)) {
    if (e % 2 == 1) core *= q;
    for (int i = 0; i < e / 2; ++i) g *= q;
  }
  if (mod_floor(core, 4) == 1) return {core, g};
  // core = 2, 3 mod 4: the 4 must come out of the square part.
  return {4 * core, g / 2};
}

/// Primitive real character (d0 / .), trivial when d0 = 1.
class QuadCharacter {
 public:
  explicit QuadCharacter(std::int64_t fundamental_discriminant) : d0_(fundamental_discriminant) {
    require(d0_ == 1 || is_fundamental_discriminant(d0_), ErrorCode::InvalidArgument,
            std::to_string(d0_) + " is not a fundamental discriminant");
  }

  static QuadCharacter trivial() { return QuadCharacter(1); }

  std::int64_t fundamental_discriminant() const { return d0_; }
  std::int64_t conductor() const { return d0_ == 1 ? 1 : (d0_ < 0 ? -d0_ : d0_); }
  bool is_trivial() const { return d0_ == 1; }
  int parity() const { return d0_ < 0 ? -1 : 1; }  // chi(-1)

  int operator()(std::int64_t a) const {
    if (d0_ == 1) return 1;
    return kronecker(d0_, a);
  }

  friend bool operator==(const QuadCharacter&, const QuadCharacter&) = default;

 private:
  std::int64_t d0_;
};

inline QuadCharacter quad_char(std::int64_t D) { return QuadCharacter(fundamental_decompose(D).d0); }

namespace detail {

class GenBernoulliCache {
 public:
  static GenBernoulliCache& instance() {
    static GenBernoulliCache cache;
    return cache;
  }

  template <typename Compute>
  Rational get(std::int64_t m, std::int64_t d0, Compute&& compute) {
    const auto key = std::make_pair(m, d0);
    {
      std::shared_lock lock(mutex_);
      if (auto it = values_.find(key); it != values_.end()) return it->second;
    }
    Rational value = compute();
    std::unique_lock lock(mutex_);
    return values_.emplace(key, std::move(value)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> values_;
};

}  // namespace detail

/// B_{m,chi} = f^{m-1} sum_{a=1}^{f} chi(a) B_m(a/f).
///
/// Evaluated as sum_j C(m,j) B_j f^{j-1} S_{m-j} with S_e = sum_a chi(a) a^e,
/// which is the same sum with the powers of a collected.
inline Rational gen_bernoulli(std::int64_t m, const QuadCharacter& chi) {
  require(m >= 1, ErrorCode::InvalidArgument, "generalized Bernoulli index must be >= 1");
  if (chi.is_trivial()) {
    if (m == 1) throw Error(ErrorCode::TrivialM1, "B_{1,chi} for trivial chi is convention dependent");
    return bernoulli(m);
  }
  return detail::GenBernoulliCache::instance().get(m, chi.fundamental_discriminant(), [&] {
    const std::int64_t f = chi.conductor();
    std::vector<Integer> power_sums(static_cast<std::size_t>(m + 1), Integer(0));
    Integer power;
    for (std::int64_t a = 1; a < f; ++a) {
      const int c = chi(a);
      if (c == 0) continue;
      power = 1;
      const Integer base = to_integer(a);
      for (std::int64_t e = 0; e <= m; ++e) {
        if (c > 0) {
          power_sums[static_cast<std::size_t>(e)] += power;
        } else {
          power_sums[static_cast<std::size_t>(e)] -= power;
        }
        power *= base;
      }
    }
    Rational total(0);
    const Integer fz = to_integer(f);
    for (std::int64_t j = 0; j <= m; ++j) {
      const Rational bj = bernoulli(j);
      if (bj == 0) continue;
      Rational term = Rational(binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(j))) * bj *
                      Rational(power_sums[static_cast<std::size_t>(m - j)]);
      if (j == 0) {
        term /= Rational(fz);
      } else {
        term *= Rational(pow_integer(fz, static_cast<unsigned long>(j - 1)));
      }
      total += term;
    }
    total.canonicalize();
    return total;
  });
}

struct GenBernoulliValuation {
  PValuation valuation;
  // Carlitz: a p in the denominator is only possible when f = p and
  // m = t(p-1)/2 with t odd.
  bool predicted_denominator_possible;
};

inline bool carlitz_denominator_possible(std::int64_t m, const QuadCharacter& chi, std::int64_t p) {
  if (p == 2 || chi.conductor() != p) return false;
  const std::int64_t half = (p - 1) / 2;
  return m % half == 0 && (m / half) % 2 == 1;
}

inline GenBernoulliValuation gen_bernoulli_valuation(std::int64_t m, const QuadCharacter& chi, std::int64_t p) {
  require_prime(p);
  const auto v = p_valuation(gen_bernoulli(m, chi), p);
  const bool possible = carlitz_denominator_possible(m, chi, p);
  if (!v.at_least(0) && !possible) {
    throw Error(ErrorCode::ConstructionFailure,
                "ord_p(B_{m,chi}) < 0 outside the Carlitz denominator regime (m=" + std::to_string(m) +
                    ", d0=" + std::to_string(chi.fundamental_discriminant()) + ", p=" + std::to_string(p) + ")");
  }
  return {v, possible};
}

struct CarlitzCongruence {
  std::int64_t lhs;  // B_{p,chi}/p mod p
  std::int64_t rhs;  // (1/f)(1 - chi(p)) sum_{s=1}^f s chi(s) mod p
  bool equal;
};

inline CarlitzCongruence carlitz_congruence_check(const QuadCharacter& chi, std::int64_t p) {
  require_prime(p);
  require(!chi.is_trivial(), ErrorCode::InvalidArgument, "Carlitz congruence needs a nontrivial character");
  const std::int64_t f = chi.conductor();
  if (f % p == 0) {
    throw Error(ErrorCode::PDividesConductor, std::to_string(p) + " divides conductor " + std::to_string(f));
  }
  const std::int64_t lhs = residue_mod_p(gen_bernoulli(p, chi) / Rational(static_cast<long>(p)), p);
  std::int64_t sum = 0;
  for (std::int64_t s = 1; s <= f; ++s) sum += s * chi(s);
  const Rational rhs_q = make_rational((1 - chi(p)) * sum, f);
  const std::int64_t rhs = residue_mod_p(rhs_q, p);
  return {lhs, rhs, lhs == rhs};
}

}  // namespace siegelcong
