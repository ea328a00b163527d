#pragma once

#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "siegelcong/rational.hpp"

namespace siegelcong {

namespace detail {

// Process-wide memo for B_0, B_1, ... . Extension happens under the unique
// lock and always recomputes from the same recurrence, so concurrent callers
// observe identical values.
class BernoulliTable {
 public:
  static BernoulliTable& instance() {
    static BernoulliTable table;
    return table;
  }

  Rational get(std::size_t m) {
    {
      std::shared_lock lock(mutex_);
      if (m < values_.size()) return values_[m];
    }
    std::unique_lock lock(mutex_);
    extend_to(m);
    return values_[m];
  }

 private:
  BernoulliTable() { values_.push_back(Rational(1)); }

  // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j  (B_1 = -1/2 convention).
  void extend_to(std::size_t m) {
    while (values_.size() <= m) {
      const std::size_t n = values_.size();
      if (n > 1 && n % 2 == 1) {
        values_.push_back(Rational(0));
        continue;
      }
      Rational sum(0);
      for (std::size_t j = 0; j < n; ++j) {
        if (values_[j] == 0) continue;
        sum += Rational(binomial(n + 1, j)) * values_[j];
      }
      Rational b = -sum / Rational(static_cast<long>(n + 1));
      b.canonicalize();
      values_.push_back(b);
    }
  }

  std::shared_mutex mutex_;
  std::vector<Rational> values_;
};

}  // namespace detail

/// m-th Bernoulli number with B_1 = -1/2.
inline Rational bernoulli(std::int64_t m) {
  require(m >= 0, ErrorCode::InvalidArgument, "Bernoulli index must be nonnegative");
  return detail::BernoulliTable::instance().get(static_cast<std::size_t>(m));
}

/// B_m(x) = sum_j C(m,j) B_j x^{m-j}.
inline Rational bernoulli_poly_eval(std::int64_t m, const Rational& x) {
  require(m >= 0, ErrorCode::InvalidArgument, "Bernoulli polynomial degree must be nonnegative");
  // Horner in x, leading coefficient B_0 = 1.
  Rational acc(0);
  for (std::int64_t j = 0; j <= m; ++j) {
    acc = acc * x + Rational(binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(j))) * bernoulli(j);
  }
  return acc;
}

struct VonStaudtClausen {
  std::vector<std::int64_t> primes;  // q prime with (q-1) | m, ascending
  Integer integer_part;              // B_m + sum 1/q
};

/// Reproduces von Staudt-Clausen for even m: B_m + sum_{(q-1)|m} 1/q is an integer.
inline VonStaudtClausen von_staudt_clausen(std::int64_t m) {
  require(m >= 2 && m % 2 == 0, ErrorCode::InvalidArgument, "von Staudt-Clausen needs even m >= 2");
  VonStaudtClausen out;
  Rational total = bernoulli(m);
  for (const auto d : divisors(m)) {
    if (is_prime(d + 1)) {
      out.primes.push_back(d + 1);
      total += make_rational(1, d + 1);
    }
  }
  std::sort(out.primes.begin(), out.primes.end());
  if (!is_integer(total)) {
    throw Error(ErrorCode::ConstructionFailure,
                "B_" + std::to_string(m) + " + sum 1/q = " + to_string(total) + " is not an integer");
  }
  out.integer_part = total.get_num();
  return out;
}

/// Kummer: B_{m1}/m1 == B_{m2}/m2 (mod p) when m1 == m2 (mod p-1), m_i != 0 (mod p-1).
inline bool kummer_check(std::int64_t m1, std::int64_t m2, std::int64_t p) {
  require_prime(p);
  require(m1 >= 2 && m2 >= 2 && m1 % 2 == 0 && m2 % 2 == 0, ErrorCode::InvalidArgument,
          "Kummer indices must be even and >= 2");
  for (const auto m : {m1, m2}) {
    if (mod_floor(m, p - 1) == 0) {
      throw Error(ErrorCode::InvalidPair, std::to_string(m) + " == 0 mod " + std::to_string(p - 1));
    }
  }
  require(mod_floor(m1 - m2, p - 1) == 0, ErrorCode::InvalidArgument, "indices not congruent mod p-1");
  const auto lhs = residue_mod_p(bernoulli(m1) / Rational(static_cast<long>(m1)), p);
  const auto rhs = residue_mod_p(bernoulli(m2) / Rational(static_cast<long>(m2)), p);
  return lhs == rhs;
}

/// Regular iff p divides none of the numerators of B_2, B_4, ..., B_{p-3}.
inline bool is_regular_prime(std::int64_t p) {
  require(p >= 3, ErrorCode::InvalidArgument, "regularity needs p >= 3");
  require_prime(p);
  const Integer pp = to_integer(p);
  for (std::int64_t m = 2; m <= p - 3; m += 2) {
    if (mpz_divisible_p(bernoulli(m).get_num().get_mpz_t(), pp.get_mpz_t())) return false;
  }
  return true;
}

}  // namespace siegelcong
