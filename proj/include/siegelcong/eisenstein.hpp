#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "siegelcong/bernoulli.hpp"
#include "siegelcong/characters.hpp"
#include "siegelcong/ntt.hpp"
#include "siegelcong/qexp.hpp"
#include "siegelcong/quadforms.hpp"
#include "siegelcong/rational.hpp"

namespace siegelcong {

// ---------------------------------------------------------------------------
// divisor sums and degree 1

inline Integer divisor_sigma(std::int64_t r, std::int64_t t) {
  require(r >= 0 && t >= 1, ErrorCode::InvalidArgument, "divisor_sigma needs r >= 0, t >= 1");
  Integer sum(0);
  for (const auto d : divisors(t)) sum += pow_integer(to_integer(d), static_cast<unsigned long>(r));
  return sum;
}

/// sigma_r(t) for 0 <= t <= t_max by a divisor sieve; entry 0 is unused (0).
inline std::vector<Integer> sigma_table(std::int64_t r, std::int64_t t_max) {
  std::vector<Integer> table(static_cast<std::size_t>(t_max + 1), Integer(0));
  for (std::int64_t d = 1; d <= t_max; ++d) {
    const Integer dr = pow_integer(to_integer(d), static_cast<unsigned long>(r));
    for (std::int64_t m = d; m <= t_max; m += d) table[static_cast<std::size_t>(m)] += dr;
  }
  return table;
}

inline void require_eisenstein_weight(std::int64_t k) {
  require(k >= 4 && k % 2 == 0, ErrorCode::InvalidArgument,
          "Eisenstein weight must be even and >= 4, got " + std::to_string(k));
}

/// -2k / B_k, the coefficient multiplying sigma_{k-1}(t) in E_k.
inline Rational eis1_scale(std::int64_t k) {
  return Rational(-2 * k) / bernoulli(k);
}

/// Normalized E_k: a(0) = 1, a(t) = -(2k/B_k) sigma_{k-1}(t).
inline FourierExpansion eis1(std::int64_t k, std::int64_t t_max) {
  require_eisenstein_weight(k);
  auto out = FourierExpansion::degree1(t_max, "E_" + std::to_string(k) + "^(1)");
  const auto scale = eis1_scale(k);
  const auto sigma = sigma_table(k - 1, t_max);
  out.set(0, Rational(1));
  for (std::int64_t t = 1; t <= t_max; ++t) out.set(t, scale * Rational(sigma[static_cast<std::size_t>(t)]));
  return out;
}

// ---------------------------------------------------------------------------
// Cohen's function

namespace detail {

class CohenCache {
 public:
  static CohenCache& instance() {
    static CohenCache cache;
    return cache;
  }

  template <typename Compute>
  Rational get(std::int64_t r, std::int64_t n, Compute&& compute) {
    const auto key = std::make_pair(r, n);
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

/// H(r, N). H(r,0) = zeta(1-2r); for (-1)^r N = D0 f^2,
/// H(r,N) = L(1-r, chi_D0) sum_{d|f} mu(d) chi_D0(d) d^{r-1} sigma_{2r-1}(f/d);
/// zero when (-1)^r N is 2 or 3 mod 4.
inline Rational cohen_h(std::int64_t r, std::int64_t n) {
  require(r >= 1 && n >= 0, ErrorCode::InvalidArgument, "cohen_h needs r >= 1, N >= 0");
  if (n == 0) return -bernoulli(2 * r) / Rational(static_cast<long>(2 * r));
  const std::int64_t D = (r % 2 == 0) ? n : -n;
  if (const auto m = mod_floor(D, 4); m == 2 || m == 3) return Rational(0);
  return detail::CohenCache::instance().get(r, n, [&] {
    const auto [d0, f] = fundamental_decompose(D);
    const QuadCharacter chi(d0);
    require(!(chi.is_trivial() && r == 1), ErrorCode::TrivialM1, "L(0, trivial) does not occur for valid N");
    const Rational l_value = -gen_bernoulli(r, chi) / Rational(static_cast<long>(r));
    Rational sum(0);
    for (const auto d : divisors(f)) {
      const int mu = mobius(d);
      if (mu == 0) continue;
      const int c = chi(d);
      if (c == 0) continue;
      sum += Rational(mu * c) * Rational(pow_integer(to_integer(d), static_cast<unsigned long>(r - 1))) *
             Rational(divisor_sigma(2 * r - 1, f / d));
    }
    Rational h = l_value * sum;
    h.canonicalize();
    return h;
  });
}

// ---------------------------------------------------------------------------
// degree 2

/// 2 / (zeta(1-k) zeta(3-2k)) with zeta(1-m) = -B_m/m.
inline Rational eis2_scale(std::int64_t k) {
  const Rational z1 = -bernoulli(k) / Rational(static_cast<long>(k));
  const Rational z2 = -bernoulli(2 * k - 2) / Rational(static_cast<long>(2 * k - 2));
  return Rational(2) / (z1 * z2);
}

/// Fourier coefficient of the degree-2 Siegel Eisenstein series E_k at a psd T.
inline Rational eis2_coefficient(std::int64_t k, const BinaryHalfIntegral& t) {
  require_eisenstein_weight(k);
  require(t.is_positive_semidefinite(), ErrorCode::InvalidArgument, "(" + t.to_string() + ") is not psd");
  if (t.is_zero()) return Rational(1);
  const std::int64_t det2 = t.det2();
  if (det2 == 0) return eis1_scale(k) * Rational(divisor_sigma(k - 1, t.content()));
  Rational sum(0);
  for (const auto d : divisors(t.content())) {
    sum += Rational(pow_integer(to_integer(d), static_cast<unsigned long>(k - 1))) * cohen_h(k - 1, det2 / (d * d));
  }
  Rational value = eis2_scale(k) * sum;
  value.canonicalize();
  return value;
}

/// Class-keyed expansion of E_k^(2) over the given truncation.
inline FourierExpansion eis2(std::int64_t k, Truncation truncation) {
  require_eisenstein_weight(k);
  auto out = FourierExpansion::degree2(truncation, FourierExpansion::Storage::Classes,
                                       "E_" + std::to_string(k) + "^(2)");
  for (const auto& key : out.region_keys()) out.set(key, eis2_coefficient(k, key));
  return out;
}

inline FourierExpansion eis2(std::int64_t k, std::int64_t trace_bound) {
  return eis2(k, Truncation::by_trace(trace_bound));
}

// ---------------------------------------------------------------------------
// Delta and G_12

/// tau(t) for t <= t_max from q * prod (1 - q^n)^24.
///
/// The Euler product is expanded by the pentagonal number theorem, raised to
/// the 24th power by repeated squaring modulo several NTT primes, and lifted
/// back to Z by CRT. The primes are chosen so their product exceeds
/// 4 t_max^6 > 2 max |tau(t)| (Deligne: |tau(t)| <= d(t) t^{11/2} < 2 t^6).
inline FourierExpansion delta_expansion(std::int64_t t_max) {
  require(t_max >= 1, ErrorCode::InvalidArgument, "delta_expansion needs t_max >= 1");
  const auto length = static_cast<std::size_t>(t_max);  // coefficients of q^0..q^{t_max-1}
  std::vector<int> euler(length, 0);
  for (std::int64_t k = 0;; ++k) {
    bool any = false;
    for (const std::int64_t j : {k, -k - 1}) {
      // generalized pentagonal numbers j(3j-1)/2 for j = 0, -1, 1, -2, 2, ...
      const std::int64_t e = j * (3 * j - 1) / 2;
      if (e < static_cast<std::int64_t>(length)) {
        euler[static_cast<std::size_t>(e)] = (j % 2 == 0) ? 1 : -1;
        any = true;
      }
    }
    if (!any) break;
  }

  Integer needed = 4 * pow_integer(to_integer(t_max), 6);
  std::vector<std::uint32_t> primes;
  Integer modulus(1);
  for (const auto p : ntt::friendly_primes()) {
    if (modulus > needed) break;
    primes.push_back(p);
    modulus *= Integer(static_cast<unsigned long>(p));
  }
  require(modulus > needed, ErrorCode::InvalidArgument, "t_max too large for the CRT prime set");

  std::vector<std::vector<std::uint32_t>> residues;
  for (const auto p : primes) {
    const ntt::Field field(p);
    std::vector<std::uint32_t> base(length);
    for (std::size_t i = 0; i < length; ++i) base[i] = euler[i] >= 0 ? static_cast<std::uint32_t>(euler[i]) : p - 1;
    residues.push_back(field.power(base, 24, length));
  }

  auto out = FourierExpansion::degree1(t_max, "Delta");
  std::vector<std::uint32_t> column(primes.size());
  for (std::int64_t t = 1; t <= t_max; ++t) {
    for (std::size_t i = 0; i < primes.size(); ++i) column[i] = residues[i][static_cast<std::size_t>(t - 1)];
    out.set(t, Rational(ntt::crt_symmetric(column, primes)));
  }
  return out;
}

/// G_12 = -(B_12/24) E_12: a(0) = -B_12/24, a(t) = sigma_11(t).
inline FourierExpansion g12_expansion(std::int64_t t_max) {
  require(t_max >= 1, ErrorCode::InvalidArgument, "g12_expansion needs t_max >= 1");
  auto out = FourierExpansion::degree1(t_max, "G_12");
  out.set(0, -bernoulli(12) / Rational(24));
  const auto sigma = sigma_table(11, t_max);
  for (std::int64_t t = 1; t <= t_max; ++t) out.set(t, Rational(sigma[static_cast<std::size_t>(t)]));
  return out;
}

// ---------------------------------------------------------------------------
// T-independent factors of the Eisenstein coefficients in any degree

enum class Parity { Even, Odd };

struct BoechererFactor {
  std::int64_t n = 0;
  std::int64_t k = 0;
  Rational value;
  Parity parity = Parity::Even;
};

/// (k/B_k) prod_{i=1}^{u} (k-i)/B_{2k-2i}, u = (n-2)/2 for even n, (n-1)/2 for odd n.
inline BoechererFactor bocherer_factor(std::int64_t n, std::int64_t k) {
  require(n >= 1, ErrorCode::InvalidArgument, "degree must be positive");
  require(k >= 2 && k % 2 == 0, ErrorCode::InvalidArgument, "weight must be even and >= 2");
  const Parity parity = n % 2 == 0 ? Parity::Even : Parity::Odd;
  const std::int64_t upper = parity == Parity::Even ? (n - 2) / 2 : (n - 1) / 2;
  require(2 * k - 2 * upper >= 2, ErrorCode::InvalidArgument, "Bernoulli index below 2");
  Rational value = Rational(static_cast<long>(k)) / bernoulli(k);
  for (std::int64_t i = 1; i <= upper; ++i) {
    value *= Rational(static_cast<long>(k - i)) / bernoulli(2 * k - 2 * i);
  }
  value.canonicalize();
  return {n, k, value, parity};
}

inline PValuation alpha_p(std::int64_t n, std::int64_t k, std::int64_t p) {
  require(n % 2 == 0, ErrorCode::InvalidArgument, "alpha_p is defined for even degree");
  return p_valuation(bocherer_factor(n, k).value, p);
}

inline PValuation beta_p(std::int64_t n, std::int64_t k, std::int64_t p) {
  require(n % 2 == 1, ErrorCode::InvalidArgument, "beta_p is defined for odd degree");
  return p_valuation(bocherer_factor(n, k).value, p);
}

}  // namespace siegelcong
