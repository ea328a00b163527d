#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bitset>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "siegelcong/eisenstein.hpp"
#include "siegelcong/qexp.hpp"
#include "siegelcong/quadforms.hpp"
#include "siegelcong/rational.hpp"

namespace siegelcong {

// ---------------------------------------------------------------------------
// binary Golay code

struct BinaryCode {
  int length = 24;
  int dimension = 12;
  std::vector<std::uint32_t> generators;  // bit i = coordinate i
  std::vector<std::uint32_t> codewords;   // sorted, all 2^dimension words
  std::vector<std::uint64_t> weight_enumerator;

  bool contains(std::uint32_t word) const { return std::binary_search(codewords.begin(), codewords.end(), word); }

  int minimum_weight() const {
    for (std::size_t w = 1; w < weight_enumerator.size(); ++w) {
      if (weight_enumerator[w] != 0) return static_cast<int>(w);
    }
    return 0;
  }

  std::string row_bits(std::size_t row) const {
    std::string s;
    for (int i = 0; i < length; ++i) s.push_back((generators[row] >> i) & 1U ? '1' : '0');
    return s;
  }
};

namespace detail {

// GF(2^11) with modulus x^11 + x^2 + 1
constexpr std::uint32_t kGf11Modulus = 0x805;

inline std::uint32_t gf11_mul(std::uint32_t a, std::uint32_t b) {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1U) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & 0x800U) a ^= kGf11Modulus;
  }
  return r;
}

inline std::uint32_t gf11_pow(std::uint32_t a, std::uint32_t e) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1U) r = gf11_mul(r, a);
    a = gf11_mul(a, a);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Extended quadratic-residue code of length 24.
///
/// g(x) = prod_{r in QR(23)} (x - alpha^r) with alpha of order 23 in GF(2^11);
/// rows are x^i g(x), i < 12, followed by an overall parity bit.
inline BinaryCode golay_code() {
  using detail::gf11_mul;
  using detail::gf11_pow;
  const std::uint32_t beta = 2;
  require(gf11_pow(beta, 2047) == 1 && gf11_pow(beta, 89) != 1 && gf11_pow(beta, 23) != 1,
          ErrorCode::ConstructionFailure, "x is not primitive in GF(2^11)");
  const std::uint32_t alpha = gf11_pow(beta, 89);

  std::vector<std::uint32_t> poly{1};  // coefficients low to high
  for (std::int64_t r = 1; r < 23; ++r) {
    if (jacobi(r, 23) != 1) continue;
    const std::uint32_t root = gf11_pow(alpha, static_cast<std::uint32_t>(r));
    std::vector<std::uint32_t> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] ^= poly[i];
      next[i] ^= gf11_mul(poly[i], root);
    }
    poly = std::move(next);
  }
  require(poly.size() == 12, ErrorCode::ConstructionFailure, "QR polynomial has wrong degree");
  std::uint32_t g = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    require(poly[i] <= 1, ErrorCode::ConstructionFailure, "QR polynomial is not binary");
    g |= poly[i] << i;
  }

  BinaryCode code;
  for (int i = 0; i < 12; ++i) {
    std::uint32_t row = g << i;
    if (std::bitset<23>(row).count() % 2 == 1) row |= 1U << 23;
    code.generators.push_back(row);
  }
  code.codewords.reserve(4096);
  code.weight_enumerator.assign(25, 0);
  for (std::uint32_t mask = 0; mask < 4096; ++mask) {
    std::uint32_t word = 0;
    for (int i = 0; i < 12; ++i) {
      if (mask >> i & 1U) word ^= code.generators[static_cast<std::size_t>(i)];
    }
    code.codewords.push_back(word);
    ++code.weight_enumerator[std::bitset<24>(word).count()];
  }
  std::sort(code.codewords.begin(), code.codewords.end());
  const bool distinct = std::adjacent_find(code.codewords.begin(), code.codewords.end()) == code.codewords.end();
  bool self_orthogonal = true;
  for (const auto a : code.generators) {
    for (const auto b : code.generators) self_orthogonal = self_orthogonal && std::bitset<24>(a & b).count() % 2 == 0;
  }
  require(distinct && code.codewords.size() == 4096, ErrorCode::ConstructionFailure, "Golay generators are dependent");
  require(self_orthogonal, ErrorCode::ConstructionFailure, "Golay code is not self-dual");
  require(code.minimum_weight() == 8, ErrorCode::ConstructionFailure, "Golay minimum weight is not 8");
  require(code.weight_enumerator[8] == 759, ErrorCode::ConstructionFailure, "Golay code does not have 759 octads");
  return code;
}

inline nlohmann::ordered_json to_json(const BinaryCode& code) {
  nlohmann::ordered_json j;
  j["length"] = code.length;
  j["dimension"] = code.dimension;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < code.generators.size(); ++i) rows.push_back(code.row_bits(i));
  j["generators"] = rows;
  return j;
}

// ---------------------------------------------------------------------------
// integral lattices

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

struct IntegralLattice {
  std::string name;
  IntMatrix basis;       // rows, in coordinates scaled by sqrt(scale)
  std::int64_t scale = 1;
  RationalMatrix gram;   // basis * basis^T / scale

  std::size_t rank() const { return gram.size(); }
};

inline Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

inline RationalMatrix gram_of(const IntMatrix& basis, std::int64_t scale) {
  const std::size_t n = basis.size();
  RationalMatrix g(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t dot = 0;
      for (std::size_t k = 0; k < basis[i].size(); ++k) dot += basis[i][k] * basis[j][k];
      g[i][j] = make_rational(dot, scale);
    }
  }
  return g;
}

/// Integer Gram matrix; throws unless every entry is integral.
inline IntMatrix integral_gram(const IntegralLattice& lattice) {
  IntMatrix g(lattice.rank(), std::vector<std::int64_t>(lattice.rank()));
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    for (std::size_t j = 0; j < lattice.rank(); ++j) {
      const auto& q = lattice.gram[i][j];
      require(is_integer(q), ErrorCode::InvalidArgument, lattice.name + " Gram matrix is not integral");
      g[i][j] = q.get_num().get_si();
    }
  }
  return g;
}

/// Row Hermite normal form of the lattice spanned by `rows` (full column rank).
inline IntMatrix hermite_normal_form(std::vector<std::vector<Integer>> rows) {
  require(!rows.empty(), ErrorCode::InvalidArgument, "empty generating set");
  const std::size_t n = rows.front().size();
  IntMatrix out;
  for (std::size_t col = 0; col < n; ++col) {
    // Euclid on column col across the remaining rows
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = col; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])) best = r;
      }
      require(best != rows.size(), ErrorCode::ConstructionFailure, "generating set is not of full rank");
      std::swap(rows[col], rows[best]);
      bool done = true;
      for (std::size_t r = col + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[col][col].get_mpz_t());
        for (std::size_t c = col; c < n; ++c) rows[r][c] -= q * rows[col][c];
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[col][col] < 0) {
      for (auto& v : rows[col]) v = -v;
    }
    for (std::size_t r = 0; r < col; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[col][col].get_mpz_t());
      for (std::size_t c = col; c < n; ++c) rows[r][c] -= q * rows[col][c];
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::int64_t> row;
    for (const auto& v : rows[r]) {
      require(v.fits_slong_p(), ErrorCode::ConstructionFailure, "HNF entry overflow");
      row.push_back(v.get_si());
    }
    out.push_back(std::move(row));
  }
  return out;
}

inline bool hnf_contains(const IntMatrix& hnf, std::vector<std::int64_t> v) {
  for (std::size_t i = 0; i < hnf.size(); ++i) {
    if (v[i] % hnf[i][i] != 0) return false;
    const std::int64_t q = v[i] / hnf[i][i];
    for (std::size_t c = i; c < v.size(); ++c) v[c] -= q * hnf[i][c];
  }
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

inline Integer hnf_determinant(const IntMatrix& hnf) {
  Integer det(1);
  for (std::size_t i = 0; i < hnf.size(); ++i) det *= Integer(static_cast<long>(hnf[i][i]));
  return det;
}

// ---------------------------------------------------------------------------
// Leech lattice

/// x in Z^24 (coordinates scaled by sqrt 8) lies in the Leech lattice iff all
/// x_i == m mod 2, {i : x_i == m+2 mod 4} supports a Golay codeword, and
/// sum x_i == 4m mod 8.
inline bool leech_member(const BinaryCode& code, const std::vector<std::int64_t>& x) {
  require(x.size() == 24, ErrorCode::InvalidArgument, "Leech vectors have 24 coordinates");
  const std::int64_t m = mod_floor(x[0], 2);
  std::uint32_t support = 0;
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < 24; ++i) {
    if (mod_floor(x[i], 2) != m) return false;
    if (mod_floor(x[i], 4) == m + 2) support |= 1U << i;
    sum += x[i];
  }
  return code.contains(support) && mod_floor(sum, 8) == 4 * m;
}

/// Lattice reduction on an integer Gram matrix (delta = 0.99).
inline IntMatrix lll_reduce_gram(IntMatrix g) {
  const std::size_t n = g.size();
  std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
  std::vector<long double> r(n, 0);
  auto gram_schmidt = [&](std::size_t upto) {
    for (std::size_t i = 0; i <= upto; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        long double s = static_cast<long double>(g[i][j]);
        for (std::size_t l = 0; l < j; ++l) s -= mu[j][l] * mu[i][l] * r[l];
        mu[i][j] = s / r[j];
      }
      long double s = static_cast<long double>(g[i][i]);
      for (std::size_t l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * r[l];
      r[i] = s;
    }
  };
  auto subtract = [&](std::size_t k, std::size_t j, std::int64_t q) {
    // b_k -= q b_j
    const std::int64_t gkk = g[k][k] - 2 * q * g[k][j] + q * q * g[j][j];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      g[k][i] -= q * g[j][i];
      g[i][k] = g[k][i];
    }
    g[k][k] = gkk;
  };
  std::size_t k = 1;
  gram_schmidt(n - 1);
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      const auto q = static_cast<std::int64_t>(std::llround(mu[k][jj]));
      if (q == 0) continue;
      subtract(k, jj, q);
      gram_schmidt(k);
    }
    if (r[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * r[k - 1]) {
      ++k;
    } else {
      std::swap(g[k], g[k - 1]);
      for (auto& row : g) std::swap(row[k], row[k - 1]);
      gram_schmidt(k);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return g;
}

namespace detail {

/// Fincke-Pohst enumeration of x != 0 (up to sign) with x^T G x <= bound.
class ShortVectorEnumerator {
 public:
  ShortVectorEnumerator(const IntMatrix& gram, std::int64_t max_norm) : n_(gram.size()), max_norm_(max_norm) {
    q_.assign(n_, std::vector<long double>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) q_[i][j] = static_cast<long double>(gram[i][j]);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      require(q_[i][i] > 0, ErrorCode::InvalidArgument, "Gram matrix is not positive definite");
      for (std::size_t j = i + 1; j < n_; ++j) {
        q_[j][i] = q_[i][j];
        q_[i][j] /= q_[i][i];
      }
      for (std::size_t k = i + 1; k < n_; ++k) {
        for (std::size_t l = k; l < n_; ++l) q_[k][l] -= q_[k][i] * q_[i][l];
      }
    }
    radius_ = static_cast<long double>(max_norm) + 0.5L;
  }

  struct Prefix {
    std::vector<std::int64_t> top;  // x_{n-1}, x_{n-2}, ... fixed
  };

  /// Counts by norm of vectors below a prefix; only the canonical sign is visited.
  std::map<std::int64_t, std::uint64_t> count(const Prefix& prefix) const {
    State s(n_);
    std::map<std::int64_t, std::uint64_t> out;
    long double rem = radius_;
    bool zero_above = true;
    std::size_t level = n_;
    for (const auto v : prefix.top) {
      --level;
      s.x[level] = v;
      const long double t = static_cast<long double>(v) - center(s, level);
      rem -= q_[level][level] * t * t;
      if (v != 0) zero_above = false;
    }
    if (rem < -kEps) return out;
    if (level == 0) {
      record(out, rem, zero_above);
      return out;
    }
    descend(s, level - 1, rem, zero_above, out);
    return out;
  }

  /// Feasible values of the top `depth` coordinates, with canonical sign.
  std::vector<Prefix> prefixes(std::size_t depth) const {
    std::vector<Prefix> out;
    State s(n_);
    collect(s, n_ - 1, radius_, true, depth, {}, out);
    return out;
  }

 private:
  static constexpr long double kEps = 1e-9L;

  struct State {
    explicit State(std::size_t n) : x(n, 0) {}
    std::vector<std::int64_t> x;
  };

  long double center(const State& s, std::size_t i) const {
    long double c = 0;
    for (std::size_t j = i + 1; j < n_; ++j) c -= q_[i][j] * static_cast<long double>(s.x[j]);
    return c;
  }

  std::pair<std::int64_t, std::int64_t> range(long double c, long double rem, std::size_t i, bool zero_above) const {
    const long double span = std::sqrt(std::max<long double>(rem, 0) / q_[i][i]);
    auto lo = static_cast<std::int64_t>(std::ceil(c - span - kEps));
    const auto hi = static_cast<std::int64_t>(std::floor(c + span + kEps));
    if (zero_above) lo = std::max<std::int64_t>(lo, 0);
    return {lo, hi};
  }

  void record(std::map<std::int64_t, std::uint64_t>& out, long double rem, bool zero) const {
    const long double norm = radius_ - rem;
    const long double rounded = std::round(norm);
    require(std::fabs(norm - rounded) < 1e-6L, ErrorCode::ConstructionFailure,
            "enumeration lost precision at norm " + std::to_string(static_cast<double>(norm)));
    const auto value = static_cast<std::int64_t>(rounded);
    if (value > max_norm_) return;
    out[value] += zero ? 1 : 2;
  }

  void descend(State& s, std::size_t i, long double rem, bool zero_above,
               std::map<std::int64_t, std::uint64_t>& out) const {
    const long double c = center(s, i);
    const auto [lo, hi] = range(c, rem, i, zero_above);
    for (std::int64_t v = lo; v <= hi; ++v) {
      const long double t = static_cast<long double>(v) - c;
      const long double next = rem - q_[i][i] * t * t;
      if (next < -kEps) continue;
      s.x[i] = v;
      const bool zero = zero_above && v == 0;
      if (i == 0) {
        record(out, next, zero);
      } else {
        descend(s, i - 1, next, zero, out);
      }
    }
    s.x[i] = 0;
  }

  void collect(State& s, std::size_t i, long double rem, bool zero_above, std::size_t depth,
               std::vector<std::int64_t> top, std::vector<Prefix>& out) const {
    const long double c = center(s, i);
    const auto [lo, hi] = range(c, rem, i, zero_above);
    for (std::int64_t v = lo; v <= hi; ++v) {
      const long double t = static_cast<long double>(v) - c;
      const long double next = rem - q_[i][i] * t * t;
      if (next < -kEps) continue;
      s.x[i] = v;
      auto extended = top;
      extended.push_back(v);
      if (extended.size() == depth || i == 0) {
        out.push_back({std::move(extended)});
      } else {
        collect(s, i - 1, next, zero_above && v == 0, depth, std::move(extended), out);
      }
    }
    s.x[i] = 0;
  }

  std::size_t n_;
  std::int64_t max_norm_;
  long double radius_ = 0;
  std::vector<std::vector<long double>> q_;
};

}  // namespace detail

/// Number of lattice vectors x with x^T G x = m for every even m <= max_norm
/// (x and -x counted separately, the zero vector once).
inline std::map<std::int64_t, std::uint64_t> short_vector_counts(const IntegralLattice& lattice,
                                                                 std::int64_t max_norm, unsigned jobs = 1) {
  require(max_norm >= 0 && max_norm % 2 == 0, ErrorCode::InvalidArgument, "max_norm must be even and nonnegative");
  const auto gram = lll_reduce_gram(integral_gram(lattice));
  const detail::ShortVectorEnumerator enumerator(gram, max_norm);
  const auto branches = enumerator.prefixes(std::min<std::size_t>(2, gram.size()));

  std::map<std::int64_t, std::uint64_t> total;
  for (std::int64_t m = 0; m <= max_norm; m += 2) total[m] = 0;
  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::map<std::int64_t, std::uint64_t> local;
    for (std::size_t i = next++; i < branches.size(); i = next++) {
      for (const auto& [norm, c] : enumerator.count(branches[i])) local[norm] += c;
    }
    std::lock_guard lock(mutex);
    for (const auto& [norm, c] : local) total[norm] += c;
  };
  jobs = std::max(1U, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return total;
}

/// theta_L^(1) with a(t) = #{x : x^T G x = 2t}.
inline FourierExpansion lattice_theta1(const IntegralLattice& lattice, std::int64_t t_max, unsigned jobs = 1) {
  require(t_max >= 0, ErrorCode::InvalidArgument, "t_max must be nonnegative");
  const auto counts = short_vector_counts(lattice, 2 * t_max, jobs);
  auto out = FourierExpansion::degree1(t_max, "theta_" + lattice.name);
  for (std::int64_t t = 0; t <= t_max; ++t) {
    const auto it = counts.find(2 * t);
    out.set(t, Rational(Integer(std::to_string(it == counts.end() ? 0 : it->second))));
  }
  return out;
}

inline IntegralLattice leech_lattice() {
  const auto code = golay_code();
  constexpr std::size_t n = 24;
  auto unit = [](std::size_t i, std::int64_t v) {
    std::vector<std::int64_t> x(n, 0);
    x[i] = v;
    return x;
  };
  std::vector<std::vector<std::int64_t>> gens;
  for (const auto row : code.generators) {
    std::vector<std::int64_t> x(n, 0);
    for (std::size_t i = 0; i < n; ++i) x[i] = (row >> i & 1U) ? 2 : 0;
    gens.push_back(x);
  }
  for (std::size_t i = 1; i < n; ++i) {
    auto x = unit(0, 4);
    x[i] = -4;
    gens.push_back(x);
  }
  std::vector<std::int64_t> odd(n, 1);
  odd[0] = -3;
  gens.push_back(odd);
  for (const auto& g : gens) {
    require(leech_member(code, g), ErrorCode::ConstructionFailure, "generator fails the membership predicate");
  }

  auto to_mpz = [](const std::vector<std::vector<std::int64_t>>& rows) {
    std::vector<std::vector<Integer>> out;
    for (const auto& r : rows) {
      std::vector<Integer> v;
      for (const auto x : r) v.emplace_back(static_cast<long>(x));
      out.push_back(std::move(v));
    }
    return out;
  };

  // det(basis)^2 = 8^24 det(Gram) = 8^24
  const Integer target = pow_integer(Integer(2), 36);
  auto hnf = hermite_normal_form(to_mpz(gens));
  if (hnf_determinant(hnf) != target) {
    // completion: add predicate vectors missing from the span until the index is right
    std::vector<std::vector<std::int64_t>> candidates{unit(0, 8)};
    auto pair = unit(0, 4);
    pair[1] = 4;
    candidates.push_back(pair);
    for (const auto word : code.codewords) {
      std::vector<std::int64_t> x(n, 0);
      for (std::size_t i = 0; i < n; ++i) x[i] = (word >> i & 1U) ? 2 : 0;
      candidates.push_back(x);
    }
    for (const auto& cand : candidates) {
      if (hnf_determinant(hnf) == target) break;
      if (!leech_member(code, cand) || hnf_contains(hnf, cand)) continue;
      gens.push_back(cand);
      hnf = hermite_normal_form(to_mpz(gens));
    }
  }
  require(hnf_determinant(hnf) == target, ErrorCode::ConstructionFailure,
          "Leech generators span a sublattice of index " + Integer(hnf_determinant(hnf) / target).get_str());

  IntegralLattice lattice;
  lattice.name = "leech";
  lattice.basis = hnf;
  lattice.scale = 8;
  lattice.gram = gram_of(hnf, 8);
  for (const auto& row : lattice.basis) {
    require(leech_member(code, row), ErrorCode::ConstructionFailure, "basis vector fails the membership predicate");
  }
  const auto g = integral_gram(lattice);
  for (std::size_t i = 0; i < n; ++i) {
    require(g[i][i] % 2 == 0, ErrorCode::ConstructionFailure, "Leech Gram matrix is not even");
  }
  require(determinant(lattice.gram) == 1, ErrorCode::ConstructionFailure, "Leech Gram determinant is not 1");
  const auto low = short_vector_counts(lattice, 2);
  require(low.at(2) == 0, ErrorCode::ConstructionFailure, "Leech lattice has roots");
  return lattice;
}

inline nlohmann::ordered_json to_json(const IntegralLattice& lattice) {
  nlohmann::ordered_json j;
  j["name"] = lattice.name;
  j["rank"] = lattice.rank();
  j["scale"] = lattice.scale;
  j["basis"] = lattice.basis;
  auto gram = nlohmann::ordered_json::array();
  for (const auto& row : lattice.gram) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& q : row) r.push_back(to_string(q));
    gram.push_back(r);
  }
  j["gram"] = gram;
  return j;
}

// ---------------------------------------------------------------------------
// Leech theta identity

/// E_12 - (65520/691) Delta, which equals theta_Leech^(1).
inline FourierExpansion leech_theta_identity(std::int64_t t_max) {
  const auto e12 = eis1(12, t_max);
  const auto delta = delta_expansion(std::max<std::int64_t>(t_max, 1));
  auto out = FourierExpansion::degree1(t_max, "E_12 - 65520/691 Delta");
  const Rational c = make_rational(65520, 691);
  for (std::int64_t t = 0; t <= t_max; ++t) out.set(t, e12.at(t) - (t == 0 ? Rational(0) : c * delta.at(t)));
  return out;
}

struct LeechIdentityResult {
  FourierExpansion enumerated;
  FourierExpansion identity;
  std::vector<Index> violations;
};

/// Compares enumeration with the identity for t <= enum_bound, then checks
/// a(t) == 0 mod 23 for t <= t_max with kronecker(-23, t) = -1.
inline LeechIdentityResult leech_theta_identity_check(std::int64_t t_max, std::int64_t enum_bound, unsigned jobs = 1) {
  require(t_max >= 1 && enum_bound >= 1, ErrorCode::InvalidArgument, "bounds must be positive");
  const auto lattice = leech_lattice();
  auto enumerated = lattice_theta1(lattice, enum_bound, jobs);
  auto identity = leech_theta_identity(std::max(t_max, enum_bound));
  for (std::int64_t t = 0; t <= enum_bound; ++t) {
    require(enumerated.at(t) == identity.at(t), ErrorCode::IdentityMismatch,
            "theta identity fails at t = " + std::to_string(t) + ": enumeration " + to_string(enumerated.at(t)) +
                ", identity " + to_string(identity.at(t)));
  }
  std::vector<Index> violations;
  for (std::int64_t t = 1; t <= t_max; ++t) {
    if (kronecker(-23, t) != -1) continue;
    if (residue_at(identity, t, 23) != 0) violations.emplace_back(t);
  }
  return {std::move(enumerated), std::move(identity), std::move(violations)};
}

// ---------------------------------------------------------------------------
// genus theta series of binary forms of discriminant -p

struct GenusBQF {
  std::int64_t prime = 0;
  FormClassList classes;
  std::vector<Rational> weights;  // 1 / aut_order

  Rational mass() const {
    Rational m(0);
    for (const auto& w : weights) m += w;
    return m;
  }
};

inline GenusBQF genus_bqf(std::int64_t p) {
  require_prime(p);
  require(mod_floor(p, 4) == 3, ErrorCode::InvalidArgument, "genus theta needs p == 3 mod 4");
  GenusBQF g;
  g.prime = p;
  g.classes = class_list(-p);
  for (const auto w : g.classes.aut_orders) g.weights.push_back(make_rational(1, w));
  return g;
}

namespace detail {

/// Vectors (x, y) with Q(x, y) <= bound, grouped by value.
inline std::vector<std::vector<std::array<std::int64_t, 2>>> representations(const BinaryHalfIntegral& q,
                                                                             std::int64_t bound) {
  std::vector<std::vector<std::array<std::int64_t, 2>>> out(static_cast<std::size_t>(bound + 1));
  const std::int64_t disc = -q.discriminant();
  // 4a Q = (2a x + b y)^2 + |D| y^2
  const std::int64_t ymax = isqrt(4 * q.a * bound / disc) + 1;
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    const std::int64_t rest = 4 * q.a * bound - disc * y * y;
    if (rest < 0) continue;
    const std::int64_t s = isqrt(rest) + 1;
    for (std::int64_t x = floor_div(-s - q.b * y, 2 * q.a); x <= ceil_div(s - q.b * y, 2 * q.a); ++x) {
      const std::int64_t v = q.value(x, y);
      if (v <= bound) out[static_cast<std::size_t>(v)].push_back({x, y});
    }
  }
  return out;
}

}  // namespace detail

/// Degree-1 genus theta: mass-weighted average of r_Q(t) over classes.
inline FourierExpansion genus_theta1(std::int64_t p, std::int64_t t_max) {
  const auto genus = genus_bqf(p);
  auto out = FourierExpansion::degree1(t_max, "genus_theta_" + std::to_string(p));
  std::vector<Rational> acc(static_cast<std::size_t>(t_max + 1), Rational(0));
  for (std::size_t j = 0; j < genus.classes.class_number(); ++j) {
    const auto reps = detail::representations(genus.classes.classes[j], t_max);
    for (std::int64_t t = 0; t <= t_max; ++t) {
      acc[static_cast<std::size_t>(t)] +=
          genus.weights[j] * Rational(static_cast<long>(reps[static_cast<std::size_t>(t)].size()));
    }
  }
  const Rational mass = genus.mass();
  for (std::int64_t t = 0; t <= t_max; ++t) out.set(t, acc[static_cast<std::size_t>(t)] / mass);
  return out;
}

/// Degree-2 genus theta over a class-keyed truncation: a(T) averages the number
/// of pairs (v1, v2) with Q(v1) = a, Q(v2) = c, B(v1, v2) = b.
inline FourierExpansion genus_theta2(std::int64_t p, Truncation truncation) {
  const auto genus = genus_bqf(p);
  auto out = FourierExpansion::degree2(truncation, FourierExpansion::Storage::Classes,
                                       "genus_theta2_" + std::to_string(p));
  const auto keys = out.region_keys();
  std::int64_t max_diag = 0;
  for (const auto& k : keys) max_diag = std::max({max_diag, k.a, k.c});
  std::map<BinaryHalfIntegral, Rational> acc;
  for (std::size_t j = 0; j < genus.classes.class_number(); ++j) {
    const auto& q = genus.classes.classes[j];
    const auto reps = detail::representations(q, max_diag);
    auto bilinear = [&](const std::array<std::int64_t, 2>& u, const std::array<std::int64_t, 2>& v) {
      return 2 * q.a * u[0] * v[0] + q.b * (u[0] * v[1] + u[1] * v[0]) + 2 * q.c * u[1] * v[1];
    };
    for (const auto& key : keys) {
      std::int64_t count = 0;
      for (const auto& u : reps[static_cast<std::size_t>(key.a)]) {
        for (const auto& v : reps[static_cast<std::size_t>(key.c)]) {
          if (bilinear(u, v) == key.b) ++count;
        }
      }
      acc[key] += genus.weights[j] * Rational(static_cast<long>(count));
    }
  }
  const Rational mass = genus.mass();
  for (const auto& key : keys) out.set(key, acc[key] / mass);
  return out;
}

inline FourierExpansion genus_theta(std::int64_t p, int degree, std::int64_t bound) {
  require(degree == 1 || degree == 2, ErrorCode::InvalidArgument, "genus theta degree must be 1 or 2");
  if (degree == 1) return genus_theta1(p, bound);
  return genus_theta2(p, Truncation::by_trace(bound));
}

}  // namespace siegelcong
