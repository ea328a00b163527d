#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "siegelcong/characters.hpp"
#include "siegelcong/rational.hpp"

namespace siegelcong {

/// T = [[a, b/2], [b/2, c]] in Lambda_2; equally the binary form a x^2 + b xy + c y^2.
struct BinaryHalfIntegral {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t det2() const { return 4 * a * c - b * b; }  // det(2T)
  Rational det() const { return make_rational(det2(), 4); }
  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  std::int64_t trace() const { return a + c; }
  std::int64_t content() const { return gcd64(gcd64(a, b), c); }
  bool is_zero() const { return a == 0 && b == 0 && c == 0; }
  bool is_positive_definite() const { return a > 0 && det2() > 0; }
  bool is_positive_semidefinite() const { return a >= 0 && c >= 0 && det2() >= 0; }

  std::int64_t value(std::int64_t x, std::int64_t y) const { return a * x * x + b * x * y + c * y * y; }

  std::string to_string() const {
    return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
  }

  friend BinaryHalfIntegral operator+(const BinaryHalfIntegral& l, const BinaryHalfIntegral& r) {
    return {l.a + r.a, l.b + r.b, l.c + r.c};
  }
  friend auto operator<=>(const BinaryHalfIntegral&, const BinaryHalfIntegral&) = default;
};

/// SL_2(Z)-reduction of a positive definite form: -a < b <= a <= c, b >= 0 if a == c.
inline BinaryHalfIntegral gauss_reduce(BinaryHalfIntegral f) {
  require(f.a > 0 && f.discriminant() < 0, ErrorCode::InvalidArgument,
          "gauss_reduce needs a positive definite form, got (" + f.to_string() + ")");
  for (;;) {
    if (f.b > f.a || f.b <= -f.a) {
      // x -> x - k y brings b into (-a, a].
      const std::int64_t k = ceil_div(f.b - f.a, 2 * f.a);
      f = {f.a, f.b - 2 * f.a * k, f.a * k * k - f.b * k + f.c};
    }
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

/// Representative of the GL_2(Z)-class of a positive semidefinite T.
///
/// Rank 2: the reduced form with b >= 0. Rank 1: T = g (alpha x + beta y)^2,
/// equivalent to (g, 0, 0) with g the content. Zero maps to itself.
inline BinaryHalfIntegral gl2_canonical(const BinaryHalfIntegral& t) {
  require(t.is_positive_semidefinite(), ErrorCode::InvalidArgument,
          "(" + t.to_string() + ") is not positive semidefinite");
  if (t.is_zero()) return t;
  if (t.det2() == 0) return {t.content(), 0, 0};
  auto r = gauss_reduce(t);
  r.b = r.b < 0 ? -r.b : r.b;
  return r;
}

inline bool is_reduced(const BinaryHalfIntegral& f) {
  return f.a > 0 && -f.a < f.b && f.b <= f.a && f.a <= f.c && !(f.a == f.c && f.b < 0);
}

/// Proper automorphism order of a reduced positive definite form.
inline int automorphism_order(const BinaryHalfIntegral& reduced) {
  if (reduced.a == reduced.b && reduced.b == reduced.c) return 6;
  if (reduced.b == 0 && reduced.a == reduced.c) return 4;
  return 2;
}

struct FormClassList {
  std::int64_t discriminant = 0;
  std::vector<BinaryHalfIntegral> classes;  // reduced forms, SL_2 classes
  std::vector<int> aut_orders;

  std::size_t class_number() const { return classes.size(); }
};

enum class FormSelection { Primitive, All };

/// Reduced forms of discriminant D < 0 by scanning a <= sqrt(|D|/3).
inline FormClassList class_list(std::int64_t D, FormSelection selection = FormSelection::Primitive) {
  require(D < 0 && (mod_floor(D, 4) == 0 || mod_floor(D, 4) == 1), ErrorCode::InvalidArgument,
          "invalid negative discriminant " + std::to_string(D));
  FormClassList out;
  out.discriminant = D;
  for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      BinaryHalfIntegral f{a, b, c};
      if (!is_reduced(f)) continue;
      if (selection == FormSelection::Primitive && f.content() != 1) continue;
      out.classes.push_back(f);
      out.aut_orders.push_back(automorphism_order(f));
    }
  }
  return out;
}

inline QuadCharacter chi_of_matrix(const BinaryHalfIntegral& t) {
  require(t.is_positive_definite(), ErrorCode::InvalidArgument,
          "chi_T needs positive definite T, got (" + t.to_string() + ")");
  return quad_char(-t.det2());
}

/// All psd (a,b,c) with a + c <= trace_bound, ordered by (trace, a, b).
inline std::vector<BinaryHalfIntegral> enumerate_psd(std::int64_t trace_bound) {
  require(trace_bound >= 0, ErrorCode::InvalidArgument, "trace bound must be nonnegative");
  std::vector<BinaryHalfIntegral> out;
  for (std::int64_t tr = 0; tr <= trace_bound; ++tr) {
    for (std::int64_t a = 0; a <= tr; ++a) {
      const std::int64_t c = tr - a;
      const std::int64_t bmax = isqrt(4 * a * c);
      for (std::int64_t b = -bmax; b <= bmax; ++b) out.push_back({a, b, c});
    }
  }
  return out;
}

/// One reduced representative (b >= 0) per GL_2(Z)-class with 0 < det2 <= bound,
/// ordered by (det2, a, b, c).
inline std::vector<BinaryHalfIntegral> enumerate_pos_def_reduced(std::int64_t det2_bound) {
  std::vector<BinaryHalfIntegral> out;
  for (std::int64_t a = 1; 3 * a * a <= det2_bound; ++a) {
    for (std::int64_t b = 0; b <= a; ++b) {
      // 4ac - b^2 <= bound  <=>  c <= (bound + b^2) / 4a
      const std::int64_t cmax = floor_div(det2_bound + b * b, 4 * a);
      for (std::int64_t c = a; c <= cmax; ++c) {
        BinaryHalfIntegral f{a, b, c};
        if (f.det2() <= 0) continue;
        out.push_back(f);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const BinaryHalfIntegral& l, const BinaryHalfIntegral& r) {
    const auto dl = l.det2(), dr = r.det2();
    if (dl != dr) return dl < dr;
    return l < r;
  });
  return out;
}

}  // namespace siegelcong
