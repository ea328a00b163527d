#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "siegelcong/quadforms.hpp"
#include "siegelcong/rational.hpp"

namespace siegelcong {

// ---------------------------------------------------------------------------
// indices and truncation

/// t for degree 1, (a,b,c) for degree 2.
using Index = std::variant<std::int64_t, BinaryHalfIntegral>;

inline std::string index_to_string(const Index& index) {
  if (const auto* t = std::get_if<std::int64_t>(&index)) return std::to_string(*t);
  return std::get<BinaryHalfIntegral>(index).to_string();
}

/// Degree-2 truncation. Trace regions are closed under index addition; det2
/// regions are what the theorem sweeps iterate over.
enum class Region { Trace, Det2 };

inline std::string region_name(Region r) { return r == Region::Trace ? "trace" : "det2"; }

struct Truncation {
  Region region = Region::Trace;
  std::int64_t bound = 0;

  static Truncation by_trace(std::int64_t bound) { return {Region::Trace, bound}; }
  static Truncation by_det2(std::int64_t bound) { return {Region::Det2, bound}; }

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

class FourierExpansion {
 public:
  /// Full stores every psd index of a trace region; Classes stores one value
  /// per GL_2(Z)-class (keyed by gl2_canonical) and reduces on lookup.
  enum class Storage { Full, Classes };

  static FourierExpansion degree1(std::int64_t t_max, std::string label = {}) {
    require(t_max >= 0, ErrorCode::InvalidArgument, "degree-1 bound must be nonnegative");
    FourierExpansion f;
    f.degree_ = 1;
    f.truncation_ = Truncation::by_trace(t_max);
    f.label_ = std::move(label);
    f.deg1_.assign(static_cast<std::size_t>(t_max + 1), Rational(0));
    return f;
  }

  static FourierExpansion degree2(Truncation truncation, Storage storage, std::string label = {}) {
    require(truncation.bound >= 0, ErrorCode::InvalidArgument, "degree-2 bound must be nonnegative");
    require(!(storage == Storage::Full && truncation.region == Region::Det2), ErrorCode::InvalidArgument,
            "full storage is only defined for trace regions");
    FourierExpansion f;
    f.degree_ = 2;
    f.truncation_ = truncation;
    f.storage_ = storage;
    f.label_ = std::move(label);
    for (const auto& key : f.region_keys()) f.deg2_.emplace(key, Rational(0));
    return f;
  }

  int degree() const { return degree_; }
  std::int64_t bound() const { return truncation_.bound; }
  const Truncation& truncation() const { return truncation_; }
  Storage storage() const { return storage_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool contains(std::int64_t t) const { return degree_ == 1 && t >= 0 && t <= bound(); }

  bool contains(const BinaryHalfIntegral& t) const {
    if (degree_ != 2 || !t.is_positive_semidefinite()) return false;
    return deg2_.count(storage_key(t)) > 0;
  }

  bool contains(const Index& index) const {
    return std::visit([this](const auto& i) { return contains(i); }, index);
  }

  const Rational& at(std::int64_t t) const {
    require(contains(t), ErrorCode::OutOfRegion, "index " + std::to_string(t) + " outside expansion");
    return deg1_[static_cast<std::size_t>(t)];
  }

  const Rational& at(const BinaryHalfIntegral& t) const {
    require(degree_ == 2 && t.is_positive_semidefinite(), ErrorCode::OutOfRegion,
            "index (" + t.to_string() + ") is not a psd degree-2 index");
    const auto it = deg2_.find(storage_key(t));
    require(it != deg2_.end(), ErrorCode::OutOfRegion, "index (" + t.to_string() + ") outside expansion");
    return it->second;
  }

  const Rational& at(const Index& index) const {
    return std::visit([this](const auto& i) -> const Rational& { return at(i); }, index);
  }

  void set(std::int64_t t, Rational value) {
    require(contains(t), ErrorCode::OutOfRegion, "index " + std::to_string(t) + " outside expansion");
    deg1_[static_cast<std::size_t>(t)] = std::move(value);
  }

  void set(const BinaryHalfIntegral& t, Rational value) {
    require(contains(t), ErrorCode::OutOfRegion, "index (" + t.to_string() + ") outside expansion");
    deg2_[storage_key(t)] = std::move(value);
  }

  void set(const Index& index, Rational value) {
    std::visit([&](const auto& i) { set(i, std::move(value)); }, index);
  }

  /// Stored indices in deterministic order (t ascending, or (a,b,c) lexicographic).
  std::vector<Index> indices() const {
    std::vector<Index> out;
    if (degree_ == 1) {
      for (std::int64_t t = 0; t <= bound(); ++t) out.emplace_back(t);
    } else {
      out.reserve(deg2_.size());
      for (const auto& [key, value] : deg2_) out.emplace_back(key);
    }
    return out;
  }

  const std::vector<Rational>& degree1_coefficients() const { return deg1_; }
  const std::map<BinaryHalfIntegral, Rational>& degree2_coefficients() const { return deg2_; }

  /// Storage keys a fresh expansion with this layout would hold.
  std::vector<BinaryHalfIntegral> region_keys() const {
    std::vector<BinaryHalfIntegral> keys;
    if (storage_ == Storage::Full) return enumerate_psd(bound());
    keys.push_back({0, 0, 0});
    for (std::int64_t t = 1; t <= bound(); ++t) keys.push_back({t, 0, 0});
    if (truncation_.region == Region::Det2) {
      for (const auto& f : enumerate_pos_def_reduced(bound())) keys.push_back(f);
    } else {
      for (std::int64_t a = 1; 2 * a <= bound(); ++a) {
        for (std::int64_t b = 0; b <= a; ++b) {
          for (std::int64_t c = a; a + c <= bound(); ++c) {
            if (4 * a * c - b * b > 0) keys.push_back({a, b, c});
          }
        }
      }
    }
    return keys;
  }

  friend bool operator==(const FourierExpansion& l, const FourierExpansion& r) {
    return l.degree_ == r.degree_ && l.truncation_ == r.truncation_ && l.storage_ == r.storage_ &&
           l.label_ == r.label_ && l.deg1_ == r.deg1_ && l.deg2_ == r.deg2_;
  }

 private:
  FourierExpansion() = default;

  BinaryHalfIntegral storage_key(const BinaryHalfIntegral& t) const {
    return storage_ == Storage::Classes ? gl2_canonical(t) : t;
  }

  int degree_ = 1;
  Truncation truncation_{};
  Storage storage_ = Storage::Full;
  std::string label_;
  std::vector<Rational> deg1_;
  std::map<BinaryHalfIntegral, Rational> deg2_;
};

// ---------------------------------------------------------------------------
// operators

/// Theta operator: a(F,T) -> a(F,T) det(T); det(T) = det2/4 at degree 2.
inline FourierExpansion theta_op(const FourierExpansion& f) {
  FourierExpansion out = f;
  out.set_label("Theta(" + f.label() + ")");
  if (f.degree() == 1) {
    for (std::int64_t t = 0; t <= f.bound(); ++t) out.set(t, f.at(t) * Rational(static_cast<long>(t)));
  } else {
    for (const auto& [key, value] : f.degree2_coefficients()) out.set(key, value * key.det());
  }
  return out;
}

/// Siegel Phi: a(Phi F, t) = a(F, (t,0,0)).
inline FourierExpansion phi_op(const FourierExpansion& f) {
  require(f.degree() == 2, ErrorCode::InvalidArgument, "Phi operator needs a degree-2 expansion");
  auto out = FourierExpansion::degree1(f.bound(), "Phi(" + f.label() + ")");
  for (std::int64_t t = 0; t <= f.bound(); ++t) out.set(t, f.at(BinaryHalfIntegral{t, 0, 0}));
  return out;
}

inline FourierExpansion linear_combine(const std::vector<std::pair<Rational, const FourierExpansion*>>& terms,
                                       std::string label = "linear combination") {
  require(!terms.empty(), ErrorCode::InvalidArgument, "empty linear combination");
  const int degree = terms.front().second->degree();
  std::int64_t bound = terms.front().second->bound();
  bool all_classes = true;
  const Region region = terms.front().second->truncation().region;
  bool same_region = true;
  for (const auto& [coef, f] : terms) {
    require(f->degree() == degree, ErrorCode::MixedDegrees, "linear_combine over mixed degrees");
    bound = std::min(bound, f->bound());
    all_classes = all_classes && f->storage() == FourierExpansion::Storage::Classes;
    same_region = same_region && f->truncation().region == region;
  }
  if (degree == 1) {
    auto out = FourierExpansion::degree1(bound, std::move(label));
    for (std::int64_t t = 0; t <= bound; ++t) {
      Rational acc(0);
      for (const auto& [coef, f] : terms) acc += coef * f->at(t);
      out.set(t, acc);
    }
    return out;
  }
  require(same_region, ErrorCode::InvalidArgument, "linear_combine over different truncation regions");
  FourierExpansion::Storage storage = FourierExpansion::Storage::Classes;
  if (!all_classes) {
    require(region == Region::Trace, ErrorCode::InvalidArgument,
            "full storage combination needs trace regions");
    storage = FourierExpansion::Storage::Full;
  }
  auto out = FourierExpansion::degree2({region, bound}, storage, std::move(label));
  for (const auto& key : out.region_keys()) {
    Rational acc(0);
    for (const auto& [coef, f] : terms) acc += coef * f->at(key);
    out.set(key, acc);
  }
  return out;
}

inline FourierExpansion linear_combine(const std::vector<std::pair<Rational, FourierExpansion>>& terms,
                                       std::string label = "linear combination") {
  std::vector<std::pair<Rational, const FourierExpansion*>> refs;
  refs.reserve(terms.size());
  for (const auto& [coef, f] : terms) refs.emplace_back(coef, &f);
  return linear_combine(refs, std::move(label));
}

/// Cauchy product over psd index sums; degree 2 needs trace regions.
inline FourierExpansion multiply(const FourierExpansion& f, const FourierExpansion& g) {
  require(f.degree() == g.degree(), ErrorCode::MixedDegrees, "multiply over mixed degrees");
  const std::int64_t bound = std::min(f.bound(), g.bound());
  const std::string label = "(" + f.label() + ")*(" + g.label() + ")";
  if (f.degree() == 1) {
    auto out = FourierExpansion::degree1(bound, label);
    for (std::int64_t n = 0; n <= bound; ++n) {
      Rational acc(0);
      for (std::int64_t i = 0; i <= n; ++i) {
        const auto& x = f.at(i);
        if (x == 0) continue;
        acc += x * g.at(n - i);
      }
      out.set(n, acc);
    }
    return out;
  }
  require(f.truncation().region == Region::Trace && g.truncation().region == Region::Trace,
          ErrorCode::InvalidArgument, "degree-2 multiplication needs trace-truncated inputs");
  const auto psd = enumerate_psd(bound);  // sorted by trace
  std::vector<const Rational*> fv, gv;
  fv.reserve(psd.size());
  gv.reserve(psd.size());
  for (const auto& t : psd) {
    fv.push_back(&f.at(t));
    gv.push_back(&g.at(t));
  }
  std::map<BinaryHalfIntegral, Rational> acc;
  for (std::size_t i = 0; i < psd.size(); ++i) {
    if (*fv[i] == 0) continue;
    const auto room = bound - psd[i].trace();
    for (std::size_t j = 0; j < psd.size() && psd[j].trace() <= room; ++j) {
      if (*gv[j] == 0) continue;
      acc[psd[i] + psd[j]] += *fv[i] * *gv[j];
    }
  }
  auto out = FourierExpansion::degree2(Truncation::by_trace(bound), FourierExpansion::Storage::Full, label);
  for (auto& [key, value] : acc) out.set(key, std::move(value));
  return out;
}

// ---------------------------------------------------------------------------
// mod p

using ResidueTable = std::vector<std::pair<Index, std::int64_t>>;

inline std::int64_t residue_at(const FourierExpansion& f, const Index& index, std::int64_t p) {
  try {
    return residue_mod_p(f.at(index), p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DenominatorDivisible) throw;
    throw Error(ErrorCode::DenominatorDivisible,
                "coefficient of '" + f.label() + "' at " + index_to_string(index) + " is not " +
                    std::to_string(p) + "-integral");
  }
}

inline ResidueTable reduce_mod_p(const FourierExpansion& f, std::int64_t p) {
  require_prime(p);
  ResidueTable out;
  for (const auto& index : f.indices()) out.emplace_back(index, residue_at(f, index, p));
  return out;
}

using IndexFilter = std::function<bool(const Index&)>;

/// Indices of F (that G also covers) passing the filter where F and G differ mod p.
/// Only filtered indices are reduced.
inline std::vector<Index> congruence_violations(const FourierExpansion& f, const FourierExpansion& g,
                                                std::int64_t p, const IndexFilter& filter = {}) {
  require_prime(p);
  require(f.degree() == g.degree(), ErrorCode::MixedDegrees, "congruence over mixed degrees");
  std::vector<Index> out;
  for (const auto& index : f.indices()) {
    if (!g.contains(index)) continue;
    if (filter && !filter(index)) continue;
    if (residue_at(f, index, p) != residue_at(g, index, p)) out.push_back(index);
  }
  return out;
}

enum class KernelMode { ThetaKernel, Singular };

inline std::int64_t index_det2(const Index& index) {
  if (const auto* t = std::get_if<std::int64_t>(&index)) return *t;
  return std::get<BinaryHalfIntegral>(index).det2();
}

inline bool index_positive(const Index& index) {
  if (const auto* t = std::get_if<std::int64_t>(&index)) return *t > 0;
  return std::get<BinaryHalfIntegral>(index).is_positive_definite();
}

/// ThetaKernel: positive T with det T != 0 mod p and a(F,T) != 0 mod p.
/// For odd p, det T = det2/4 is nonzero mod p iff det2 is. Singular: positive
/// T with a(F,T) != 0 mod p.
inline std::vector<Index> kernel_report(const FourierExpansion& f, std::int64_t p, KernelMode mode) {
  require_prime(p);
  std::vector<Index> out;
  for (const auto& index : f.indices()) {
    if (!index_positive(index)) continue;
    if (mode == KernelMode::ThetaKernel) {
      if (p == 2) {
        if (residue_mod_p(make_rational(index_det2(index), f.degree() == 2 ? 4 : 1), p) == 0) continue;
      } else if (mod_floor(index_det2(index), p) == 0) {
        continue;
      }
    }
    if (residue_at(f, index, p) != 0) out.push_back(index);
  }
  return out;
}

// ---------------------------------------------------------------------------
// serialization

inline nlohmann::ordered_json to_json(const FourierExpansion& f) {
  nlohmann::ordered_json j;
  j["degree"] = f.degree();
  j["bound"] = f.bound();
  j["label"] = f.label();
  if (f.degree() == 2) {
    j["region"] = region_name(f.truncation().region);
    j["storage"] = f.storage() == FourierExpansion::Storage::Full ? "full" : "classes";
  }
  auto& coeffs = j["coefficients"] = nlohmann::ordered_json::object();
  for (const auto& index : f.indices()) coeffs[index_to_string(index)] = to_string(f.at(index));
  return j;
}

inline Index parse_index(const std::string& text, int degree) {
  try {
    if (degree == 1) {
      std::size_t used = 0;
      const auto t = std::stoll(text, &used);
      require(used == text.size(), ErrorCode::InvalidArgument, "trailing characters");
      return Index{static_cast<std::int64_t>(t)};
    }
    const auto c1 = text.find(',');
    const auto c2 = text.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    require(c1 != std::string::npos && c2 != std::string::npos, ErrorCode::InvalidArgument, "need a,b,c");
    return Index{BinaryHalfIntegral{std::stoll(text.substr(0, c1)), std::stoll(text.substr(c1 + 1, c2 - c1 - 1)),
                                    std::stoll(text.substr(c2 + 1))}};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "malformed index '" + text + "'");
  }
}

template <typename Json>
FourierExpansion expansion_from_json(const Json& j) {
  try {
    const int degree = j.at("degree").template get<int>();
    const auto bound = j.at("bound").template get<std::int64_t>();
    const auto label = j.at("label").template get<std::string>();
    require(degree == 1 || degree == 2, ErrorCode::InvalidArgument, "degree must be 1 or 2");
    FourierExpansion f = FourierExpansion::degree1(0);
    if (degree == 1) {
      f = FourierExpansion::degree1(bound, label);
    } else {
      const auto region = j.at("region").template get<std::string>();
      const auto storage = j.at("storage").template get<std::string>();
      require(region == "trace" || region == "det2", ErrorCode::InvalidArgument, "unknown region " + region);
      require(storage == "full" || storage == "classes", ErrorCode::InvalidArgument, "unknown storage " + storage);
      f = FourierExpansion::degree2({region == "trace" ? Region::Trace : Region::Det2, bound},
                                    storage == "full" ? FourierExpansion::Storage::Full
                                                      : FourierExpansion::Storage::Classes,
                                    label);
    }
    for (const auto& [key, value] : j.at("coefficients").items()) {
      const Index index = parse_index(key, degree);
      if (degree == 2 && f.storage() == FourierExpansion::Storage::Classes) {
        const auto& t = std::get<BinaryHalfIntegral>(index);
        require(t.is_positive_semidefinite() && gl2_canonical(t) == t, ErrorCode::InvalidArgument,
                "class-keyed expansion has non-canonical key " + key);
      }
      f.set(index, parse_rational(value.template get<std::string>()));
    }
    require(j.at("coefficients").size() == f.indices().size(), ErrorCode::InvalidArgument,
            "expansion JSON does not cover its truncation region");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed expansion JSON: ") + e.what());
  }
}

inline std::string serialize(const FourierExpansion& f) { return to_json(f).dump(); }

inline FourierExpansion deserialize(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed expansion JSON: ") + e.what());
  }
  return expansion_from_json(j);
}

}  // namespace siegelcong
