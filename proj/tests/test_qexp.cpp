#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "siegelcong/eisenstein.hpp"
#include "siegelcong/qexp.hpp"

using namespace siegelcong;

namespace {

using Form = BinaryHalfIntegral;

FourierExpansion random_full(std::int64_t bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> u(-20, 20);
  auto f = FourierExpansion::degree2(Truncation::by_trace(bound), FourierExpansion::Storage::Full, "random");
  for (const auto& t : f.region_keys()) f.set(t, make_rational(u(rng), 1 + std::abs(u(rng))));
  return f;
}

FourierExpansion constant_one(int degree, std::int64_t bound) {
  if (degree == 1) {
    auto f = FourierExpansion::degree1(bound, "1");
    f.set(0, Rational(1));
    return f;
  }
  auto f = FourierExpansion::degree2(Truncation::by_trace(bound), FourierExpansion::Storage::Classes, "1");
  f.set(Form{0, 0, 0}, Rational(1));
  return f;
}

}  // namespace

TEST(Theta, Examples) {
  const auto e4 = eis2(4, 4);
  const auto t = theta_op(e4);
  EXPECT_EQ(t.at(Form{1, 0, 0}), 0);
  EXPECT_EQ(t.at(Form{1, 1, 1}), 10080);
  const auto e6 = eis2(6, 6);
  for (const auto& [index, r] : reduce_mod_p(theta_op(e6), 11)) EXPECT_EQ(r, 0) << index_to_string(index);
  const auto e1 = theta_op(eis1(4, 5));
  EXPECT_EQ(e1.at(3), Rational(3) * eis1(4, 5).at(3));
}

TEST(Theta, VanishesOnSingularIndices) {
  const auto t = theta_op(eis2(8, 6));
  for (const auto& index : t.indices()) {
    if (index_det2(index) == 0) EXPECT_EQ(t.at(index), 0);
  }
}

TEST(Phi, Examples) {
  const auto one = phi_op(constant_one(2, 5));
  EXPECT_EQ(one.bound(), 5);
  EXPECT_EQ(one.at(0), 1);
  for (std::int64_t t = 1; t <= 5; ++t) EXPECT_EQ(one.at(t), 0);
  const auto phi4 = phi_op(eis2(4, 10));
  const auto e4 = eis1(4, 10);
  for (std::int64_t t = 0; t <= 10; ++t) EXPECT_EQ(phi4.at(t), e4.at(t));
  EXPECT_EQ(phi_op(eis2(12, 3)).at(1), make_rational(65520, 691));
  EXPECT_THROW(phi_op(eis1(4, 3)), Error);
}

TEST(LinearCombine, Examples) {
  const auto e4 = eis1(4, 20), e6 = eis1(6, 30);
  const auto f = linear_combine({{Rational(1), e4}, {Rational(0), e6}});
  for (std::int64_t t = 0; t <= 20; ++t) EXPECT_EQ(f.at(t), e4.at(t));
  EXPECT_EQ(f.bound(), 20);
  // (E4^3 - E6^2) / 1728
  const auto e4c = multiply(multiply(e4, e4), e4);
  const auto e6s = multiply(eis1(6, 20), eis1(6, 20));
  const auto d = linear_combine({{make_rational(1, 1728), e4c}, {make_rational(-1, 1728), e6s}});
  EXPECT_EQ(d.at(1), 1);
  EXPECT_EQ(d.at(2), -24);
  const auto leech = linear_combine({{Rational(1), eis1(12, 3)}, {make_rational(-65520, 691), delta_expansion(3)}});
  EXPECT_EQ(leech.at(2), 196560);
  EXPECT_THROW(linear_combine({{Rational(1), e4}, {Rational(1), eis2(4, 2)}}), Error);
}

TEST(OperatorsCommute, ThetaPhiWithLinearCombine) {
  const auto a = eis2(4, 6), b = eis2(6, 6);
  const Rational x = make_rational(3, 7), y = make_rational(-2, 5);
  const auto lhs = theta_op(linear_combine({{x, a}, {y, b}}));
  const auto rhs = linear_combine({{x, theta_op(a)}, {y, theta_op(b)}});
  for (const auto& index : lhs.indices()) EXPECT_EQ(lhs.at(index), rhs.at(index));
  const auto plhs = phi_op(linear_combine({{x, a}, {y, b}}));
  const auto prhs = linear_combine({{x, phi_op(a)}, {y, phi_op(b)}});
  for (std::int64_t t = 0; t <= 6; ++t) EXPECT_EQ(plhs.at(t), prhs.at(t));
}

TEST(Multiply, IdentityCommutativeAssociative) {
  std::mt19937_64 rng(5);
  const auto f = random_full(4, rng), g = random_full(4, rng), h = random_full(4, rng);
  const auto one = constant_one(2, 4);
  const auto f1 = multiply(one, f);
  for (const auto& t : enumerate_psd(4)) EXPECT_EQ(f1.at(t), f.at(t));
  const auto fg = multiply(f, g), gf = multiply(g, f);
  for (const auto& t : enumerate_psd(4)) EXPECT_EQ(fg.at(t), gf.at(t));
  const auto l = multiply(multiply(f, g), h), r = multiply(f, multiply(g, h));
  for (const auto& t : enumerate_psd(4)) EXPECT_EQ(l.at(t), r.at(t));
}

TEST(Multiply, RingIdentities) {
  const auto p = multiply(eis2(4, 6), eis2(4, 6));
  const auto e8 = eis2(8, 6);
  for (const auto& t : enumerate_psd(6)) EXPECT_EQ(p.at(t), e8.at(t)) << t.to_string();
  const auto p1 = multiply(eis1(4, 50), eis1(4, 50));
  const auto e8_1 = eis1(8, 50);
  for (std::int64_t t = 0; t <= 50; ++t) EXPECT_EQ(p1.at(t), e8_1.at(t));
  EXPECT_THROW(multiply(eis1(4, 3), eis2(4, 3)), Error);
}

TEST(ReduceModP, Examples) {
  EXPECT_EQ(residue_at(eis1(12, 3), 1, 23), 16);
  EXPECT_EQ(residue_at(delta_expansion(3), 2, 691), residue_mod_p(Integer(2049), 691));
  auto f = FourierExpansion::degree1(3, "bad");
  f.set(2, make_rational(1, 23));
  try {
    reduce_mod_p(f, 23);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DenominatorDivisible);
    EXPECT_NE(std::string(e.what()).find("at 2"), std::string::npos);
  }
}

TEST(CongruenceViolations, Examples) {
  EXPECT_TRUE(congruence_violations(delta_expansion(100), g12_expansion(100), 691).empty());
  const auto e = eis2(4, 5);
  EXPECT_TRUE(congruence_violations(e, e, 7).empty());
  auto corrupted = eis2(6, 6);
  corrupted.set(Form{2, 1, 3}, corrupted.at(Form{2, 1, 3}) + 1);
  const auto v = congruence_violations(corrupted, eis2(6, 6), 11);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(index_to_string(v[0]), "2,1,3");
}

TEST(KernelReport, Examples) {
  EXPECT_TRUE(kernel_report(eis2(6, 8), 11, KernelMode::ThetaKernel).empty());
  const auto s = kernel_report(eis2(4, 4), 23, KernelMode::Singular);
  EXPECT_NE(std::find(s.begin(), s.end(), Index{Form{1, 1, 1}}), s.end());
  EXPECT_TRUE(kernel_report(FourierExpansion::degree1(5), 7, KernelMode::Singular).empty());
  // Theta kernel but not singular: det2 == 0 mod p indices are skipped
  const auto e = eis2(6, Truncation::by_det2(200));
  bool saw_skipped_nonzero = false;
  for (const auto& t : e.region_keys()) {
    if (t.is_positive_definite() && t.det2() % 11 == 0 && residue_at(e, t, 11) != 0) saw_skipped_nonzero = true;
  }
  EXPECT_TRUE(saw_skipped_nonzero);
  EXPECT_TRUE(kernel_report(e, 11, KernelMode::ThetaKernel).empty());
  EXPECT_FALSE(kernel_report(e, 11, KernelMode::Singular).empty());
}

TEST(Storage, ClassesAnswerArbitraryIndices) {
  const auto e = eis2(4, 8);
  EXPECT_EQ(e.at(Form{2, -1, 3}), e.at(Form{2, 1, 3}));
  EXPECT_EQ(e.at(Form{3, 1, 2}), e.at(Form{2, 1, 3}));
  EXPECT_EQ(e.at(Form{0, 0, 3}), e.at(Form{3, 0, 0}));
  EXPECT_THROW(e.at(Form{5, 0, 5}), Error);
  EXPECT_THROW(FourierExpansion::degree2(Truncation::by_det2(10), FourierExpansion::Storage::Full), Error);
}

TEST(Json, RoundTrip) {
  for (const auto& f : {eis1(12, 30), eis2(6, 5), eis2(8, Truncation::by_det2(60)),
                        multiply(eis2(4, 3), eis2(4, 3))}) {
    const auto text = serialize(f);
    const auto back = deserialize(text);
    EXPECT_EQ(back, f);
    EXPECT_EQ(serialize(back), text);
  }
  const auto j = to_json(eis1(12, 2));
  EXPECT_EQ(j["coefficients"]["1"], "65520/691");
  EXPECT_EQ(j["coefficients"]["0"], "1/1");
}

TEST(Json, Malformed) {
  EXPECT_THROW(deserialize("{"), Error);
  EXPECT_THROW(deserialize(R"({"degree":3,"bound":1,"label":"x","coefficients":{}})"), Error);
  EXPECT_THROW(deserialize(R"({"degree":1,"bound":1,"label":"x","coefficients":{"0":"1/1"}})"), Error);
  EXPECT_THROW(deserialize(R"({"degree":1,"bound":0,"label":"x","coefficients":{"0":"1/0"}})"), Error);
}
