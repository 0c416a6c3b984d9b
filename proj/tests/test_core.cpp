// Copyright 2026 The awarebid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "awarebid/distribution.hpp"
#include "awarebid/kernels.hpp"
#include "awarebid/piecewise_poly.hpp"
#include "awarebid/random_stream.hpp"
#include "awarebid/rational.hpp"
#include "awarebid/valuation_law.hpp"

namespace awarebid {
namespace {

Rational q(long p, unsigned long d = 1) { return make_rational(p, d); }

TEST(Rational, ParsesFractionsDecimalsAndExponents) {
  EXPECT_EQ(parse_rational("7/4"), q(7, 4));
  EXPECT_EQ(parse_rational("-6/4"), q(-3, 2));
  EXPECT_EQ(parse_rational("0.125"), q(1, 8));
  EXPECT_EQ(parse_rational("-2.5e-1"), q(-1, 4));
  EXPECT_EQ(parse_rational("3"), q(3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_EQ(to_string(q(505, 132)), "505/132");
  EXPECT_EQ(to_string(q(-4)), "-4");
  EXPECT_EQ(rational_from_double(0.1), q(1, 10));
}

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
TEST(Philox, KnownAnswers) {
  const auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(zero[0], 0x6627e8d5u);
  EXPECT_EQ(zero[1], 0xe169c58du);
  EXPECT_EQ(zero[2], 0xbc57ac4cu);
  EXPECT_EQ(zero[3], 0x9b00dbd8u);
  const auto ones = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(ones[0], 0x408f276du);
  EXPECT_EQ(ones[1], 0x41c83b0eu);
  EXPECT_EQ(ones[2], 0xa20bc7c6u);
  EXPECT_EQ(ones[3], 0x6d5451fdu);
}

TEST(RandomStream, PureFunctionOfKeyAndInOpenUnitInterval) {
  const RandomStream a(42, 7), b(42, 7), c(43, 7);
  EXPECT_EQ(a.uniform(1, 2), b.uniform(1, 2));
  EXPECT_NE(a.uniform(1, 2), c.uniform(1, 2));
  EXPECT_NE(a.uniform(1, 2), a.uniform(2, 1));
  double sum = 0;
  for (std::uint64_t d = 0; d < 20000; ++d) {
    const double u = RandomStream(5, d).uniform(0, 0);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 20000, 0.5, 0.01);
}

TEST(Distribution, FactoriesRejectDegenerateInput) {
  EXPECT_THROW(Distribution::uniform(1, 1), DistributionError);
  EXPECT_THROW(Distribution::normal(0, 0), DistributionError);
  EXPECT_THROW(Distribution::discrete({{0, q(1)}}), DistributionError);
  EXPECT_THROW(Distribution::discrete({{0, q(1, 2)}, {1, q(2, 5)}}), DistributionError);
  EXPECT_THROW(Distribution::discrete({{0, q(-1, 2)}, {1, q(3, 2)}}), DistributionError);
}

TEST(Distribution, MomentsAndQuantiles) {
  const auto u = Distribution::uniform(-6, 5);
  EXPECT_EQ(*exact_mean(u), q(-1, 2));
  EXPECT_DOUBLE_EQ(cdf(u, 0.0), 6.0 / 11.0);
  EXPECT_DOUBLE_EQ(quantile(u, 6.0 / 11.0), 0.0);
  const auto d = Distribution::discrete({{0, q(1, 4)}, {2, q(3, 4)}});
  EXPECT_EQ(*exact_mean(d), q(3, 2));
  EXPECT_EQ(quantile(d, 0.25), 0.0);
  EXPECT_EQ(quantile(d, 0.26), 2.0);
  const auto n = Distribution::normal(1, 2);
  EXPECT_FALSE(exact_mean(n).has_value());
  EXPECT_NEAR(cdf(n, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(quantile(n, cdf(n, 2.3)), 2.3, 1e-12);
}

TEST(InfoLevel, CanonicalFormsAndCells) {
  const auto d = Distribution::discrete({{-1, q(1, 4)}, {0, q(1, 4)}, {3, q(1, 2)}});
  EXPECT_EQ(canonicalize(d, InfoLevel::groups({4, 4, 4})), InfoLevel::none());
  EXPECT_EQ(canonicalize(d, InfoLevel::groups({2, 0, 1})), InfoLevel::full());
  EXPECT_EQ(canonicalize(d, InfoLevel::groups({5, 5, 1})), InfoLevel::groups({0, 0, 1}));
  const auto cells = exact_cells(d, InfoLevel::groups({0, 0, 1}));
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].prob, q(1, 2));
  EXPECT_EQ(cells[0].mean, q(-1, 2));
  EXPECT_EQ(cells[1].mean, q(3));
  EXPECT_THROW(validate(d, InfoLevel::groups({0, 1})), DistributionError);
  // Continuous partition: the conditional mean of a uniform cell is its midpoint.
  const auto u = Distribution::uniform(0, 4);
  const auto ucells = exact_cells(u, InfoLevel::cuts({q(1)}));
  ASSERT_EQ(ucells.size(), 2u);
  EXPECT_EQ(ucells[0].prob, q(1, 4));
  EXPECT_EQ(ucells[0].mean, q(1, 2));
  EXPECT_EQ(ucells[1].mean, q(5, 2));
}

TEST(PiecewisePoly, ArithmeticShiftAndIntegral) {
  const auto f = PiecewisePoly::uniform_cdf(0, 2);
  EXPECT_EQ(f(q(1)), q(1, 2));
  EXPECT_EQ(f(q(-1)), q(0));
  EXPECT_EQ(f(q(7)), q(1));
  EXPECT_EQ(f.integral(0, 2), q(1));
  const auto g = f.shifted(3);
  EXPECT_EQ(g(q(4)), q(1, 2));
  const auto h = (f * f).simplified();
  EXPECT_EQ(h(q(1)), q(1, 4));
  EXPECT_EQ((f + g)(q(4)), q(3, 2));
  EXPECT_EQ((f - f).simplified().breaks().size(), 0u);
  const auto s = PiecewisePoly::step_cdf({{q(0), q(1, 2)}, {q(2), q(1, 2)}});
  EXPECT_EQ(s.breaks().size(), 2u);
  EXPECT_EQ(s.pieces().size(), 3u);
  EXPECT_EQ(s(q(1)), q(1, 2));
  EXPECT_EQ(s.left_limit(q(2)), q(1, 2));
  EXPECT_EQ(s(q(2)), q(1));
}

TEST(PiecewisePoly, StepCdfMergesUnsortedDuplicates) {
  const auto s = PiecewisePoly::step_cdf({{q(2), q(1, 4)}, {q(0), q(1, 4)}, {q(2), q(1, 2)}});
  EXPECT_EQ(s.breaks().size(), 2u);
  EXPECT_EQ(s.pieces().size(), 3u);
  EXPECT_EQ(s(q(0)), q(1, 4));
  EXPECT_EQ(s(q(2)), q(1));
}

// Density of the sum of independent U[0,5] and U[-6,5], written out by hand.
double trapezoid_density(double y) {
  if (y < -6 || y > 10) return 0;
  if (y <= -1) return (6 + y) / 55;
  if (y <= 5) return 1.0 / 11;
  return (10 - y) / 55;
}

TEST(ValuationLaw, UniformSumMatchesTrapezoidDensity) {
  const ValuationLaw y = convolve(Distribution::uniform(0, 5), Distribution::uniform(-6, 5));
  ASSERT_TRUE(y.is_exact());
  double acc = 0;
  const int steps = 16000;
  const double h = 16.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const double a = -6 + k * h;
    acc += h / 6 * (trapezoid_density(a) + 4 * trapezoid_density(a + h / 2) + trapezoid_density(a + h));
    if (k % 1000 == 999) EXPECT_NEAR(y.cdf(a + h), acc, 1e-12) << "at " << a + h;
  }
  EXPECT_EQ(*y.exact_mean(), q(2));
}

TEST(ValuationLaw, InformationShapesTheLaw) {
  const auto d = Distribution::discrete({{0, q(1, 2)}, {2, q(1, 2)}});
  const auto none = ValuationLaw::of(d, InfoLevel::none());
  EXPECT_DOUBLE_EQ(none.cdf(0.99), 0.0);
  EXPECT_DOUBLE_EQ(none.cdf(1.0), 1.0);
  const auto full = ValuationLaw::of(d, InfoLevel::full());
  EXPECT_DOUBLE_EQ(full.cdf(0.0), 0.5);
  EXPECT_EQ(*full.exact_mean(), q(1));
  EXPECT_THROW(ValuationLaw::of(Distribution::normal(0, 1), InfoLevel::cuts({q(0)})), std::exception);
}

TEST(ValuationLaw, GridConvolutionOfNormalAndUniform) {
  // N(0,1) + U(0,1): compare the grid CDF with a direct quadrature of
  // P(N <= y - U) over U.
  const ValuationLaw s = convolve(Distribution::normal(0, 1), Distribution::uniform(0, 1));
  const auto n = Distribution::normal(0, 1);
  for (double y : {-1.5, 0.0, 0.5, 2.0}) {
    double acc = 0;
    const int k = 2000;
    for (int i = 0; i < k; ++i) acc += cdf(n, y - (i + 0.5) / k) / k;
    EXPECT_NEAR(s.cdf(y), acc, 2e-4) << y;
  }
  EXPECT_NEAR(s.mean(), 0.5, 1e-3);
}

class KernelEquivalence : public ::testing::TestWithParam<int> {};

TEST_P(KernelEquivalence, SettleBlockIsBitIdenticalAcrossIsas) {
  if (!isa_supported(Isa::kAvx2)) GTEST_SKIP() << "no AVX2 on this CPU";
  const int n = GetParam();
  std::mt19937_64 rng(static_cast<unsigned>(n));
  const std::size_t count = 1037;  // not a multiple of the vector width
  std::vector<std::vector<double>> bids(static_cast<std::size_t>(n), std::vector<double>(count));
  std::uniform_int_distribution<int> coarse(0, 3);
  std::normal_distribution<double> fine(0, 1);
  for (auto& row : bids) {
    for (std::size_t d = 0; d < count; ++d) row[d] = d % 3 == 0 ? coarse(rng) : fine(rng);  // many ties
  }
  auto run = [&](Isa isa) {
    std::vector<double> first(count), second(count);
    std::vector<std::vector<double>> share(static_cast<std::size_t>(n), std::vector<double>(count));
    auto surplus = share;
    std::vector<const double*> b;
    std::vector<double*> sh, su;
    for (int i = 0; i < n; ++i) {
      b.push_back(bids[static_cast<std::size_t>(i)].data());
      sh.push_back(share[static_cast<std::size_t>(i)].data());
      su.push_back(surplus[static_cast<std::size_t>(i)].data());
    }
    settle_block(isa, {n, count, b.data(), first.data(), second.data(), sh.data(), su.data()});
    return std::make_tuple(first, second, share, surplus);
  };
  const auto s = run(Isa::kScalar);
  const auto v = run(Isa::kAvx2);
  EXPECT_EQ(std::get<0>(s), std::get<0>(v));
  EXPECT_EQ(std::get<1>(s), std::get<1>(v));
  EXPECT_EQ(std::get<2>(s), std::get<2>(v));
  EXPECT_EQ(std::get<3>(s), std::get<3>(v));
  // Spot-check the scalar reference against a direct computation.
  for (std::size_t d = 0; d < count; ++d) {
    std::vector<double> col;
    for (int i = 0; i < n; ++i) col.push_back(bids[static_cast<std::size_t>(i)][d]);
    std::sort(col.rbegin(), col.rend());
    ASSERT_EQ(std::get<0>(s)[d], col[0]);
    ASSERT_EQ(std::get<1>(s)[d], col[1]);
  }
}

INSTANTIATE_TEST_SUITE_P(Bidders, KernelEquivalence, ::testing::Values(2, 3, 5, 8));

TEST(KernelEquivalence, ConvolveMassesIsBitIdenticalAcrossIsas) {
  if (!isa_supported(Isa::kAvx2)) GTEST_SKIP() << "no AVX2 on this CPU";
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t na : {1u, 3u, 17u, 64u}) {
    for (std::size_t nb : {1u, 5u, 33u}) {
      std::vector<double> a(na), b(nb);
      for (auto& x : a) x = u(rng);
      for (auto& x : b) x = u(rng);
      std::vector<double> o1(na + nb - 1, 0.0), o2 = o1, naive = o1;
      convolve_masses(Isa::kScalar, {a.data(), na, b.data(), nb, o1.data()});
      convolve_masses(Isa::kAvx2, {a.data(), na, b.data(), nb, o2.data()});
      EXPECT_EQ(o1, o2);
      for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) naive[i + j] += a[i] * b[j];
      }
      for (std::size_t k = 0; k < naive.size(); ++k) EXPECT_NEAR(o1[k], naive[k], 1e-14);
    }
  }
}

}  // namespace
}  // namespace awarebid
