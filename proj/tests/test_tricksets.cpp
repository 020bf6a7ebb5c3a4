// Copyright 2026 fakewidth authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "fakewidth/rng.hpp"
#include "fakewidth/tricksets.hpp"
#include "fakewidth/vec.hpp"

using namespace fakewidth;

namespace {

constexpr double kSqrt3Half = 0.86602540378443864676372317075294;

Vector random_vector(std::mt19937_64& eng, int n) {
  Vector x(static_cast<std::size_t>(n));
  fill_standard_normal(eng, x.data(), x.size());
  return x;
}

// All index subsets of {0..n-1} with the given size, in lexicographic order.
void for_each_subset(int n, int size, const std::function<void(const SupportSet&)>& fn) {
  SupportSet idx(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int k = size - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - size + k) --k;
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < size; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

// Reference evaluation of the sparse statistic: brute force over all
// supports of size exactly min(s, n), accumulating squares in ascending
// index order exactly like the production code.
double sparse_oracle(const Vector& x, int s, double min_norm) {
  const int n = static_cast<int>(x.size());
  const int size = std::min(s, n);
  double best = 0.0;
  for_each_subset(n, size, [&](const SupportSet& idx) {
    double sum = 0.0;
    for (int i : idx) sum += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    best = std::max(best, sum);
  });
  return std::sqrt(best) / min_norm;
}

// Reference argmax over supports of size <= s of the restricted norm:
// smallest maximizing support, lexicographically first among those.
SupportSet sparse_argmax_oracle(const Vector& x, int s) {
  const int n = static_cast<int>(x.size());
  double best = -1.0;
  SupportSet best_idx;
  for (int size = 1; size <= std::min(s, n); ++size) {
    for_each_subset(n, size, [&](const SupportSet& idx) {
      double sum = 0.0;
      for (int i : idx) sum += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      if (sum > best) {
        best = sum;
        best_idx = idx;
      }
    });
  }
  // Drop zero coordinates: they contribute nothing, and the canonical
  // maximizer is the smallest such support.
  SupportSet trimmed;
  for (int i : best_idx) {
    if (x[static_cast<std::size_t>(i)] != 0.0) trimmed.push_back(i);
  }
  return trimmed.empty() ? best_idx : trimmed;
}

}  // namespace

TEST_CASE("validation rejects malformed sets") {
  CHECK_THROWS_AS(validate(TrickSet(NormThreshold{0, 1.0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(TrickSet(NormThreshold{4, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(TrickSet(SparseNorm{4, 0, 1.0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(TrickSet(SparseNorm{4, 5, 1.0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(TrickSet(SupportFamily{3, {}})), std::invalid_argument);
  CHECK_THROWS_AS(validate(TrickSet(SupportFamily{3, {{{2, 1}, 1.0}}})), std::invalid_argument);
  CHECK_THROWS_AS(validate(TrickSet(SupportFamily{3, {{{0, 3}, 1.0}}})), std::invalid_argument);
  CHECK_THROWS_AS(validate(TrickSet(SupportFamily{3, {{{0}, 1.0}, {{0}, 2.0}}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(TrickSet(HalfCoordinate{1})), std::invalid_argument);
  CHECK_NOTHROW(validate(TrickSet(NormThreshold{10, 1.0})));
  CHECK_NOTHROW(validate(TrickSet(SupportFamily{3, {{{0}, 2.0}, {{1, 2}, 0.5}}})));
}

TEST_CASE("symmetry classification") {
  CHECK(is_highly_symmetric(TrickSet(NormThreshold{5, 1.0})));
  CHECK(is_highly_symmetric(TrickSet(SparseNorm{5, 2, 1.0})));
  CHECK(is_highly_symmetric(TrickSet(SupportFamily{3, {{{0}, 1.0}}})));
  CHECK_FALSE(is_highly_symmetric(TrickSet(HalfCoordinate{5})));
}

TEST_CASE("inradius closed forms") {
  CHECK(inradius(TrickSet(NormThreshold{10, 1.0})) == 1.0);
  CHECK(inradius(TrickSet(SupportFamily{3, {{{0}, 2.0}, {{1, 2}, 0.5}}})) == 0.5);
  CHECK(inradius(TrickSet(HalfCoordinate{5})) == 1.0);
  CHECK(inradius(TrickSet(SparseNorm{10, 3, 0.25})) == 0.25);
}

TEST_CASE("scaled support closed forms") {
  CHECK(scaled_support(TrickSet(NormThreshold{2, 1.0}), {3.0, 0.0}) == doctest::Approx(3.0));
  CHECK(scaled_support(TrickSet(SparseNorm{2, 1, 1.0}), {3.0, -4.0}) == doctest::Approx(4.0));
  CHECK(scaled_support(TrickSet(SupportFamily{3, {{{0}, 2.0}, {{1, 2}, 0.5}}}), {3.0, 4.0, 0.0}) ==
        doctest::Approx(8.0));
  CHECK(scaled_support(TrickSet(HalfCoordinate{3}), {6.0, 3.0, 4.0}) ==
        doctest::Approx(3.0 + kSqrt3Half * 5.0));
  SUBCASE("zero input gives zero for every variant") {
    const Vector zero3(3, 0.0);
    CHECK(scaled_support(TrickSet(NormThreshold{3, 1.0}), zero3) == 0.0);
    CHECK(scaled_support(TrickSet(SparseNorm{3, 2, 1.0}), zero3) == 0.0);
    CHECK(scaled_support(TrickSet(SupportFamily{3, {{{0, 1}, 1.0}}}), zero3) == 0.0);
    CHECK(scaled_support(TrickSet(HalfCoordinate{3}), zero3) == 0.0);
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(scaled_support(TrickSet(NormThreshold{3, 1.0}), {1.0, 2.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("membership") {
  CHECK(membership(TrickSet(NormThreshold{2, 1.0}), {0.6, 0.8}, 0.0));
  CHECK(membership(TrickSet(SparseNorm{3, 1, 1.0}), {0.0, 1.25, 0.0}, 0.0));
  CHECK(membership(TrickSet(HalfCoordinate{2}), {0.5, kSqrt3Half}, 1e-12));
  CHECK_FALSE(membership(TrickSet(SparseNorm{3, 1, 1.0}), {1.0, 1.0, 0.0}, 1e-9));
  CHECK_FALSE(membership(TrickSet(NormThreshold{2, 1.0}), {0.5, 0.5}, 1e-9));
  CHECK_FALSE(membership(TrickSet(SupportFamily{3, {{{0, 1}, 1.0}}}), {1.0, 0.0, 1.0}, 1e-9));
  CHECK(membership(TrickSet(SupportFamily{3, {{{0, 1}, 1.0}}}), {1.0, 1.0, 0.0}, 0.0));
  CHECK_FALSE(membership(TrickSet(HalfCoordinate{2}), {0.7, std::sqrt(1.0 - 0.49)}, 1e-9));
}

TEST_CASE("sign flip candidate on worked inputs") {
  SUBCASE("singleton sparse flip") {
    const auto out = sign_flip_candidate(TrickSet(SparseNorm{3, 1, 1.0}), {1.0, -5.0, 2.0}, 8.0);
    REQUIRE(out.has_value());
    CHECK(out->fake == Vector{1.0, 5.0, 2.0});
    CHECK(out->trick == Vector{0.0, 1.25, 0.0});
  }
  SUBCASE("norm threshold flips everything at the boundary radius") {
    const auto out = sign_flip_candidate(TrickSet(NormThreshold{2, 1.0}), {3.0, 4.0}, 10.0);
    REQUIRE(out.has_value());
    CHECK(out->fake == Vector{-3.0, -4.0});
    CHECK(out->trick == Vector{-0.6, -0.8});
  }
  SUBCASE("gives up when the flip is out of reach") {
    CHECK_FALSE(
        sign_flip_candidate(TrickSet(SparseNorm{3, 1, 1.0}), {1.0, -5.0, 2.0}, 11.0).has_value());
  }
  SUBCASE("zero input always gives up") {
    CHECK_FALSE(sign_flip_candidate(TrickSet(NormThreshold{3, 1.0}), Vector(3, 0.0), 0.5)
                    .has_value());
  }
  SUBCASE("rejects unusable inputs") {
    CHECK_THROWS_AS(sign_flip_candidate(TrickSet(HalfCoordinate{3}), {1.0, 2.0, 3.0}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(sign_flip_candidate(TrickSet(NormThreshold{2, 1.0}), {1.0, 2.0}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(sign_flip_candidate(TrickSet(NormThreshold{2, 1.0}), {1.0, 2.0}, -1.0),
                    std::invalid_argument);
  }
  SUBCASE("weighted support family picks the best ratio") {
    const TrickSet set{SupportFamily{3, {{{0}, 1.0}, {{1, 2}, 2.0}}}};
    const auto out = sign_flip_candidate(set, {3.0, 4.0, 0.0}, 2.0);
    REQUIRE(out.has_value());
    CHECK(out->fake == Vector{-3.0, 4.0, 0.0});
    CHECK(out->trick == Vector{-3.0, 0.0, 0.0});
  }
}

TEST_CASE("positive homogeneity of the statistic") {
  std::mt19937_64 eng(42);
  const std::vector<TrickSet> sets = {
      TrickSet(NormThreshold{6, 0.7}),
      TrickSet(SparseNorm{6, 2, 1.3}),
      TrickSet(SupportFamily{6, {{{0, 1}, 1.0}, {{2, 3, 4}, 0.5}}}),
      TrickSet(HalfCoordinate{6}),
  };
  for (const auto& set : sets) {
    for (int rep = 0; rep < 50; ++rep) {
      const Vector x = random_vector(eng, 6);
      const double base = scaled_support(set, x);
      for (double lambda : {0.25, 2.0, 3.75}) {
        Vector y = x;
        for (auto& e : y) e *= lambda;
        CHECK(scaled_support(set, y) == doctest::Approx(lambda * base).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("full sparsity reduces to the norm statistic bit for bit") {
  std::mt19937_64 eng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const Vector x = random_vector(eng, 9);
    CHECK(scaled_support(TrickSet(SparseNorm{9, 9, 1.0}), x) ==
          scaled_support(TrickSet(NormThreshold{9, 1.0}), x));
  }
}

TEST_CASE("statistic is monotone in the sparsity budget") {
  std::mt19937_64 eng(11);
  for (int rep = 0; rep < 100; ++rep) {
    const Vector x = random_vector(eng, 8);
    double prev = 0.0;
    for (int s = 1; s <= 8; ++s) {
      const double v = scaled_support(TrickSet(SparseNorm{8, s, 1.0}), x);
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(prev == scaled_support(TrickSet(NormThreshold{8, 1.0}), x));
  }
}

TEST_CASE("sign flip output is an exact reflection") {
  std::mt19937_64 eng(13);
  const std::vector<TrickSet> sets = {
      TrickSet(NormThreshold{8, 1.0}),
      TrickSet(SparseNorm{8, 3, 1.0}),
      TrickSet(SupportFamily{8, {{{0, 1}, 1.0}, {{2, 5, 7}, 1.5}, {{4}, 0.5}}}),
  };
  std::uniform_real_distribution<double> radius(0.1, 6.0);
  for (const auto& set : sets) {
    for (int rep = 0; rep < 200; ++rep) {
      const Vector x = random_vector(eng, 8);
      const double r = radius(eng);
      const auto out = sign_flip_candidate(set, x, r);
      if (!out.has_value()) continue;
      const SupportSet flipped = sign_flip_support(set, x);
      Vector expected = x;
      for (int i : flipped) {
        expected[static_cast<std::size_t>(i)] = -expected[static_cast<std::size_t>(i)];
      }
      CHECK(out->fake == expected);  // exact reflection, bit for bit
      CHECK(norm2(out->fake) == norm2(x));
      CHECK(membership(set, out->trick, 1e-9));
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double reconstructed = x[i] + r * out->trick[i];
        const double scale = 1.0 + std::fabs(x[i]) + r * std::fabs(out->trick[i]);
        CHECK(std::fabs(out->fake[i] - reconstructed) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("flip target depends only on coordinate magnitudes") {
  std::mt19937_64 eng(17);
  const std::vector<TrickSet> sets = {
      TrickSet(NormThreshold{8, 1.0}),
      TrickSet(SparseNorm{8, 3, 1.0}),
      TrickSet(SupportFamily{8, {{{0, 1}, 1.0}, {{2, 5, 7}, 1.5}, {{4}, 0.5}}}),
  };
  for (const auto& set : sets) {
    for (int rep = 0; rep < 100; ++rep) {
      const Vector x = random_vector(eng, 8);
      Vector y = x;
      for (auto& e : y) {
        if ((eng() & 1u) != 0) e = -e;
      }
      CHECK(sign_flip_support(set, x) == sign_flip_support(set, y));
      CHECK(scaled_support(set, x) == scaled_support(set, y));
    }
  }
}

TEST_CASE("sparse statistic and flip agree with exhaustive enumeration") {
  std::mt19937_64 eng(23);
  std::uniform_real_distribution<double> radius(0.5, 8.0);
  for (int n = 2; n <= 10; n += 2) {
    for (int s = 1; s <= std::min(3, n); ++s) {
      const TrickSet set{SparseNorm{n, s, 1.0}};
      for (int rep = 0; rep < 100; ++rep) {
        const Vector x = random_vector(eng, n);
        CHECK(scaled_support(set, x) == sparse_oracle(x, s, 1.0));
        CHECK(sign_flip_support(set, x) == sparse_argmax_oracle(x, s));
        const double r = radius(eng);
        const SupportSet support = sparse_argmax_oracle(x, s);
        const bool feasible = 2.0 * norm2_on(x, support) >= r;
        CHECK(sign_flip_candidate(set, x, r).has_value() == feasible);
      }
    }
  }
}

TEST_CASE("ties and zeros in the flip argmax") {
  SUBCASE("equal magnitudes break toward the smallest indices") {
    const TrickSet set{SparseNorm{4, 2, 1.0}};
    CHECK(sign_flip_support(set, {1.0, -1.0, 1.0, 0.0}) == SupportSet{0, 1});
  }
  SUBCASE("zero coordinates never enter the support") {
    const TrickSet set{SparseNorm{4, 3, 1.0}};
    CHECK(sign_flip_support(set, {0.0, 2.0, 0.0, 1.0}) == SupportSet{1, 3});
  }
  SUBCASE("support family ties break toward the earliest entry") {
    const TrickSet set{SupportFamily{4, {{{0}, 1.0}, {{1}, 1.0}}}};
    CHECK(sign_flip_support(set, {2.0, 2.0, 0.0, 0.0}) == SupportSet{0});
  }
}

TEST_CASE("canonical tricks are members") {
  const std::vector<TrickSet> sets = {
      TrickSet(NormThreshold{5, 2.0}),
      TrickSet(SparseNorm{5, 2, 1.5}),
      TrickSet(SupportFamily{5, {{{1, 3}, 0.75}}}),
      TrickSet(HalfCoordinate{5}),
  };
  for (const auto& set : sets) {
    const Vector t = canonical_trick(set);
    CHECK(static_cast<int>(t.size()) == dim(set));
    CHECK(membership(set, t, 1e-9));
  }
}
