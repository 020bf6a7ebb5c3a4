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

#include "fakewidth/tricksets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fakewidth {

namespace {

constexpr double kSqrt3Half = 0.86602540378443864676372317075294;  // sqrt(3)/2

void check_dim(const TrickSet& set, const Vector& x) {
  if (static_cast<int>(x.size()) != dim(set)) {
    throw std::invalid_argument("vector dimension " + std::to_string(x.size()) +
                                " does not match set dimension " + std::to_string(dim(set)));
  }
}

void check_support(const SupportSet& support, int n) {
  if (support.empty()) throw std::invalid_argument("empty support in support family");
  int prev = -1;
  for (int i : support) {
    if (i < 0 || i >= n) throw std::invalid_argument("support index out of range");
    if (i <= prev) throw std::invalid_argument("support indices must be strictly increasing");
    prev = i;
  }
}

// Indices of the k largest |x_i|, ties to the smaller index, returned
// sorted ascending. Stable selection keeps the result a function of |x|
// alone and picks the lexicographically smallest maximizing support.
SupportSet top_k_magnitude(const Vector& x, const SupportSet& candidates, std::size_t k) {
  SupportSet idx = candidates;
  const auto larger = [&x](int a, int b) {
    const double ma = std::fabs(x[static_cast<std::size_t>(a)]);
    const double mb = std::fabs(x[static_cast<std::size_t>(b)]);
    if (ma != mb) return ma > mb;
    return a < b;
  };
  if (k < idx.size()) {
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k) - 1, idx.end(),
                     larger);
    idx.resize(k);
  }
  std::sort(idx.begin(), idx.end());
  return idx;
}

bool lex_less(const SupportSet& a, const SupportSet& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double entry_ratio(const Vector& x, const SupportFamilyEntry& e) {
  return norm2_on(x, e.support) / e.min_norm;
}

}  // namespace

int dim(const TrickSet& set) {
  return std::visit([](const auto& s) { return s.n; }, set);
}

void validate(const TrickSet& set) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, NormThreshold>) {
          if (s.n < 1) throw std::invalid_argument("norm threshold set needs n >= 1");
          if (!(s.min_norm > 0.0)) throw std::invalid_argument("min_norm must be positive");
        } else if constexpr (std::is_same_v<S, SparseNorm>) {
          if (s.n < 1) throw std::invalid_argument("sparse norm set needs n >= 1");
          if (s.sparsity < 1 || s.sparsity > s.n) {
            throw std::invalid_argument("sparsity must lie in [1, n]");
          }
          if (!(s.min_norm > 0.0)) throw std::invalid_argument("min_norm must be positive");
        } else if constexpr (std::is_same_v<S, SupportFamily>) {
          if (s.n < 1) throw std::invalid_argument("support family needs n >= 1");
          if (s.entries.empty()) throw std::invalid_argument("support family needs entries");
          for (const auto& e : s.entries) {
            check_support(e.support, s.n);
            if (!(e.min_norm > 0.0)) throw std::invalid_argument("entry min_norm must be positive");
          }
          std::vector<SupportSet> seen;
          seen.reserve(s.entries.size());
          for (const auto& e : s.entries) seen.push_back(e.support);
          std::sort(seen.begin(), seen.end());
          if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
            throw std::invalid_argument("support family entries must have distinct supports");
          }
        } else {
          static_assert(std::is_same_v<S, HalfCoordinate>);
          if (s.n < 2) throw std::invalid_argument("half coordinate set needs n >= 2");
        }
      },
      set);
}

bool is_highly_symmetric(const TrickSet& set) {
  return !std::holds_alternative<HalfCoordinate>(set);
}

double inradius(const TrickSet& set) {
  return std::visit(
      [](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, NormThreshold>) {
          return s.min_norm;
        } else if constexpr (std::is_same_v<S, SparseNorm>) {
          return s.min_norm;
        } else if constexpr (std::is_same_v<S, SupportFamily>) {
          double r = s.entries.front().min_norm;
          for (const auto& e : s.entries) r = std::min(r, e.min_norm);
          return r;
        } else {
          return 1.0;
        }
      },
      set);
}

double scaled_support(const TrickSet& set, const Vector& x) {
  check_dim(set, x);
  return std::visit(
      [&x](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, NormThreshold>) {
          // For fixed ||t|| = m the best direction gives ||x||/m; the
          // supremum over m >= min_norm is at the inner boundary.
          return norm2(x) / s.min_norm;
        } else if constexpr (std::is_same_v<S, SparseNorm>) {
          SupportSet all(x.size());
          std::iota(all.begin(), all.end(), 0);
          const SupportSet top =
              top_k_magnitude(x, all, static_cast<std::size_t>(s.sparsity));
          return norm2_on(x, top) / s.min_norm;
        } else if constexpr (std::is_same_v<S, SupportFamily>) {
          double best = 0.0;
          for (const auto& e : s.entries) best = std::max(best, entry_ratio(x, e));
          return best;
        } else {
          // ||t|| = 1 so <x, t/||t||^2> = <x, t>; put 1/2 of the budget on
          // the first coordinate and the remaining sqrt(3)/2 of norm along
          // the rest of x.
          double tail = 0.0;
          for (std::size_t i = 1; i < x.size(); ++i) tail += x[i] * x[i];
          return 0.5 * std::fabs(x[0]) + kSqrt3Half * std::sqrt(tail);
        }
      },
      set);
}

bool membership(const TrickSet& set, const Vector& t, double tol) {
  check_dim(set, t);
  if (tol < 0.0) throw std::invalid_argument("membership tolerance must be >= 0");
  return std::visit(
      [&t, tol](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, NormThreshold>) {
          return norm2(t) >= s.min_norm - tol;
        } else if constexpr (std::is_same_v<S, SparseNorm>) {
          const SupportSet supp = nonzero_support(t);
          return static_cast<int>(supp.size()) <= s.sparsity && norm2(t) >= s.min_norm - tol;
        } else if constexpr (std::is_same_v<S, SupportFamily>) {
          const SupportSet supp = nonzero_support(t);
          for (const auto& e : s.entries) {
            if (supp == e.support && norm2(t) >= e.min_norm - tol) return true;
          }
          return false;
        } else {
          return std::fabs(norm2(t) - 1.0) <= tol && std::fabs(std::fabs(t[0]) - 0.5) <= tol;
        }
      },
      set);
}

SupportSet sign_flip_support(const TrickSet& set, const Vector& x) {
  check_dim(set, x);
  return std::visit(
      [&x](const auto& s) -> SupportSet {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, NormThreshold>) {
          return nonzero_support(x);
        } else if constexpr (std::is_same_v<S, SparseNorm>) {
          const SupportSet nz = nonzero_support(x);
          const std::size_t k =
              std::min(nz.size(), static_cast<std::size_t>(s.sparsity));
          if (k == 0) return {};
          return top_k_magnitude(x, nz, k);
        } else if constexpr (std::is_same_v<S, SupportFamily>) {
          const SupportFamilyEntry* best = nullptr;
          double best_ratio = 0.0;
          for (const auto& e : s.entries) {
            const double ratio = entry_ratio(x, e);
            if (best == nullptr || ratio > best_ratio ||
                (ratio == best_ratio && lex_less(e.support, best->support))) {
              best = &e;
              best_ratio = ratio;
            }
          }
          return best->support;
        } else {
          throw std::invalid_argument(
              "sign flipping requires a set closed under coordinate sign patterns");
        }
      },
      set);
}

AdversaryOutcome sign_flip_candidate(const TrickSet& set, const Vector& x, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("sign flip requires r > 0");
  const SupportSet flip = sign_flip_support(set, x);  // validates variant + dims
  if (flip.empty()) return std::nullopt;

  double flip_min_norm = 0.0;
  if (const auto* nt = std::get_if<NormThreshold>(&set)) {
    flip_min_norm = nt->min_norm;
  } else if (const auto* sn = std::get_if<SparseNorm>(&set)) {
    flip_min_norm = sn->min_norm;
  } else {
    const auto& family = std::get<SupportFamily>(set);
    for (const auto& e : family.entries) {
      if (e.support == flip) {
        flip_min_norm = e.min_norm;
        break;
      }
    }
  }

  // Feasible iff a trick with r*t = -2 x_{I*} exists in T.
  const double flipped_norm = norm2_on(x, flip);
  if (!(2.0 * flipped_norm >= r * flip_min_norm)) return std::nullopt;

  FakeSample out;
  out.fake = x;
  out.trick.assign(x.size(), 0.0);
  for (int i : flip) {
    const auto u = static_cast<std::size_t>(i);
    out.fake[u] = -x[u];  // exact sign reversal
    out.trick[u] = -2.0 * x[u] / r;
  }
  // For a support family the realized trick can drop coordinates that are
  // zero in x; if no entry covers that smaller support, no member of T
  // realizes the flip and the adversary gives up.
  if (!membership(set, out.trick, 1e-9)) return std::nullopt;
  return out;
}

Vector canonical_trick(const TrickSet& set) {
  validate(set);
  return std::visit(
      [](const auto& s) -> Vector {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, NormThreshold>) {
          Vector t(static_cast<std::size_t>(s.n), 0.0);
          t[0] = s.min_norm;
          return t;
        } else if constexpr (std::is_same_v<S, SparseNorm>) {
          Vector t(static_cast<std::size_t>(s.n), 0.0);
          t[0] = s.min_norm;
          return t;
        } else if constexpr (std::is_same_v<S, SupportFamily>) {
          const auto& e = s.entries.front();
          Vector t(static_cast<std::size_t>(s.n), 0.0);
          const double v = e.min_norm / std::sqrt(static_cast<double>(e.support.size()));
          for (int i : e.support) t[static_cast<std::size_t>(i)] = v;
          return t;
        } else {
          Vector t(static_cast<std::size_t>(s.n), 0.0);
          t[0] = 0.5;
          t[1] = kSqrt3Half;
          return t;
        }
      },
      set);
}

}  // namespace fakewidth
