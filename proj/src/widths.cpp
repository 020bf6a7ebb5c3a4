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

#include "fakewidth/widths.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "fakewidth/parallel.hpp"

namespace fakewidth {

namespace {

constexpr double kSqrt3Half = 0.86602540378443864676372317075294;

// Decisions at the boundary of the polar inequality are made with a small
// absolute slack so that exact-equality candidates (e.g. <t, t> = 1 for
// unit tricks) are not rejected on the last bit of rounding.
constexpr double kPolarSlack = 1e-9;

struct MomentAccumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
};

WidthEstimate reduce_blocks(const std::vector<MomentAccumulator>& blocks, std::int64_t samples,
                            WidthKind kind) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& b : blocks) {  // fixed order: independent of scheduling
    sum += b.sum;
    sum_sq += b.sum_sq;
  }
  const auto n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  WidthEstimate out;
  out.mean = mean;
  out.std_error = std::sqrt(var / n);
  out.samples = samples;
  out.kind = kind;
  return out;
}

void check_sample_count(std::int64_t samples) {
  if (samples < 2) throw std::invalid_argument("width estimation needs at least 2 samples");
}

void check_dims(int set_dim, const DataDistribution& dist) {
  if (set_dim != dim(dist)) {
    throw std::invalid_argument("set dimension does not match distribution dimension");
  }
}

double support_value(const std::vector<Vector>& points, const Vector& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : points) best = std::max(best, dot(d, s));
  return best;
}

/* ---------- small geometry toolkit for the polar condition ---------- */

using Point2 = std::array<double, 2>;

double cross2(const Point2& a, const Point2& b) { return a[0] * b[1] - a[1] * b[0]; }

// Andrew monotone chain; returns the hull counter-clockwise without
// duplicated endpoints. Collinear points are dropped.
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2({hull[k - 1][0] - hull[k - 2][0], hull[k - 1][1] - hull[k - 2][1]},
                            {pts[i][0] - hull[k - 2][0], pts[i][1] - hull[k - 2][1]}) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2({hull[k - 1][0] - hull[k - 2][0], hull[k - 1][1] - hull[k - 2][1]},
                                {pts[i][0] - hull[k - 2][0], pts[i][1] - hull[k - 2][1]}) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// min over unit directions d of max_{p} <d, p> for an origin-symmetric 2D
// point cloud: the inradius about the origin of the convex hull, attained
// at an edge normal. Returns the radius and a unit direction achieving it.
struct Inradius2 {
  double radius = 0.0;
  Point2 direction{1.0, 0.0};
};

Inradius2 inradius_about_origin(const std::vector<Point2>& pts) {
  const std::vector<Point2> hull = convex_hull(pts);
  Inradius2 out;
  if (hull.size() < 3) {
    // Degenerate: all points on a line through the origin (the cloud is
    // symmetric). Any orthogonal direction has support value <= 0.
    out.radius = 0.0;
    Point2 dir{1.0, 0.0};
    for (const auto& p : hull) {
      if (p[0] != 0.0 || p[1] != 0.0) {
        const double norm = std::hypot(p[0], p[1]);
        dir = {-p[1] / norm, p[0] / norm};
        break;
      }
    }
    out.direction = dir;
    return out;
  }
  bool first = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % hull.size()];
    const Point2 edge{b[0] - a[0], b[1] - a[1]};
    const double len = std::hypot(edge[0], edge[1]);
    if (len == 0.0) continue;
    const double dist = std::fabs(cross2(a, b)) / len;
    if (first || dist < out.radius) {
      Point2 normal{edge[1] / len, -edge[0] / len};
      if (normal[0] * a[0] + normal[1] * a[1] < 0.0) normal = {-normal[0], -normal[1]};
      out.radius = dist;
      out.direction = normal;
      first = false;
    }
  }
  return out;
}

/*
 * Subspace reduction. For a trick constrained to coordinates I the polar
 * condition only sees the projection of S onto I, so deciding
 * "every t supported in I with ||t|| >= nu admits s with <t,s> >= 1" is
 * exactly "the ball of radius 1/nu fits inside conv(S_I)". That is decided
 * in closed form for |I| <= 2 (interval / polygon inradius about the
 * origin); for larger I an axis certificate (a scaled cross-polytope whose
 * inscribed ball is big enough) can still prove it.
 */

struct SubspaceDecision {
  PolarStatus status = PolarStatus::undecidable;
  Vector direction;  // unit vector (full dimension) with support value < threshold
};

SubspaceDecision decide_subspace(const std::vector<Vector>& points, const SupportSet& coords,
                                 std::size_t ambient, double threshold) {
  SubspaceDecision out;
  if (coords.size() == 1) {
    const auto c = static_cast<std::size_t>(coords[0]);
    double hi = -std::numeric_limits<double>::infinity();
    double lo = hi;
    for (const auto& s : points) {
      hi = std::max(hi, s[c]);
      lo = std::max(lo, -s[c]);
    }
    const double margin = std::min(hi, lo);
    if (margin + kPolarSlack >= threshold) {
      out.status = PolarStatus::satisfied;
    } else {
      out.status = PolarStatus::violated;
      out.direction.assign(ambient, 0.0);
      out.direction[c] = (hi < lo) ? 1.0 : -1.0;
    }
    return out;
  }
  if (coords.size() == 2) {
    std::vector<Point2> proj;
    proj.reserve(points.size());
    const auto ci = static_cast<std::size_t>(coords[0]);
    const auto cj = static_cast<std::size_t>(coords[1]);
    for (const auto& s : points) proj.push_back({s[ci], s[cj]});
    const Inradius2 inr = inradius_about_origin(proj);
    if (inr.radius + kPolarSlack >= threshold) {
      out.status = PolarStatus::satisfied;
    } else {
      out.status = PolarStatus::violated;
      out.direction.assign(ambient, 0.0);
      out.direction[ci] = inr.direction[0];
      out.direction[cj] = inr.direction[1];
    }
    return out;
  }

  // |I| >= 3: coordinate directions give cheap violation certificates.
  for (int i : coords) {
    const auto ci = static_cast<std::size_t>(i);
    double hi = -std::numeric_limits<double>::infinity();
    double lo = hi;
    for (const auto& s : points) {
      hi = std::max(hi, s[ci]);
      lo = std::max(lo, -s[ci]);
    }
    if (std::min(hi, lo) + kPolarSlack < threshold) {
      out.status = PolarStatus::violated;
      out.direction.assign(ambient, 0.0);
      out.direction[ci] = (hi < lo) ? 1.0 : -1.0;
      return out;
    }
  }
  // Otherwise try the cross-polytope certificate from points that project
  // onto a single axis of the subspace. conv{ +/- a_i e_i } contains the
  // ball of radius 1 / sqrt(sum 1/a_i^2).
  double inv_sq_sum = 0.0;
  for (int i : coords) {
    const auto ci = static_cast<std::size_t>(i);
    double axis = 0.0;
    for (const auto& s : points) {
      bool axis_only = true;
      for (int j : coords) {
        if (j != i && s[static_cast<std::size_t>(j)] != 0.0) {
          axis_only = false;
          break;
        }
      }
      if (axis_only) axis = std::max(axis, std::fabs(s[ci]));
    }
    if (axis == 0.0) return out;  // no certificate on this axis
    inv_sq_sum += 1.0 / (axis * axis);
  }
  if (1.0 / std::sqrt(inv_sq_sum) + kPolarSlack >= threshold) {
    out.status = PolarStatus::satisfied;
  }
  return out;
}

// Rank of the span of the points, with an orthonormal basis accumulated by
// modified Gram-Schmidt; fills `orthogonal` with a unit vector orthogonal
// to the span when the rank is deficient.
int span_rank(const std::vector<Vector>& points, std::size_t n, Vector* orthogonal) {
  std::vector<Vector> basis;
  for (const auto& p : points) {
    Vector v = p;
    for (const auto& b : basis) {
      const double c = dot(v, b);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
    }
    const double len = norm2(v);
    if (len > 1e-10 * std::max(1.0, norm2(p))) {
      for (auto& e : v) e /= len;
      basis.push_back(std::move(v));
      if (basis.size() == n) break;
    }
  }
  if (orthogonal != nullptr && basis.size() < n) {
    Vector best;
    double best_len = -1.0;
    for (std::size_t axis = 0; axis < n; ++axis) {
      Vector v(n, 0.0);
      v[axis] = 1.0;
      for (const auto& b : basis) {
        const double c = dot(v, b);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
      }
      const double len = norm2(v);
      if (len > best_len) {
        best_len = len;
        best = std::move(v);
      }
    }
    for (auto& e : best) e /= best_len;
    *orthogonal = std::move(best);
  }
  return static_cast<int>(basis.size());
}

// Turn a violating direction into an actual member of T: scale to the
// minimal norm and, for supports matched exactly, nudge zero coordinates
// inside the support so the witness really lies in T.
Vector embed_witness(const Vector& direction, double scale, const SupportSet* exact_support) {
  Vector w = direction;
  if (exact_support != nullptr) {
    for (int i : *exact_support) {
      auto& e = w[static_cast<std::size_t>(i)];
      if (e == 0.0) e = 1e-12;
    }
  }
  const double len = norm2(w);
  const double target = (exact_support != nullptr) ? scale * (1.0 + 1e-12) : scale;
  for (auto& e : w) e *= target / len;
  return w;
}

PolarCheck check_norm_threshold(const NormThreshold& set, const FocusSet& focus) {
  PolarCheck out;
  const auto n = static_cast<std::size_t>(set.n);
  const double threshold = 1.0 / set.min_norm;

  Vector orthogonal;
  if (span_rank(focus.points, n, &orthogonal) < set.n) {
    out.status = PolarStatus::violated;
    out.witness = embed_witness(orthogonal, set.min_norm, nullptr);
    out.detail = "candidate spans a proper subspace";
    return out;
  }
  if (set.n <= 2) {
    SupportSet coords(n);
    for (std::size_t i = 0; i < n; ++i) coords[i] = static_cast<int>(i);
    const SubspaceDecision d = decide_subspace(focus.points, coords, n, threshold);
    out.status = d.status;
    if (d.status == PolarStatus::violated) {
      out.witness = embed_witness(d.direction, set.min_norm, nullptr);
      out.detail = "hull inradius below 1/min_norm";
    }
    return out;
  }
  // Coordinate scan: h_S(+-e_i) < 1/min_norm is already a violation.
  for (std::size_t i = 0; i < n; ++i) {
    SupportSet coord{static_cast<int>(i)};
    const SubspaceDecision d = decide_subspace(focus.points, coord, n, threshold);
    if (d.status == PolarStatus::violated) {
      out.status = PolarStatus::violated;
      out.witness = embed_witness(d.direction, set.min_norm, nullptr);
      out.detail = "support value along a coordinate axis below 1/min_norm";
      return out;
    }
  }
  // Axis certificate in the full space.
  SupportSet coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = static_cast<int>(i);
  const SubspaceDecision d = decide_subspace(focus.points, coords, n, threshold);
  if (d.status == PolarStatus::satisfied) {
    out.status = PolarStatus::satisfied;
    out.detail = "axis cross-polytope certificate";
    return out;
  }
  out.detail = "no analytic certificate for n >= 3 with this candidate shape";
  return out;
}

PolarCheck check_sparse(const SparseNorm& set, const FocusSet& focus) {
  PolarCheck out;
  const auto n = static_cast<std::size_t>(set.n);
  const double threshold = 1.0 / set.min_norm;

  // Singleton supports are members for every sparsity level; scanning them
  // can certify a violation cheaply.
  for (std::size_t i = 0; i < n; ++i) {
    SupportSet coord{static_cast<int>(i)};
    const SubspaceDecision d = decide_subspace(focus.points, coord, n, threshold);
    if (d.status == PolarStatus::violated) {
      out.status = PolarStatus::violated;
      out.witness = embed_witness(d.direction, set.min_norm, nullptr);
      out.detail = "violated on a singleton support";
      return out;
    }
  }
  if (set.sparsity == 1) {
    out.status = PolarStatus::satisfied;
    return out;
  }
  if (set.sparsity == 2 && set.n <= 128) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        SupportSet pair{static_cast<int>(i), static_cast<int>(j)};
        const SubspaceDecision d = decide_subspace(focus.points, pair, n, threshold);
        if (d.status != PolarStatus::satisfied) {
          out.status = PolarStatus::violated;
          out.witness = embed_witness(d.direction, set.min_norm, nullptr);
          out.detail = "violated on a pair support";
          return out;
        }
      }
    }
    out.status = PolarStatus::satisfied;
    return out;
  }
  // Certificate route: the worst support is the one with the weakest axes.
  std::vector<double> axis(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& s : focus.points) {
      bool axis_only = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && s[j] != 0.0) {
          axis_only = false;
          break;
        }
      }
      if (axis_only) axis[i] = std::max(axis[i], std::fabs(s[i]));
    }
  }
  if (std::all_of(axis.begin(), axis.end(), [](double a) { return a > 0.0; })) {
    std::vector<double> inv_sq(n);
    for (std::size_t i = 0; i < n; ++i) inv_sq[i] = 1.0 / (axis[i] * axis[i]);
    std::sort(inv_sq.begin(), inv_sq.end(), std::greater<double>());
    double worst = 0.0;
    for (int i = 0; i < set.sparsity; ++i) worst += inv_sq[static_cast<std::size_t>(i)];
    if (1.0 / std::sqrt(worst) + kPolarSlack >= threshold) {
      out.status = PolarStatus::satisfied;
      out.detail = "axis cross-polytope certificate";
      return out;
    }
  }
  out.detail = "no analytic certificate for sparsity >= 3 with this candidate shape";
  return out;
}

PolarCheck check_support_family(const SupportFamily& set, const FocusSet& focus) {
  PolarCheck out;
  const auto n = static_cast<std::size_t>(set.n);
  bool all_satisfied = true;
  for (const auto& e : set.entries) {
    const SubspaceDecision d =
        decide_subspace(focus.points, e.support, n, 1.0 / e.min_norm);
    if (d.status == PolarStatus::violated) {
      out.status = PolarStatus::violated;
      out.witness = embed_witness(d.direction, e.min_norm, &e.support);
      out.detail = "violated on a family support";
      return out;
    }
    if (d.status == PolarStatus::undecidable) all_satisfied = false;
  }
  if (all_satisfied) {
    out.status = PolarStatus::satisfied;
  } else {
    out.detail = "no analytic certificate for a support of size >= 3";
  }
  return out;
}

PolarCheck check_half_coordinate(const HalfCoordinate& set, const FocusSet& focus) {
  PolarCheck out;
  const auto n = static_cast<std::size_t>(set.n);

  // A pair +-alpha*e_1 with alpha >= 2 dominates every trick: the first
  // coordinate alone contributes alpha/2 >= 1 after choosing the sign.
  for (const auto& s : focus.points) {
    bool first_only = std::fabs(s[0]) + kPolarSlack >= 2.0;
    for (std::size_t i = 1; first_only && i < n; ++i) {
      if (s[i] != 0.0) first_only = false;
    }
    if (first_only) {
      out.status = PolarStatus::satisfied;
      out.detail = "first-axis pair certificate";
      return out;
    }
  }
  if (set.n == 2) {
    // In dimension 2 the members are exactly the four unit vectors
    // (+-1/2, +-sqrt(3)/2), so enumeration decides the condition exactly.
    double worst = std::numeric_limits<double>::infinity();
    Vector worst_member;
    for (double sigma : {0.5, -0.5}) {
      for (double d : {1.0, -1.0}) {
        const Vector member{sigma, d * kSqrt3Half};
        double sup = -std::numeric_limits<double>::infinity();
        for (const auto& s : focus.points) {
          sup = std::max(sup, s[0] * member[0] + s[1] * member[1]);
        }
        if (sup < worst) {
          worst = sup;
          worst_member = member;
        }
      }
    }
    if (worst + kPolarSlack < 1.0) {
      out.status = PolarStatus::violated;
      out.witness = std::move(worst_member);
      out.detail = "a member falls below 1 on the candidate set";
    } else {
      out.status = PolarStatus::satisfied;
      out.detail = "all four members checked";
    }
    return out;
  }
  double max_norm = 0.0;
  for (const auto& s : focus.points) max_norm = std::max(max_norm, norm2(s));
  if (max_norm + kPolarSlack < 1.0) {
    Vector t(n, 0.0);
    t[0] = 0.5;
    t[1] = kSqrt3Half;
    out.status = PolarStatus::violated;
    out.witness = std::move(t);
    out.detail = "every candidate point has norm below 1";
    return out;
  }
  out.detail = "no analytic certificate for this candidate shape";
  return out;
}

}  // namespace

void validate(const FocusSet& focus) {
  if (focus.points.empty()) throw std::invalid_argument("focus set must be non-empty");
  const std::size_t n = focus.points.front().size();
  if (n == 0) throw std::invalid_argument("focus set points must have dimension >= 1");
  for (const auto& p : focus.points) {
    if (p.size() != n) throw std::invalid_argument("focus set points must share one dimension");
    if (!all_finite(p)) throw std::invalid_argument("focus set points must be finite");
    if (norm2_squared(p) == 0.0) throw std::invalid_argument("focus set points must be nonzero");
  }
  for (const auto& p : focus.points) {
    bool found = false;
    for (const auto& q : focus.points) {
      bool neg = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (q[i] != -p[i]) {
          neg = false;
          break;
        }
      }
      if (neg) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument("focus set must be origin-symmetric (closed under negation)");
    }
  }
}

WidthEstimate estimate_scaled_width(const TrickSet& set, const DataDistribution& dist,
                                    std::int64_t samples, const SeedSpec& seed, unsigned workers) {
  check_sample_count(samples);
  check_dims(dim(set), dist);
  std::vector<MomentAccumulator> blocks(static_cast<std::size_t>(block_count(samples)));
  for_each_block(samples, workers, [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
    Vector x;
    auto& acc = blocks[static_cast<std::size_t>(b)];
    for (std::int64_t t = lo; t < hi; ++t) {
      sample_into(dist, seed, static_cast<std::uint64_t>(t), x);
      const double v = scaled_support(set, x);
      acc.sum += v;
      acc.sum_sq += v * v;
    }
  });
  return reduce_blocks(blocks, samples, WidthKind::scaled_width);
}

WidthEstimate estimate_width(const FocusSet& focus, const DataDistribution& dist,
                             std::int64_t samples, const SeedSpec& seed, unsigned workers) {
  check_sample_count(samples);
  validate(focus);
  check_dims(static_cast<int>(focus.points.front().size()), dist);
  std::vector<MomentAccumulator> blocks(static_cast<std::size_t>(block_count(samples)));
  for_each_block(samples, workers, [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
    Vector x;
    auto& acc = blocks[static_cast<std::size_t>(b)];
    for (std::int64_t t = lo; t < hi; ++t) {
      sample_into(dist, seed, static_cast<std::uint64_t>(t), x);
      const double v = support_value(focus.points, x);
      acc.sum += v;
      acc.sum_sq += v * v;
    }
  });
  return reduce_blocks(blocks, samples, WidthKind::width);
}

double expected_gaussian_norm(int n) {
  if (n < 1) throw std::invalid_argument("expected_gaussian_norm needs n >= 1");
  const double x = static_cast<double>(n);
  return std::exp(0.5 * std::log(2.0) + std::lgamma(0.5 * (x + 1.0)) - std::lgamma(0.5 * x));
}

std::optional<double> analytic_scaled_width(const TrickSet& set) {
  if (const auto* nt = std::get_if<NormThreshold>(&set)) {
    return expected_gaussian_norm(nt->n) / nt->min_norm;
  }
  if (const auto* hc = std::get_if<HalfCoordinate>(&set)) {
    constexpr double kSqrt2OverPi = 0.79788456080286535587989211986876;
    return 0.5 * kSqrt2OverPi + kSqrt3Half * expected_gaussian_norm(hc->n - 1);
  }
  return std::nullopt;
}

PolarCheck verify_polar_condition(const TrickSet& set, const FocusSet& focus) {
  validate(set);
  validate(focus);
  if (static_cast<int>(focus.points.front().size()) != dim(set)) {
    throw std::invalid_argument("focus set dimension does not match trick set dimension");
  }
  return std::visit(
      [&focus](const auto& s) -> PolarCheck {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, NormThreshold>) {
          return check_norm_threshold(s, focus);
        } else if constexpr (std::is_same_v<S, SparseNorm>) {
          return check_sparse(s, focus);
        } else if constexpr (std::is_same_v<S, SupportFamily>) {
          return check_support_family(s, focus);
        } else {
          return check_half_coordinate(s, focus);
        }
      },
      set);
}

FocusedBound focused_width_upper_bound(const TrickSet& set, const std::vector<FocusSet>& candidates,
                                       const DataDistribution& dist, std::int64_t samples,
                                       const SeedSpec& seed, unsigned workers) {
  if (candidates.empty()) throw std::invalid_argument("focused width needs candidates");
  FocusedBound out;
  out.checks.reserve(candidates.size());
  out.widths.resize(candidates.size());
  bool have_bound = false;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out.checks.push_back(verify_polar_condition(set, candidates[i]));
    if (out.checks.back().status != PolarStatus::satisfied) continue;
    const WidthEstimate w = estimate_width(candidates[i], dist, samples, seed, workers);
    out.widths[i] = w;
    if (!have_bound || w.mean < out.estimate.mean) {
      out.estimate = w;
      out.chosen_index = i;
      have_bound = true;
    }
  }
  if (!have_bound) {
    throw std::invalid_argument(
        "no focused-width candidate satisfies the polar condition; the bound is undefined");
  }
  return out;
}

}  // namespace fakewidth
