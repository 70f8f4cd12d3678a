#include "intrinlip/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intrinlip/errors.hpp"

namespace intrinlip {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Sides {
  double lhs;  // the side bounded by the opening
  double rhs;  // the side multiplied by the opening
};

Sides cone_sides(const Splitting& s, ConeFamily family, const Element& x,
                 const SearchParams& search) {
  const auto& G = s.group();
  switch (family) {
    case ConeFamily::Axis:
    case ConeFamily::AxisStrict:
      return {dist_to_subgroup(s, x, search), G.norm(x)};
    case ConeFamily::SplitLeft:
      return {G.norm(s.project_n(x)), G.norm(s.project_h(x))};
    case ConeFamily::SplitRight: {
      const auto r = decompose_right(s, x);
      return {G.norm(r.n), G.norm(r.h)};
    }
  }
  throw InvalidSpec("unknown cone family");
}

bool in_half(const Splitting& s, ConeHalf half, const Element& x) {
  if (half == ConeHalf::Full) return true;
  const double t = s.axis_parameter(s.project_h(x));
  return half == ConeHalf::Plus ? t >= 0.0 : t <= 0.0;
}

Element relative(const Splitting& s, const Element& vertex, const Element& g) {
  if (vertex.size() == 0) return g;
  return s.group().multiply(s.group().inverse(vertex), g);
}

}  // namespace

std::string to_string(ConeFamily family) {
  switch (family) {
    case ConeFamily::Axis: return "axis";
    case ConeFamily::AxisStrict: return "axis_strict";
    case ConeFamily::SplitLeft: return "split_left";
    case ConeFamily::SplitRight: return "split_right";
  }
  return "?";
}

std::string to_string(ConeHalf half) {
  switch (half) {
    case ConeHalf::Full: return "full";
    case ConeHalf::Plus: return "plus";
    case ConeHalf::Minus: return "minus";
  }
  return "?";
}

bool cone_contains(const Splitting& s, const ConeSpec& cone, const Element& g, double slack,
                   const SearchParams& search) {
  if (cone.half != ConeHalf::Full && !s.has_axis()) {
    throw AxisMissing("half cones need a one-dimensional geodesic axis");
  }
  const Element x = relative(s, cone.vertex, g);
  if (!in_half(s, cone.half, x)) return false;
  const Sides sides = cone_sides(s, cone.family, x, search);
  switch (cone.family) {
    case ConeFamily::Axis: return sides.lhs - slack <= cone.opening * sides.rhs;
    case ConeFamily::AxisStrict: return sides.lhs - slack < cone.opening * sides.rhs;
    default: return sides.lhs <= cone.opening * sides.rhs;
  }
}

double minimal_opening(const Splitting& s, ConeFamily family, ConeHalf half,
                       const Element& vertex, const Element& g, const SearchParams& search) {
  if (half != ConeHalf::Full && !s.has_axis()) {
    throw AxisMissing("half cones need a one-dimensional geodesic axis");
  }
  const Element x = relative(s, vertex, g);
  if (!in_half(s, half, x)) return kInf;
  const Sides sides = cone_sides(s, family, x, search);
  if (sides.lhs == 0.0) return 0.0;
  if (sides.rhs == 0.0) return kInf;
  return sides.lhs / sides.rhs;
}

double power_cone_bound(double alpha, int k) {
  const double kk = static_cast<double>(k);
  return kk * kk + kk * (alpha - 1.0);
}

int split_cone_sample_dim(const Splitting& s) { return s.h_sample_dim() + s.n_sample_dim() + 1; }

Element n_at_distance(const Splitting& s, const Element& direction, double radius) {
  if (s.group().is_finite()) throw InvalidSpec("n_at_distance: Lie instances only");
  const auto& G = s.group();
  if (radius <= 0.0) return G.identity();
  const auto dir = s.n_chart(direction);
  if (std::all_of(dir.begin(), dir.end(), [](double v) { return v == 0.0; })) {
    throw DegenerateSample("n_at_distance: direction is the identity");
  }
  auto at = [&](double c) {
    std::vector<double> chart(dir);
    for (double& v : chart) v *= c;
    return s.n_element(chart);
  };
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (G.norm(at(hi)) < radius) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 1000) throw DegenerateSample("n_at_distance: radius out of reach");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (G.norm(at(mid)) < radius ? lo : hi) = mid;
  }
  // lo stays strictly inside the radius, so boundary draws never overshoot.
  return at(lo);
}

Element sample_in_split_cone(const Splitting& s, ConeFamily family, ConeHalf half,
                             double opening, std::span<const double> unit,
                             const SampleBox& box) {
  if (family != ConeFamily::SplitLeft && family != ConeFamily::SplitRight) {
    throw InvalidSpec("sample_in_split_cone: split families only");
  }
  if (static_cast<int>(unit.size()) != split_cone_sample_dim(s)) {
    throw InvalidSpec("sample_in_split_cone: unit vector size mismatch");
  }
  const auto& G = s.group();
  const auto hd = static_cast<std::size_t>(s.h_sample_dim());
  const auto nd = static_cast<std::size_t>(s.n_sample_dim());
  Element h = s.sample_h(unit.first(hd), box);
  if (half != ConeHalf::Full) {
    const double t = std::abs(s.axis_parameter(h));
    h = s.axis_point(half == ConeHalf::Plus ? t : -t);
  }
  const double u = unit[hd + nd];
  const double fraction = u < 0.1 ? 1.0 : (u - 0.1) / 0.9;
  const double radius = fraction * opening * G.norm(h);

  Element n;
  if (G.is_finite()) {
    std::vector<Element> candidates;
    for (const auto& m : s.n_elements()) {
      if (G.norm(m) <= opening * G.norm(h)) candidates.push_back(m);
    }
    const auto idx = std::min(static_cast<std::size_t>(u * static_cast<double>(candidates.size())),
                              candidates.size() - 1);
    n = candidates[idx];
  } else {
    const Element direction = s.sample_n(unit.subspan(hd, nd), box);
    n = G.norm(direction) == 0.0 ? G.identity() : n_at_distance(s, direction, radius);
  }
  return family == ConeFamily::SplitLeft ? G.multiply(n, h) : G.multiply(h, n);
}

}  // namespace intrinlip
