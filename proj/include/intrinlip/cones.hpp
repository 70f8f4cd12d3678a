#pragma once

#include <span>
#include <string>

#include "intrinlip/group.hpp"

namespace intrinlip {

// Families, all with vertex 1 before translation to the vertex p:
//   Axis        dist(g⁻¹,H) ≤ α d(1,g)
//   AxisStrict  dist(1,gH)  < α d(1,g)
//   SplitLeft   d(1,π_N g) ≤ α d(1,π_H g)
//   SplitRight  d(1,π̃_N g) ≤ α d(1,π̃_H g) for the H ⋉ N factorization g = π̃_H(g)·π̃_N(g)
// Both axis families use dist_to_subgroup(g), the point-set distance of g⁻¹ to H.
enum class ConeFamily { Axis, AxisStrict, SplitLeft, SplitRight };
enum class ConeHalf { Full, Plus, Minus };

std::string to_string(ConeFamily family);
std::string to_string(ConeHalf half);

struct ConeSpec {
  ConeFamily family = ConeFamily::SplitLeft;
  ConeHalf half = ConeHalf::Full;
  double opening = 1.0;
  Element vertex;  // empty means the identity
};

/// Membership of g in vertex·C, tested as membership of vertex⁻¹·g in the
/// vertex-1 cone. Axis membership allows `slack` on the infimum side.
/// Throws AxisMissing for half cones without a registered axis.
bool cone_contains(const Splitting& s, const ConeSpec& cone, const Element& g,
                   double slack = 1e-6, const SearchParams& search = {});

/// Smallest α for which g lies in the cone (for AxisStrict: the infimum of
/// admissible α, which is not itself admissible). 0 for 0/0, +∞ for a zero
/// denominator under a nonzero numerator or for the wrong half space.
double minimal_opening(const Splitting& s, ConeFamily family, ConeHalf half,
                       const Element& vertex, const Element& g,
                       const SearchParams& search = {});

/// k² + k(α − 1): opening that contains p^k whenever p ∈ C_{N,H}(α).
double power_cone_bound(double alpha, int k);

/// A point of the vertex-1 split cone of the given opening (SplitLeft or
/// SplitRight only). The unit vector has h_sample_dim + n_sample_dim + 1
/// coordinates; the last chooses where between the axis and the boundary
/// the point falls (the boundary itself for a tenth of the draws).
Element sample_in_split_cone(const Splitting& s, ConeFamily family, ConeHalf half,
                             double opening, std::span<const double> unit,
                             const SampleBox& box);
int split_cone_sample_dim(const Splitting& s);

/// N element along the chart ray through `direction` with d(1, n) = radius.
Element n_at_distance(const Splitting& s, const Element& direction, double radius);

}  // namespace intrinlip
