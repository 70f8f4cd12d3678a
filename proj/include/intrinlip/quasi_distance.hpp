#pragma once

#include <array>
#include <span>
#include <string>

#include "intrinlip/lipschitz.hpp"

namespace intrinlip {

using BaseTriple = std::array<Element, 3>;

/// d_φ(n₁,n₂) = ½ (d(1, π_N(q₁⁻¹q₂)) + d(1, π_N(q₂⁻¹q₁))), q_i = Φ(n_i).
/// Throws OutsideDomain.
double quasi_distance(const IntrinsicMap& phi, const Element& n1, const Element& n2);

struct QuasiTriangleEstimate {
  double value = 0.0;       // sup d_φ(n₁,n₂) / (d_φ(n₁,n₃) + d_φ(n₃,n₂))
  double splitting_c = 0.0; // π_N-at-1 constant on the points used
  double intrinsic_l = 0.0; // graph-pair constant on the pairs used
  double bound = 0.0;       // C(1+L)
  std::size_t samples = 0;
  std::size_t skipped = 0;
};

/// `box_c` is an independent estimate of the π_N-at-1 constant on the sample
/// box; the constant used is the larger of it and the ratios at the points
/// q_i⁻¹q_j that the triples touch. Throws DegenerateSample.
QuasiTriangleEstimate quasi_triangle_constant(const IntrinsicMap& phi,
                                              std::span<const BaseTriple> triples,
                                              double box_c = 0.0, double tol = 1e-9);

struct GraphEquivalence {
  double c_low = 0.0;   // inf d(q₁,q₂)/d_φ
  double c_high = 0.0;  // sup d(q₁,q₂)/d_φ
  double splitting_c = 0.0;
  double intrinsic_l = 0.0;
  double low_bound = 0.0;   // 1/C
  double high_bound = 0.0;  // 2(1+L)
  /// Alternative constants 2/C and L+1, reported only.
  bool doubled_low_holds = false;
  bool unit_high_holds = false;
  /// sup d(φ(n₁),φ(n₂))/d_φ(n₁,n₂), bounded by 2L.
  double value_lipschitz = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
};

/// Throws DegenerateSample.
GraphEquivalence graph_equivalence_constants(const IntrinsicMap& phi,
                                             std::span<const BasePair> pairs,
                                             double box_c = 0.0, double tol = 1e-9);

/// max |d_φ(m,k) − d(m,k)| on a codomain-normal splitting.
/// Throws WrongNormalSide.
double normal_case_identity(const IntrinsicMap& phi, std::span<const BasePair> pairs);

}  // namespace intrinlip
