#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "intrinlip/cones.hpp"
#include "intrinlip/intrinsic_map.hpp"

namespace intrinlip {

using BasePair = std::pair<Element, Element>;

/// Condition ids: Fssc is the graph-pair ratio
///   d(1, π_H(x⁻¹x')) / d(1, π_N(x⁻¹x')),
/// C1..C6 are the base-point conditions at p = m·φ(m):
///   C1  d(1, φ_{p⁻¹}(n)) / d(1, n)
///   C2  d(φ(m), φ(n')) / d(1, π_N(p⁻¹q')),       q' = Φ(n')
///   C3  d(φ(π_N p), φ(π_N(p n))) / d(1, n)
///   C4  d(1, q) / d(1, π_N q),                     q ∈ Γ_{φ_{p⁻¹}}
///   C5  d(p, q') / d(1, π_N(p⁻¹q'))
///   C6  p·C_{N,H}(opening) ∩ Γ_φ is trivial (0) or not (+∞)
enum class ConditionId { Fssc, C1, C2, C3, C4, C5, C6 };

std::string to_string(ConditionId id);

struct LipschitzEstimate {
  ConditionId id = ConditionId::Fssc;
  double value = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::string sample;
};

/// Pairs of domain points (bases in E).
std::vector<BasePair> sample_domain_pairs(const IntrinsicMap& phi, const SampleBox& box,
                                          std::size_t count, std::uint64_t seed);
/// All ordered pairs of distinct domain points (finite groups).
std::vector<BasePair> enumerate_domain_pairs(const IntrinsicMap& phi);

/// Supremum over the pairs of the graph-pair ratio. Throws DegenerateSample.
LipschitzEstimate fssc_constant(const IntrinsicMap& phi, std::span<const BasePair> pairs,
                                double tol = 1e-9);

struct ConditionOptions {
  /// Opening 1/L̂ for condition 6.
  double opening = 1.0;
  /// Condition 6 treats the vertex p itself as a witness when false.
  bool exclude_vertex = true;
  double tol = 1e-9;
};

/// Conditions 1–5 are evaluated over a shared set of N offsets n (from the
/// sample box around the identity); condition 2 and 5 read them through
/// n' = π_N(p·n), so all five ratios parametrize the same graph points.
/// Throws DegenerateSample, OutsideDomain (m ∉ E).
LipschitzEstimate condition_constant(const IntrinsicMap& phi, ConditionId id, const Element& m,
                                     std::span<const Element> offsets,
                                     const ConditionOptions& options = {});

struct SeparationResult {
  bool separated = true;
  std::size_t checked = 0;
  /// Deepest witness: the graph point whose minimal opening undercuts the
  /// tested opening by the largest factor.
  std::optional<Element> witness;
  double witness_opening = 0.0;
  double tested_opening = 0.0;
};

struct SeparationOptions {
  /// Split family: ∀ L̂ > L, p·C(1/L̂) ∩ Γ = {p} is tested (open cone of
  /// opening 1/L). With `closed_at_L`, the closed cone C(1/L) itself.
  bool closed_at_L = false;
  /// Counts the vertex as a witness (the literal "= ∅" convention).
  bool include_vertex = false;
  /// Axis family: π_N-at-1 constant k; the opening is 1/((k+1)L) unless
  /// `axis_threshold` overrides L̂.
  double k = 1.0;
  std::optional<double> axis_threshold;
  SearchParams search{};
};

/// Tests whether any of the graph points over `bases` lies in the cone at
/// p = Φ(m). family ∈ {SplitLeft, Axis, AxisStrict}.
SeparationResult cone_separation_test(const IntrinsicMap& phi, const Element& m, double L,
                                      ConeFamily family, std::span<const Element> bases,
                                      const SeparationOptions& options = {});

struct HalfconeResult {
  bool contained = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::optional<Element> witness;
  std::optional<Element> witness_vertex;
};

/// For each base m and each cone point x of C±(1/L) (vertex 1), tests that
/// Φ(m)·x lies in the closed super/subgraph. Throws AxisMissing.
HalfconeResult halfcone_graph_test(const IntrinsicMap& phi, double L,
                                   std::span<const Element> bases,
                                   std::size_t points_per_base, std::uint64_t seed,
                                   const SampleBox& box, double tol = 1e-9);

struct ProjectionEstimate {
  double value = 0.0;
  double bound = 0.0;  // α/(1−α)
  std::size_t samples = 0;
  std::size_t skipped = 0;
};

/// Supremum of d(1, π_H(p))/d(1, p) over p ∈ Γ_{φ_{q⁻¹}} ∩ B(1, r), q = Φ(m),
/// sampling p over the offsets. Requires alpha < 1; throws DegenerateSample.
ProjectionEstimate graph_projection_constant(const IntrinsicMap& phi, double alpha,
                                             const Element& m, double radius,
                                             std::span<const Element> offsets);

struct LimitResult {
  bool holds = false;
  bool certified = false;        // every φ_h within L on the sample
  double sequence_constant = 0;  // max over h of the sampled constants
  double limit_constant = 0;
  double convergence_gap = 0;    // max over samples of d(φ_last(n), φ(n))
};

/// Checks that the pointwise limit `limit` of `sequence` satisfies the
/// condition-2 inequality with L + tol on the pairs. Throws NotConverged if
/// the last term differs from the limit by more than tol on the sample.
LimitResult limit_stability_check(std::span<const IntrinsicMap> sequence,
                                  const IntrinsicMap& limit, double L,
                                  std::span<const BasePair> pairs, double tol = 1e-6);

struct MetricVsIntrinsic {
  double intrinsic = 0.0;  // sup d(1,π_H(x⁻¹x'))/d(1,π_N(x⁻¹x'))
  double metric = 0.0;     // sup d(Φ(m),Φ(k))/d(m,k)
  std::size_t samples = 0;
  std::size_t skipped = 0;
  /// Worst pointwise excess of ratio_metric − 1 − ratio_intrinsic and of
  /// ratio_intrinsic − 1 − ratio_metric (nonpositive when both bounds hold).
  double worst_metric_excess = 0.0;
  double worst_intrinsic_excess = 0.0;
};

/// Codomain-normal splittings only; throws WrongNormalSide otherwise.
MetricVsIntrinsic metric_vs_intrinsic(const IntrinsicMap& phi, std::span<const BasePair> pairs,
                                      double tol = 1e-9);

}  // namespace intrinlip
