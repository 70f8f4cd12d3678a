#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intrinlip/group.hpp"

namespace intrinlip {

/// A map φ: E ⊆ N → H on a splitting.
class IntrinsicMap {
 public:
  using Evaluate = std::function<Element(const Element&)>;
  using Domain = std::function<bool(const Element&)>;

  /// An empty domain predicate means E = N.
  IntrinsicMap(std::shared_ptr<const Splitting> splitting, std::string descriptor,
               Evaluate evaluate, Domain domain = {});

  const Splitting& splitting() const noexcept { return *splitting_; }
  const std::shared_ptr<const Splitting>& splitting_ptr() const noexcept { return splitting_; }
  const std::string& descriptor() const noexcept { return descriptor_; }

  bool contains(const Element& n) const { return !domain_ || domain_(n); }
  /// Throws OutsideDomain when n ∉ E.
  Element operator()(const Element& n) const;

  /// f(n) with φ(n) = h(f(n)); throws AxisMissing without a registered axis.
  double axis_value(const Element& n) const;

  /// Finite groups only: E enumerated in N-index order.
  std::vector<Element> domain_elements() const;

 private:
  std::shared_ptr<const Splitting> splitting_;
  std::string descriptor_;
  Evaluate evaluate_;
  Domain domain_;
};

struct GraphPoint {
  Element base;   // n ∈ N
  Element value;  // φ(n) ∈ H
  Element point;  // Φ(n) = n·φ(n)
};

/// Φ(n) = n·φ(n). Throws OutsideDomain.
GraphPoint graphing_map(const IntrinsicMap& phi, const Element& n);

/// φ_q, whose graph is q·Γ_φ:
///   φ_q(n) = π_H(q⁻¹n)⁻¹ · φ(π_N(q⁻¹n)),  E_q = { n : π_N(q⁻¹n) ∈ E }.
/// Membership in E_q is evaluated lazily.
IntrinsicMap translate_map(const IntrinsicMap& phi, const Element& q);

struct DistanceBound {
  double bound;
  GraphPoint witness;
};

/// dist(p, Γ_φ) ≤ d(1, π_H(p)⁻¹ φ(π_N(p))), realized by the graph point over
/// π_N(p). Throws OutsideDomain.
DistanceBound graph_distance_bound(const IntrinsicMap& phi, const Element& p);

enum class GraphSide { Supergraph, Subgraph, Graph };

std::string to_string(GraphSide side);

/// Writes p = n·h(t) and compares t with f(n) using a ±tol tie band.
/// Throws AxisMissing, OutsideDomain.
GraphSide classify_point(const IntrinsicMap& phi, const Element& p, double tol = 1e-9);

// -- builtin maps ------------------------------------------------------------

/// φ ≡ h0, given in H chart coordinates.
IntrinsicMap constant_map(std::shared_ptr<const Splitting> s, std::vector<double> h_chart);
/// H chart = matrix · N chart + offset, matrix is h_dim × n_dim row-major.
IntrinsicMap chart_linear_map(std::shared_ptr<const Splitting> s, std::string descriptor,
                              std::vector<double> matrix, std::vector<double> offset = {});
/// `linear:λ`: componentwise λ·n when n_dim = h_dim, else λ·(first N chart
/// coordinate) into a one-dimensional H. Lie instances only.
IntrinsicMap linear_map(std::shared_ptr<const Splitting> s, double lambda, double offset = 0.0);
/// `hom:c...`: homomorphism N → H. On Lie instances the coefficients form
/// the chart matrix; on dihedral groups `hom:c` is r^k ↦ s^{ck mod 2}.
IntrinsicMap hom_map(std::shared_ptr<const Splitting> s, std::vector<double> coeffs);
/// Table rows are N chart coordinates followed by H chart coordinates.
/// Finite groups: exact lookup, E = listed bases. Lie groups: nearest-sample
/// lookup, E = bounding box of the listed bases.
IntrinsicMap table_map(std::shared_ptr<const Splitting> s, std::string descriptor,
                       std::vector<std::pair<std::vector<double>, std::vector<double>>> rows);
IntrinsicMap load_table_map(std::shared_ptr<const Splitting> s, const std::string& path);

/// Grammar: `const:v[,v...]` | `linear:λ` | `hom:c[,c...]` | `table:path`.
/// Throws InvalidSpec.
IntrinsicMap parse_map_spec(std::shared_ptr<const Splitting> s, std::string_view spec);

/// Map specs exercised by the default suites on this splitting.
std::vector<std::string> shipped_map_specs(const Splitting& s);

/// Samples of E: uniform-box draws rejected outside E (finite groups:
/// uniform over N, or all of E when exhaustive).
std::vector<Element> sample_domain(const IntrinsicMap& phi, const SampleBox& box,
                                   std::size_t count, std::uint64_t seed);

}  // namespace intrinlip
