#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "intrinlip/lipschitz.hpp"

namespace intrinlip {

struct ClosureResult {
  bool closed = true;
  double residual = 0.0;  // chart residual of π_H(x) vs φ(π_N(x))
  std::size_t checked = 0;
  std::optional<Element> witness;
};

/// Tests Φ(n)·Φ(m) ∈ Γ_φ and Φ(n)⁻¹ ∈ Γ_φ on the pairs.
ClosureResult subgroup_closure_check(const IntrinsicMap& phi, std::span<const BasePair> pairs,
                                     double tol = 1e-9);

/// Identity ids: N1..N5, Na..Nd for a normal domain; H1..H4, Ha..Hd for a
/// normal codomain. An abelian splitting reports both families.
struct IdentityResidualReport {
  std::map<std::string, double> residuals;
  std::map<std::string, std::size_t> skipped;  // arguments leaving E
  double closure_residual = 0.0;
  std::size_t pairs = 0;

  double max_residual() const;
};

/// Throws NotASubgroup if the closure check fails on the pairs.
IdentityResidualReport identity_residuals(const IntrinsicMap& phi,
                                          std::span<const BasePair> pairs,
                                          double tol = 1e-9);

struct PowerBoundResult {
  bool holds = false;
  double fssc = 0.0;
  double bound = 0.0;        // C·k
  double premise_ratio = 0;  // sup d(1,φ(n))/d(1,n^k)
};

/// Premise d(1,φ(n)) ≤ C d(1,n^k) on the bases (throws PremiseFailed with the
/// violating n), then the graph-pair constant on the pairs against C·k.
PowerBoundResult power_bound_check(const IntrinsicMap& phi, double C, int k,
                                   std::span<const Element> bases,
                                   std::span<const BasePair> pairs, double tol = 1e-6);

/// max chart residual of π_N(h·π_N(h⁻¹n)) against n.
double unique_preimage_residual(const Splitting& s, std::span<const BasePair> pairs_nh);

}  // namespace intrinlip
