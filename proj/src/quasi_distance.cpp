#include "intrinlip/quasi_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intrinlip/errors.hpp"

namespace intrinlip {
namespace {

// Quantities of one ordered graph pair (q_a, q_b).
struct PairTerms {
  double n_part;  // d(1, π_N(q_a⁻¹q_b))
  double h_part;  // d(1, π_H(q_a⁻¹q_b))
  double full;    // d(q_a, q_b)
};

PairTerms pair_terms(const Splitting& s, const Element& qa, const Element& qb) {
  const auto& G = s.group();
  const Element x = G.multiply(G.inverse(qa), qb);
  return {G.norm(s.project_n(x)), G.norm(s.project_h(x)), G.norm(x)};
}

// Folds the π_N-at-1 ratio and the graph-pair ratio of one ordered pair.
void fold_constants(const PairTerms& t, double tol, double& c, double& l) {
  if (t.full >= tol) c = std::max(c, t.n_part / t.full);
  if (t.n_part >= tol) {
    l = std::max(l, t.h_part / t.n_part);
  } else if (t.h_part >= tol) {
    l = std::numeric_limits<double>::infinity();
  }
}

}  // namespace

double quasi_distance(const IntrinsicMap& phi, const Element& n1, const Element& n2) {
  const auto& s = phi.splitting();
  const Element q1 = graphing_map(phi, n1).point;
  const Element q2 = graphing_map(phi, n2).point;
  return 0.5 * (pair_terms(s, q1, q2).n_part + pair_terms(s, q2, q1).n_part);
}

QuasiTriangleEstimate quasi_triangle_constant(const IntrinsicMap& phi,
                                              std::span<const BaseTriple> triples,
                                              double box_c, double tol) {
  const auto& s = phi.splitting();
  QuasiTriangleEstimate out;
  out.splitting_c = box_c;
  for (const auto& triple : triples) {
    std::array<Element, 3> q;
    for (std::size_t i = 0; i < 3; ++i) q[i] = graphing_map(phi, triple[i]).point;
    std::array<std::array<double, 3>, 3> a{};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) continue;
        const PairTerms t = pair_terms(s, q[i], q[j]);
        a[i][j] = t.n_part;
        fold_constants(t, tol, out.splitting_c, out.intrinsic_l);
      }
    }
    const double d12 = 0.5 * (a[0][1] + a[1][0]);
    const double via = 0.5 * (a[0][2] + a[2][0]) + 0.5 * (a[2][1] + a[1][2]);
    if (via < tol) {
      ++out.skipped;
      continue;
    }
    ++out.samples;
    out.value = std::max(out.value, d12 / via);
  }
  if (out.samples == 0) throw DegenerateSample("quasi_triangle_constant: every triple was degenerate");
  out.bound = out.splitting_c * (1.0 + out.intrinsic_l);
  return out;
}

GraphEquivalence graph_equivalence_constants(const IntrinsicMap& phi,
                                             std::span<const BasePair> pairs, double box_c,
                                             double tol) {
  const auto& s = phi.splitting();
  const auto& G = s.group();
  GraphEquivalence out;
  out.splitting_c = box_c;
  out.c_low = std::numeric_limits<double>::infinity();
  for (const auto& [n1, n2] : pairs) {
    const GraphPoint g1 = graphing_map(phi, n1);
    const GraphPoint g2 = graphing_map(phi, n2);
    const PairTerms t12 = pair_terms(s, g1.point, g2.point);
    const PairTerms t21 = pair_terms(s, g2.point, g1.point);
    fold_constants(t12, tol, out.splitting_c, out.intrinsic_l);
    fold_constants(t21, tol, out.splitting_c, out.intrinsic_l);
    const double dphi = 0.5 * (t12.n_part + t21.n_part);
    if (dphi < tol) {
      ++out.skipped;
      continue;
    }
    ++out.samples;
    const double r = t12.full / dphi;
    out.c_low = std::min(out.c_low, r);
    out.c_high = std::max(out.c_high, r);
    out.value_lipschitz = std::max(out.value_lipschitz, G.distance(g1.value, g2.value) / dphi);
  }
  if (out.samples == 0) {
    throw DegenerateSample("graph_equivalence_constants: every pair was degenerate");
  }
  out.low_bound = out.splitting_c > 0.0 ? 1.0 / out.splitting_c : 0.0;
  out.high_bound = 2.0 * (1.0 + out.intrinsic_l);
  out.doubled_low_holds = out.c_low >= 2.0 * out.low_bound;
  out.unit_high_holds = out.c_high <= 1.0 + out.intrinsic_l;
  return out;
}

double normal_case_identity(const IntrinsicMap& phi, std::span<const BasePair> pairs) {
  const auto& s = phi.splitting();
  if (!s.h_normal()) throw WrongNormalSide("normal_case_identity: needs a normal codomain subgroup");
  double worst = 0.0;
  for (const auto& [m, k] : pairs) {
    worst = std::max(worst, std::abs(quasi_distance(phi, m, k) - s.group().distance(m, k)));
  }
  return worst;
}

}  // namespace intrinlip
