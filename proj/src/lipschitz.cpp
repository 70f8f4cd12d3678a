#include "intrinlip/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intrinlip/errors.hpp"

namespace intrinlip {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerate = 1e-9;

// Running supremum of num/den: 0/0 is skipped, x/0 with x > 0 is +inf.
struct SupFold {
  double value = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::string sample;

  void add(double num, double den, double tol, const Element& where) {
    double r;
    if (den < tol) {
      if (num < tol) {
        ++skipped;
        return;
      }
      r = kInf;
    } else {
      r = num / den;
    }
    ++samples;
    if (sample.empty() || r > value) {
      value = std::max(value, r);
      sample = to_string(where);
    }
  }
};

LipschitzEstimate finish(ConditionId id, const SupFold& fold, const std::string& what) {
  if (fold.samples == 0) throw DegenerateSample(what + ": every sample was degenerate");
  return {id, fold.value, fold.samples, fold.skipped, fold.sample};
}

}  // namespace

std::string to_string(ConditionId id) {
  switch (id) {
    case ConditionId::Fssc: return "fssc";
    case ConditionId::C1: return "c1";
    case ConditionId::C2: return "c2";
    case ConditionId::C3: return "c3";
    case ConditionId::C4: return "c4";
    case ConditionId::C5: return "c5";
    case ConditionId::C6: return "c6";
  }
  return "?";
}

std::vector<BasePair> sample_domain_pairs(const IntrinsicMap& phi, const SampleBox& box,
                                          std::size_t count, std::uint64_t seed) {
  const auto points = sample_domain(phi, box, 2 * count, seed);
  std::vector<BasePair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(points[2 * i], points[2 * i + 1]);
  return out;
}

std::vector<BasePair> enumerate_domain_pairs(const IntrinsicMap& phi) {
  const auto domain = phi.domain_elements();
  std::vector<BasePair> out;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = 0; j < domain.size(); ++j) {
      if (i != j) out.emplace_back(domain[i], domain[j]);
    }
  }
  return out;
}

LipschitzEstimate fssc_constant(const IntrinsicMap& phi, std::span<const BasePair> pairs,
                                double tol) {
  const auto& s = phi.splitting();
  const auto& G = s.group();
  SupFold fold;
  for (const auto& [a, b] : pairs) {
    const Element x = G.multiply(G.inverse(graphing_map(phi, a).point), graphing_map(phi, b).point);
    fold.add(G.norm(s.project_h(x)), G.norm(s.project_n(x)), tol, x);
  }
  return finish(ConditionId::Fssc, fold, "fssc_constant");
}

LipschitzEstimate condition_constant(const IntrinsicMap& phi, ConditionId id, const Element& m,
                                     std::span<const Element> offsets,
                                     const ConditionOptions& options) {
  if (id == ConditionId::Fssc) throw InvalidSpec("condition_constant: use fssc_constant");
  const auto& s = phi.splitting();
  const auto& G = s.group();
  const GraphPoint base = graphing_map(phi, m);
  const Element& p = base.point;
  const Element p_inv = G.inverse(p);
  const IntrinsicMap psi = translate_map(phi, p_inv);
  const double tol = options.tol;

  SupFold fold;
  bool separated = true;
  for (const auto& n : offsets) {
    const Element n_prime = s.project_n(G.multiply(p, n));
    if (!phi.contains(n_prime)) {
      ++fold.skipped;
      continue;
    }
    const GraphPoint q = graphing_map(phi, n_prime);
    switch (id) {
      case ConditionId::C1:
        fold.add(G.norm(psi(n)), G.norm(n), tol, n);
        break;
      case ConditionId::C2:
        fold.add(G.distance(base.value, q.value),
                 G.norm(s.project_n(G.multiply(p_inv, q.point))), tol, n);
        break;
      case ConditionId::C3:
        fold.add(G.distance(phi(s.project_n(p)), phi(n_prime)), G.norm(n), tol, n);
        break;
      case ConditionId::C4: {
        const Element on_graph = G.multiply(n, psi(n));
        fold.add(G.norm(on_graph), G.norm(s.project_n(on_graph)), tol, n);
        break;
      }
      case ConditionId::C5:
        fold.add(G.distance(p, q.point), G.norm(s.project_n(G.multiply(p_inv, q.point))), tol, n);
        break;
      case ConditionId::C6: {
        const Element x = G.multiply(p_inv, q.point);
        if (options.exclude_vertex && G.norm(x) <= tol) {
          ++fold.skipped;
          break;
        }
        ++fold.samples;
        if (separated && minimal_opening(s, ConeFamily::SplitLeft, ConeHalf::Full, {}, x) <=
                             options.opening) {
          separated = false;
          fold.sample = to_string(q.point);
        }
        break;
      }
      case ConditionId::Fssc: break;
    }
  }
  if (id == ConditionId::C6) {
    fold.value = separated ? 0.0 : kInf;
  }
  return finish(id, fold, "condition " + to_string(id));
}

SeparationResult cone_separation_test(const IntrinsicMap& phi, const Element& m, double L,
                                      ConeFamily family, std::span<const Element> bases,
                                      const SeparationOptions& options) {
  const auto& s = phi.splitting();
  const auto& G = s.group();
  const Element p = graphing_map(phi, m).point;
  const Element p_inv = G.inverse(p);
  const bool axis = family == ConeFamily::Axis || family == ConeFamily::AxisStrict;
  if (!axis && family != ConeFamily::SplitLeft) {
    throw InvalidSpec("cone_separation_test: SplitLeft or axis families");
  }
  const double threshold = axis ? options.axis_threshold.value_or((options.k + 1.0) * L) : L;
  SeparationResult out;
  out.tested_opening = 1.0 / threshold;
  // Split family: the open cone for the strict test, the closed one with closed_at_L.
  // Axis family: closed for Axis, open for AxisStrict. The computed subgroup
  // distance never undercuts the true one, so every reported witness is genuine.
  const bool closed = axis ? family == ConeFamily::Axis : options.closed_at_L;
  double deepest = -1.0;
  for (const auto& k : bases) {
    if (!phi.contains(k)) continue;
    const Element x = G.multiply(p_inv, graphing_map(phi, k).point);
    ++out.checked;
    if (!options.include_vertex && G.norm(x) <= kDegenerate) continue;
    const double a = minimal_opening(s, family, ConeHalf::Full, {}, x, options.search);
    const bool inside = closed ? a <= out.tested_opening : a < out.tested_opening;
    if (!inside) continue;
    out.separated = false;
    const double depth = a == 0.0 ? kInf : out.tested_opening / a;
    if (depth > deepest) {
      deepest = depth;
      out.witness = G.multiply(p, x);
      out.witness_opening = a;
    }
  }
  return out;
}

HalfconeResult halfcone_graph_test(const IntrinsicMap& phi, double L,
                                   std::span<const Element> bases,
                                   std::size_t points_per_base, std::uint64_t seed,
                                   const SampleBox& box, double tol) {
  const auto& s = phi.splitting();
  if (!s.has_axis()) throw AxisMissing("halfcone_graph_test: no one-dimensional axis");
  const auto& G = s.group();
  const double opening = 1.0 / L;
  HaltonSequence seq(split_cone_sample_dim(s), seed);
  std::vector<double> u(static_cast<std::size_t>(split_cone_sample_dim(s)));
  HalfconeResult out;
  for (const auto& m : bases) {
    if (!phi.contains(m)) continue;
    const Element p = graphing_map(phi, m).point;
    for (std::size_t i = 0; i < points_per_base; ++i) {
      seq.next(u);
      for (ConeHalf half : {ConeHalf::Plus, ConeHalf::Minus}) {
        const Element g =
            G.multiply(p, sample_in_split_cone(s, ConeFamily::SplitLeft, half, opening, u, box));
        if (!phi.contains(s.project_n(g))) {
          ++out.skipped;
          continue;
        }
        ++out.checked;
        const GraphSide side = classify_point(phi, g, tol);
        const bool ok = side == GraphSide::Graph ||
                        side == (half == ConeHalf::Plus ? GraphSide::Supergraph : GraphSide::Subgraph);
        if (!ok && out.contained) {
          out.contained = false;
          out.witness = g;
          out.witness_vertex = p;
        }
      }
    }
  }
  return out;
}

ProjectionEstimate graph_projection_constant(const IntrinsicMap& phi, double alpha,
                                             const Element& m, double radius,
                                             std::span<const Element> offsets) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidSpec("graph_projection_constant: need 0 <= alpha < 1");
  const auto& s = phi.splitting();
  const auto& G = s.group();
  const IntrinsicMap psi = translate_map(phi, G.inverse(graphing_map(phi, m).point));
  ProjectionEstimate out;
  out.bound = alpha / (1.0 - alpha);
  for (const auto& n : offsets) {
    if (!psi.contains(n)) {
      ++out.skipped;
      continue;
    }
    const Element x = G.multiply(n, psi(n));
    const double d = G.norm(x);
    if (d == 0.0 || d > radius) {
      ++out.skipped;
      continue;
    }
    ++out.samples;
    out.value = std::max(out.value, G.norm(s.project_h(x)) / d);
  }
  if (out.samples == 0) throw DegenerateSample("graph_projection_constant: no sample in the ball");
  return out;
}

namespace {

// sup of d(φ(a), φ(b)) / d(1, π_N(Φ(a)⁻¹Φ(b))).
double condition_two_constant(const IntrinsicMap& phi, std::span<const BasePair> pairs,
                              double tol) {
  const auto& s = phi.splitting();
  const auto& G = s.group();
  SupFold fold;
  for (const auto& [a, b] : pairs) {
    const GraphPoint x = graphing_map(phi, a);
    const GraphPoint y = graphing_map(phi, b);
    fold.add(G.distance(x.value, y.value),
             G.norm(s.project_n(G.multiply(G.inverse(x.point), y.point))), tol, a);
  }
  if (fold.samples == 0) throw DegenerateSample("limit_stability_check: degenerate pairs");
  return fold.value;
}

}  // namespace

LimitResult limit_stability_check(std::span<const IntrinsicMap> sequence,
                                  const IntrinsicMap& limit, double L,
                                  std::span<const BasePair> pairs, double tol) {
  if (sequence.empty()) throw InvalidSpec("limit_stability_check: empty sequence");
  const auto& G = limit.splitting().group();
  LimitResult out;
  for (const auto& [a, b] : pairs) {
    for (const auto* n : {&a, &b}) {
      out.convergence_gap =
          std::max(out.convergence_gap, G.distance(sequence.back()(*n), limit(*n)));
    }
  }
  if (out.convergence_gap > tol) {
    throw NotConverged("limit_stability_check: last term is " +
                       std::to_string(out.convergence_gap) + " away from the limit");
  }
  const double slack = tol * (1.0 + L);
  out.certified = true;
  for (const auto& phi : sequence) {
    const double c = condition_two_constant(phi, pairs, kDegenerate);
    out.sequence_constant = std::max(out.sequence_constant, c);
    out.certified = out.certified && c <= L + slack;
  }
  out.limit_constant = condition_two_constant(limit, pairs, kDegenerate);
  out.holds = out.limit_constant <= L + slack;
  return out;
}

MetricVsIntrinsic metric_vs_intrinsic(const IntrinsicMap& phi, std::span<const BasePair> pairs,
                                      double tol) {
  const auto& s = phi.splitting();
  if (!s.h_normal()) {
    throw WrongNormalSide("metric_vs_intrinsic: needs a normal codomain subgroup");
  }
  const auto& G = s.group();
  MetricVsIntrinsic out;
  out.worst_metric_excess = -kInf;
  out.worst_intrinsic_excess = -kInf;
  for (const auto& [a, b] : pairs) {
    const Element pa = graphing_map(phi, a).point;
    const Element pb = graphing_map(phi, b).point;
    const Element x = G.multiply(G.inverse(pa), pb);
    const double dn = G.norm(s.project_n(x));
    const double dab = G.distance(a, b);
    if (dn < tol || dab < tol) {
      ++out.skipped;
      continue;
    }
    ++out.samples;
    const double intrinsic = G.norm(s.project_h(x)) / dn;
    const double metric = G.norm(x) / dab;
    out.intrinsic = std::max(out.intrinsic, intrinsic);
    out.metric = std::max(out.metric, metric);
    out.worst_metric_excess = std::max(out.worst_metric_excess, metric - 1.0 - intrinsic);
    out.worst_intrinsic_excess = std::max(out.worst_intrinsic_excess, intrinsic - 1.0 - metric);
  }
  if (out.samples == 0) throw DegenerateSample("metric_vs_intrinsic: every pair was degenerate");
  return out;
}

}  // namespace intrinlip
