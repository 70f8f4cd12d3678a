#include "intrinlip/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include <json.hpp>

#include "intrinlip/cones.hpp"
#include "intrinlip/errors.hpp"
#include "intrinlip/group.hpp"
#include "intrinlip/intrinsic_map.hpp"
#include "intrinlip/lipschitz.hpp"
#include "intrinlip/quasi_distance.hpp"
#include "intrinlip/subgroup_graphs.hpp"
#include "intrinlip/zoo.hpp"

namespace intrinlip {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using SplittingPtr = std::shared_ptr<const Splitting>;

std::uint64_t derive_seed(std::uint64_t base, std::string_view id) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h ^ (base * 0x9e3779b97f4a7c15ull);
}

SampleBox make_box(const Splitting& s, const std::optional<std::string>& box) {
  const int dim = s.group().dimension();
  return box ? SampleBox::parse(*box, dim) : SampleBox::uniform(dim, -1.0, 1.0);
}

double relative_tol(double tau, double x) { return tau * (1.0 + std::abs(x)); }

// Chart distance of x from the coordinate subspace of N (resp. H).
double off_n(const Splitting& s, const Element& x) {
  return s.group().chart_residual(x, s.n_element(s.n_chart(x)));
}
double off_h(const Splitting& s, const Element& x) {
  return s.group().chart_residual(x, s.h_element(s.h_chart(x)));
}

struct Samples {
  const Splitting& s;
  const SampleBox& box;
  bool exhaustive;

  std::vector<Element> g(std::size_t count, std::uint64_t seed) const {
    if (exhaustive && s.group().is_finite()) return s.group().elements();
    return draw(count, seed, s.g_sample_dim(),
                [&](std::span<const double> u) { return s.sample_g(u, box); });
  }
  std::vector<Element> n(std::size_t count, std::uint64_t seed) const {
    if (exhaustive && s.group().is_finite()) return s.n_elements();
    return draw(count, seed, s.n_sample_dim(),
                [&](std::span<const double> u) { return s.sample_n(u, box); });
  }
  std::vector<Element> h(std::size_t count, std::uint64_t seed) const {
    if (exhaustive && s.group().is_finite()) return s.h_elements();
    return draw(count, seed, s.h_sample_dim(),
                [&](std::span<const double> u) { return s.sample_h(u, box); });
  }

  static std::vector<Element> draw(std::size_t count, std::uint64_t seed, int dim,
                                   const std::function<Element(std::span<const double>)>& f) {
    HaltonSequence seq(dim, seed);
    std::vector<double> u(static_cast<std::size_t>(dim));
    std::vector<Element> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      seq.next(u);
      out.push_back(f(u));
    }
    return out;
  }
};

struct Suite {
  const SuiteOptions& opt;
  SplittingPtr s;
  SampleBox box;
  Samples sampler;
  std::vector<CheckRecord>& out;

  Suite(const SuiteOptions& o, SplittingPtr sp, std::vector<CheckRecord>& records)
      : opt(o), s(std::move(sp)), box(make_box(*s, o.box)), sampler{*s, box, o.exhaustive},
        out(records) {}

  const MetricGroup& G() const { return s->group(); }
  bool finite() const { return G().is_finite(); }
  bool exhaustive() const { return opt.exhaustive && finite(); }
  std::size_t n() const { return opt.samples; }
  std::uint64_t seed(std::string_view id) const { return derive_seed(opt.seed, id); }

  CheckRecord& add(std::string id, std::string anchor) {
    CheckRecord r;
    r.check_id = std::move(id);
    r.anchor = std::move(anchor);
    out.push_back(std::move(r));
    return out.back();
  }

  std::vector<std::string> maps() const {
    if (opt.map) return {*opt.map};
    return shipped_map_specs(*s);
  }

  /// Domain points; exhaustive finite runs use all of E.
  std::vector<Element> domain(const IntrinsicMap& phi, std::size_t count,
                              std::uint64_t sd) const {
    if (exhaustive()) return phi.domain_elements();
    return sample_domain(phi, box, count, sd);
  }
  std::vector<BasePair> pairs(const IntrinsicMap& phi, std::size_t count,
                              std::uint64_t sd) const {
    if (exhaustive()) return enumerate_domain_pairs(phi);
    return sample_domain_pairs(phi, box, count, sd);
  }
};

std::string tagged(const std::string& id, const std::string& map) { return id + "[" + map + "]"; }

// -- group ---------------------------------------------------------------------

void run_group(Suite& S) {
  const auto& s = *S.s;
  const auto& G = S.G();
  const auto tol = S.opt.tol;
  const Element e = G.identity();

  {
    auto& r = S.add("group.identity_inverse", "identity laws and inverse round trip");
    for (const auto& g : S.sampler.g(S.n(), S.seed(r.check_id))) {
      double res = std::max({G.chart_residual(G.multiply(g, e), g),
                             G.chart_residual(G.multiply(e, g), g),
                             G.chart_residual(G.inverse(G.inverse(g)), g),
                             G.chart_residual(G.multiply(g, G.inverse(g)), e)});
      if (S.finite() && res != 0.0) res = kInf;
      r.observe(res - (S.finite() ? 0.0 : tol.exact));
    }
  }
  {
    auto& r = S.add("group.metric_axioms", "zero diagonal and symmetry of the distance");
    const auto a = S.sampler.g(S.n(), S.seed(r.check_id));
    const auto b = S.sampler.g(S.n(), S.seed(r.check_id + "b"));
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double res = std::max(std::abs(G.distance(a[i], a[i])),
                                  std::abs(G.distance(a[i], b[i]) - G.distance(b[i], a[i])));
      r.observe(res - tol.metric);
    }
  }
  {
    auto& r = S.add("group.left_invariance", "d(pg,pq) = d(g,q)");
    const std::size_t count = S.exhaustive() ? 0 : S.n();
    const auto a = S.sampler.g(count, S.seed(r.check_id + "a"));
    const auto b = S.sampler.g(count, S.seed(r.check_id + "b"));
    const auto c = S.sampler.g(count, S.seed(r.check_id + "c"));
    if (S.exhaustive()) {
      for (const auto& p : a)
        for (const auto& g : a)
          for (const auto& q : a)
            r.observe(std::abs(G.distance(G.multiply(p, g), G.multiply(p, q)) - G.distance(g, q)));
    } else {
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double res = std::abs(G.distance(G.multiply(c[i], a[i]), G.multiply(c[i], b[i])) -
                                    G.distance(a[i], b[i]));
        r.observe(res - tol.metric);
      }
    }
  }
  {
    auto& r = S.add("group.decomposition", "g = n h with n in N, h in H");
    for (const auto& g : S.sampler.g(S.n(), S.seed(r.check_id))) {
      try {
        const auto d = decompose(s, g, tol.exact);
        const double res = std::max({G.chart_residual(G.multiply(d.n, d.h), g), off_n(s, d.n),
                                     off_h(s, d.h)});
        r.observe(res - tol.exact);
      } catch (const DecompositionFailure&) {
        r.observe(kInf);
      }
    }
  }
  {
    auto& r = S.add("group.trivial_intersection", "an element of N lying in H is the identity");
    for (const auto& n : S.sampler.n(S.n(), S.seed(r.check_id))) {
      r.observe(s.in_h(n, tol.exact) ? G.norm(n) - tol.exact : -tol.exact);
    }
  }
  if (s.n_normal()) {
    auto& r = S.add("group.projection_homomorphism", "pi_H(g g') = pi_H(g) pi_H(g')");
    const auto a = S.sampler.g(S.n(), S.seed(r.check_id + "a"));
    const auto b = S.sampler.g(S.n(), S.seed(r.check_id + "b"));
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double res = G.chart_residual(s.project_h(G.multiply(a[i], b[i])),
                                          G.multiply(s.project_h(a[i]), s.project_h(b[i])));
      r.observe(res - tol.exact);
    }
  }
  {
    auto& r = S.add("group.normal_conjugation", "conjugates of the normal factor stay in it");
    const auto g = S.sampler.g(S.n(), S.seed(r.check_id + "g"));
    const auto n = S.sampler.n(S.n(), S.seed(r.check_id + "n"));
    const auto h = S.sampler.h(S.n(), S.seed(r.check_id + "h"));
    for (std::size_t i = 0; i < std::min(g.size(), std::max(n.size(), h.size())); ++i) {
      double res = 0.0;
      if (s.n_normal() && !n.empty()) res = std::max(res, off_n(s, conjugate(G, g[i], n[i % n.size()])));
      if (s.h_normal() && !h.empty()) res = std::max(res, off_h(s, conjugate(G, g[i], h[i % h.size()])));
      r.observe(res - tol.exact);
    }
  }
  {
    auto& r = S.add("group.splitting_constants",
                    "five splitting ratios finite, single-term suprema below the sum-term supremum");
    const auto c = estimate_splitting_constants(s, S.box, S.n(), S.seed(r.check_id), S.opt.exhaustive,
                                                tol.exact);
    for (int i = 0; i < 5; ++i) {
      r.constants["C" + std::to_string(i + 1)] = c.c[static_cast<std::size_t>(i)];
      r.skipped += c.skipped[static_cast<std::size_t>(i)];
    }
    double margin = std::max(c.c3() - c.c2(), c.c4() - c.c2());
    for (double v : c.c) {
      if (!std::isfinite(v)) margin = kInf;
    }
    r.observe(margin > 0.0 ? margin : -1.0);
    r.samples = c.samples;
  }
}

// -- zoo -----------------------------------------------------------------------

void run_zoo(Suite& S) {
  const auto& s = *S.s;
  const auto& G = S.G();
  const auto tol = S.opt.tol;
  {
    auto& r = S.add("zoo.inverse_symmetry", "d(1,g) = d(1,g^-1)");
    for (const auto& g : S.sampler.g(S.n(), S.seed(r.check_id))) {
      const double diff = std::abs(G.norm(g) - G.norm(G.inverse(g)));
      r.observe(S.finite() ? (diff == 0.0 ? -1.0 : diff) : diff - tol.exact);
    }
  }
  {
    auto& r = S.add("zoo.triangle",
                    "triangle inequality; failures relabel the instance as a quasi-metric");
    const auto a = S.sampler.g(S.n(), S.seed(r.check_id + "a"));
    const auto b = S.sampler.g(S.n(), S.seed(r.check_id + "b"));
    const auto c = S.sampler.g(S.n(), S.seed(r.check_id + "c"));
    std::size_t failures = 0;
    double worst = -kInf;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double excess = G.distance(a[i], b[i]) - G.distance(a[i], c[i]) - G.distance(c[i], b[i]);
      worst = std::max(worst, excess);
      if (excess > tol.metric) ++failures;
      ++r.samples;
    }
    r.worst_margin = worst - tol.metric;
    r.constants["triangle_failures"] = static_cast<double>(failures);
    r.constants["quasi_metric_label"] = failures > 0 ? 1.0 : 0.0;
  }
  if (const auto* d = dynamic_cast<const DihedralGroup*>(&G)) {
    auto& r = S.add("zoo.word_metric", "word metric axioms over all element pairs and triples");
    const auto all = G.elements();
    for (const auto& x : all) {
      for (const auto& y : all) {
        const int dxy = word_metric_distance(*d, x, y);
        int bad = (dxy == 0) != (x == y) || dxy != word_metric_distance(*d, y, x);
        for (const auto& z : all) {
          bad += dxy > word_metric_distance(*d, x, z) + word_metric_distance(*d, z, y);
        }
        r.observe(bad ? 1.0 : -1.0);
      }
    }
    r.constants["symmetric_generators"] = d->table().symmetric_generators() ? 1.0 : 0.0;
  }
  if (s.has_axis()) {
    auto& r = S.add("zoo.geodesic_axis", "d(1,h(t)) = |t| and h(t)h(u) = h(t+u)");
    HaltonSequence seq(2, S.seed(r.check_id));
    for (std::size_t i = 0; i < S.n(); ++i) {
      const auto u = seq.next();
      const double t = 6.0 * u[0] - 3.0;
      const double v = 6.0 * u[1] - 3.0;
      const double res = std::max(std::abs(G.norm(s.axis_point(t)) - std::abs(t)),
                                  G.chart_residual(G.multiply(s.axis_point(t), s.axis_point(v)),
                                                   s.axis_point(t + v)));
      r.observe(res - tol.exact);
    }
  }
}

// -- translation ----------------------------------------------------------------

// All maps N -> H of a finite splitting, as tables.
std::vector<IntrinsicMap> all_total_maps(const SplittingPtr& s) {
  const auto ns = s->n_elements();
  const auto hs = s->h_elements();
  std::size_t total = 1;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    total *= hs.size();
    if (total > 4096) throw InvalidSpec("translation: too many maps to enumerate");
  }
  std::vector<IntrinsicMap> maps;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::pair<std::vector<double>, std::vector<double>>> rows;
    std::size_t c = code;
    for (const auto& n : ns) {
      rows.emplace_back(s->n_chart(n), s->h_chart(hs[c % hs.size()]));
      c /= hs.size();
    }
    maps.push_back(table_map(s, "enumerated:" + std::to_string(code), std::move(rows)));
  }
  return maps;
}

void run_translation_exhaustive(Suite& S) {
  const auto* d = dynamic_cast<const DihedralGroup*>(&S.G());
  if (!d) return;
  const auto& G = S.G();
  const auto maps = all_total_maps(S.s);
  const auto all = G.elements();
  const auto ns = S.s->n_elements();
  {
    auto& r = S.add("translation.identity_exhaustive",
                    "q Gamma_phi = Gamma_{phi_q} as sets, every q and every map N -> H");
    for (const auto& phi : maps) {
      for (const auto& q : all) {
        const IntrinsicMap phi_q = translate_map(phi, q);
        std::set<int> left;
        std::set<int> right;
        for (const auto& n : ns) {
          left.insert(d->index_of(G.multiply(q, graphing_map(phi, n).point)));
          if (phi_q.contains(n)) right.insert(d->index_of(graphing_map(phi_q, n).point));
        }
        r.observe(left == right ? -1.0 : 1.0);
      }
    }
    r.constants["maps"] = static_cast<double>(maps.size());
  }
  {
    auto& r = S.add("translation.composition_exhaustive",
                    "(phi_p)_q = phi_{qp} on every n, every p, q and every map N -> H");
    for (const auto& phi : maps) {
      for (const auto& p : all) {
        const IntrinsicMap phi_p = translate_map(phi, p);
        for (const auto& q : all) {
          const IntrinsicMap lhs = translate_map(phi_p, q);
          const IntrinsicMap rhs = translate_map(phi, G.multiply(q, p));
          for (const auto& n : ns) {
            const bool in_l = lhs.contains(n);
            bool ok = in_l == rhs.contains(n);
            if (ok && in_l) ok = d->index_of(lhs(n)) == d->index_of(rhs(n));
            r.observe(ok ? -1.0 : 1.0);
          }
        }
      }
    }
  }
}

void run_translation_map(Suite& S, const std::string& spec) {
  const auto& s = *S.s;
  const auto& G = S.G();
  const auto tol = S.opt.tol;
  const IntrinsicMap phi = parse_map_spec(S.s, spec);
  const double exact = S.finite() ? 0.0 : tol.exact;
  const std::size_t q_count = S.exhaustive() ? 0 : std::min<std::size_t>(100, std::max<std::size_t>(S.n() / 100, 1));
  const auto qs = S.exhaustive() ? G.elements() : S.sampler.g(q_count, S.seed(tagged("q", spec)));

  {
    auto& r = S.add(tagged("translation.identity", spec),
                    "q Gamma_phi lies on Gamma_{phi_q} and q^-1 Gamma_{phi_q} on Gamma_phi");
    const std::size_t per_q = std::max<std::size_t>(S.n() / std::max<std::size_t>(qs.size(), 1), 1);
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      const Element& q = qs[qi];
      const IntrinsicMap phi_q = translate_map(phi, q);
      const auto points = S.domain(phi, per_q, S.seed(r.check_id) + qi);
      for (const auto& n : points) {
        const Element x = G.multiply(q, graphing_map(phi, n).point);
        const Element k = s.project_n(x);
        if (!phi_q.contains(k)) {
          r.observe(kInf);
          continue;
        }
        r.observe(G.chart_residual(s.project_h(x), phi_q(k)) - exact);
      }
      for (const auto& k : S.sampler.n(per_q, S.seed(r.check_id + "k") + qi)) {
        if (!phi_q.contains(k)) {
          ++r.skipped;
          continue;
        }
        const Element y = G.multiply(G.inverse(q), graphing_map(phi_q, k).point);
        const Element m = s.project_n(y);
        if (!phi.contains(m)) {
          r.observe(kInf);
          continue;
        }
        r.observe(G.chart_residual(s.project_h(y), phi(m)) - exact);
      }
    }
  }
  {
    auto& r = S.add(tagged("translation.composition", spec), "(phi_p)_q = phi_{qp}");
    const std::size_t count = S.exhaustive() ? 0 : std::max<std::size_t>(S.n() / 10, 1);
    const auto ps = S.exhaustive() ? G.elements() : S.sampler.g(count, S.seed(r.check_id + "p"));
    const auto qq = S.exhaustive() ? G.elements() : S.sampler.g(count, S.seed(r.check_id + "q"));
    const auto ns = S.exhaustive() ? s.n_elements() : S.sampler.n(count, S.seed(r.check_id + "n"));
    auto one = [&](const Element& p, const Element& q, const Element& n) {
      const IntrinsicMap lhs = translate_map(translate_map(phi, p), q);
      const IntrinsicMap rhs = translate_map(phi, G.multiply(q, p));
      const bool in_l = lhs.contains(n);
      const bool in_r = rhs.contains(n);
      if (!in_l && !in_r) {
        ++r.skipped;
        return;
      }
      if (in_l != in_r) {
        // Domain membership may flip only on the boundary of E under rounding.
        r.observe(S.finite() ? kInf : -exact);
        if (!S.finite()) ++r.skipped;
        return;
      }
      r.observe(G.chart_residual(lhs(n), rhs(n)) - exact);
    };
    if (S.exhaustive()) {
      for (const auto& p : ps)
        for (const auto& q : qq)
          for (const auto& n : ns) one(p, q, n);
    } else {
      for (std::size_t i = 0; i < ps.size(); ++i) one(ps[i], qq[i], ns[i]);
    }
  }
  {
    auto& r = S.add(tagged("translation.unit_base", spec), "p on the graph gives phi_{p^-1}(1) = 1");
    for (const auto& m : S.domain(phi, std::max<std::size_t>(S.n() / 10, 1), S.seed(r.check_id))) {
      const Element p = graphing_map(phi, m).point;
      r.observe(G.chart_residual(translate_map(phi, G.inverse(p))(G.identity()), G.identity()) - exact);
    }
  }
  {
    auto& r = S.add(tagged("translation.graph_point", spec), "pi_N(Phi(n)) = n and pi_H(Phi(n)) = phi(n)");
    for (const auto& n : S.domain(phi, S.n(), S.seed(r.check_id))) {
      const GraphPoint gp = graphing_map(phi, n);
      r.observe(std::max(G.chart_residual(s.project_n(gp.point), n),
                         G.chart_residual(s.project_h(gp.point), gp.value)) - exact);
    }
  }
  {
    auto& r = S.add(tagged("translation.distance_bound", spec),
                    "the bound on dist(p, Gamma_phi) is attained at the graph point over pi_N(p)");
    const auto probes = S.domain(phi, 64, S.seed(r.check_id + "probe"));
    double worst_gap = -kInf;
    for (const auto& p : S.sampler.g(std::max<std::size_t>(S.n() / 10, 1), S.seed(r.check_id))) {
      if (!phi.contains(s.project_n(p))) {
        ++r.skipped;
        continue;
      }
      const DistanceBound b = graph_distance_bound(phi, p);
      double sampled_min = G.distance(p, b.witness.point);
      for (const auto& n : probes) sampled_min = std::min(sampled_min, G.distance(p, graphing_map(phi, n).point));
      worst_gap = std::max(worst_gap, sampled_min - b.bound);
      r.observe(std::abs(G.distance(p, b.witness.point) - b.bound) - (S.finite() ? 0.0 : tol.metric));
    }
    r.constants["worst_sampled_min_minus_bound"] = worst_gap;
  }
  if (s.has_axis() && !S.finite()) {
    auto& r = S.add(tagged("translation.boundary_approximation", spec),
                    "n h(f(n) -+ 1/k) lie at distance 1/k, below and above the graph");
    for (const auto& n : S.domain(phi, std::max<std::size_t>(S.n() / 10, 1), S.seed(r.check_id))) {
      const double f = phi.axis_value(n);
      const Element p = G.multiply(n, s.axis_point(f));
      for (int k : {1, 2, 3, 10, 100, 1000}) {
        const double step = 1.0 / k;
        const Element below = G.multiply(n, s.axis_point(f - step));
        const Element above = G.multiply(n, s.axis_point(f + step));
        double res = std::max(std::abs(G.distance(below, p) - step), std::abs(G.distance(above, p) - step));
        if (!phi.contains(s.project_n(below)) || classify_point(phi, below, tol.exact) != GraphSide::Subgraph ||
            classify_point(phi, above, tol.exact) != GraphSide::Supergraph) {
          res = kInf;
        }
        r.observe(res - tol.exact);
      }
    }
  }
}

void run_translation(Suite& S) {
  if (S.exhaustive()) run_translation_exhaustive(S);
  for (const auto& spec : S.maps()) run_translation_map(S, spec);
}

// -- cones -----------------------------------------------------------------------

// Uniform draws mixed with draws from the left and right split cones.
std::vector<Element> cone_probe_points(Suite& S, double left_opening, double right_opening,
                                       std::size_t count, std::uint64_t sd) {
  const auto& s = *S.s;
  if (S.exhaustive()) return S.G().elements();
  std::vector<Element> out = S.sampler.g(count / 3, sd);
  HaltonSequence seq(split_cone_sample_dim(s), sd + 1);
  std::vector<double> u(static_cast<std::size_t>(split_cone_sample_dim(s)));
  for (std::size_t i = out.size(); i < count; ++i) {
    seq.next(u);
    const bool left = i % 2 == 0;
    out.push_back(sample_in_split_cone(s, left ? ConeFamily::SplitLeft : ConeFamily::SplitRight,
                                       ConeHalf::Full, left ? left_opening : right_opening, u, S.box));
  }
  return out;
}

void run_cones(Suite& S) {
  const auto& s = *S.s;
  const auto& G = S.G();
  const auto tol = S.opt.tol;
  const double metric = S.finite() ? 0.0 : tol.metric;

  {
    auto& r = S.add("cones.monotonicity", "membership at a smaller opening implies membership at a larger one");
    HaltonSequence seq(2, S.seed(r.check_id + "alpha"));
    const auto pts = S.sampler.g(S.n(), S.seed(r.check_id));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto u = seq.next();
      const double a1 = 3.0 * u[0];
      const double a2 = a1 + 3.0 * u[1];
      std::vector<ConeFamily> families{ConeFamily::SplitLeft, ConeFamily::SplitRight};
      if (i % 10 == 0) {
        families.push_back(ConeFamily::Axis);
        families.push_back(ConeFamily::AxisStrict);
      }
      for (ConeFamily f : families) {
        const bool in1 = cone_contains(s, {f, ConeHalf::Full, a1, {}}, pts[i]);
        const bool in2 = cone_contains(s, {f, ConeHalf::Full, a2, {}}, pts[i]);
        r.observe(in1 && !in2 ? 1.0 : -1.0);
      }
    }
  }
  {
    auto& r = S.add("cones.inverse_symmetry", "g in the left cone iff g^-1 in the right cone, same opening");
    for (const auto& g : cone_probe_points(S, 1.0, 1.0, S.n(), S.seed(r.check_id))) {
      const double a = minimal_opening(s, ConeFamily::SplitLeft, ConeHalf::Full, {}, g);
      const double b = minimal_opening(s, ConeFamily::SplitRight, ConeHalf::Full, {}, G.inverse(g));
      double diff = (std::isinf(a) && std::isinf(b)) ? 0.0 : std::abs(a - b);
      if (std::isnan(diff)) diff = kInf;
      r.observe(S.finite() ? (diff == 0.0 ? -1.0 : 1.0) : diff - relative_tol(tol.exact, a));
    }
  }
  if (s.n_normal()) {
    for (double alpha : {0.0, 0.5, 1.0, 3.0}) {
      auto& r = S.add("cones.chain@" + std::to_string(alpha).substr(0, 3),
                      "left cone(a) within right cone(a+2) within left cone(a+4), any vertex");
      const std::size_t count = S.n();
      const auto pts = cone_probe_points(S, alpha, alpha + 2.0, count, S.seed(r.check_id));
      const auto vertices = S.exhaustive() ? G.elements() : S.sampler.g(count, S.seed(r.check_id + "v"));
      auto one = [&](const Element& p, const Element& x) {
        const Element g = G.multiply(p, x);
        const double al = minimal_opening(s, ConeFamily::SplitLeft, ConeHalf::Full, p, g);
        const double ar = minimal_opening(s, ConeFamily::SplitRight, ConeHalf::Full, p, g);
        double margin = -1.0;
        bool used = false;
        if (al <= alpha) {
          margin = std::max(margin, ar - (alpha + 2.0) - metric);
          used = true;
        }
        if (ar <= alpha + 2.0) {
          margin = std::max(margin, al - (alpha + 4.0) - metric);
          used = true;
        }
        if (used) r.observe(margin); else ++r.skipped;
      };
      if (S.exhaustive()) {
        for (const auto& p : vertices)
          for (const auto& x : pts) one(p, x);
      } else {
        for (std::size_t i = 0; i < pts.size(); ++i) one(vertices[i], pts[i]);
      }
    }
    {
      auto& r = S.add("cones.power", "g in C(a) gives g^k in C(k^2 + k(a-1)), k = 2, 3");
      for (const auto& g : cone_probe_points(S, 1.0, 1.0, S.n(), S.seed(r.check_id))) {
        const double a = minimal_opening(s, ConeFamily::SplitLeft, ConeHalf::Full, {}, g);
        if (!std::isfinite(a)) {
          ++r.skipped;
          continue;
        }
        for (int k : {2, 3}) {
          const double ak = minimal_opening(s, ConeFamily::SplitLeft, ConeHalf::Full, {}, G.power(g, k));
          const double bound = power_cone_bound(a, k);
          r.observe(ak - bound - relative_tol(metric, bound));
        }
      }
    }
    {
      auto& r = S.add("cones.comparison",
                      "axis cones and split cones nest with the constants derived from pi_H's Lipschitz constant");
      const auto c = estimate_splitting_constants(s, S.box, std::max<std::size_t>(S.n() / 10, 100), S.seed(r.check_id + "c"), S.opt.exhaustive,
                                                  tol.exact);
      const double C = std::max(c.c1(), c.c4());
      r.constants["C"] = C;
      const double slack = 2.0 * (S.finite() ? 0.0 : tol.inf);
      const std::size_t count = S.exhaustive() ? 0 : std::max<std::size_t>(S.n() / 2, 1);  // per opening
      std::size_t draw = 0;
      for (double frac : {0.1, 0.5}) {
        const double a1 = frac / (C + 1.0);
        const double b1 = a1 * (C + 1.0) / (1.0 - a1 * (C + 1.0));
        const double b2 = frac / C;
        const double a2 = b2 * C;
        const auto pts = cone_probe_points(S, 2.0 * b1, b2, count, S.seed(r.check_id) + draw++);
        for (const auto& g : pts) {
          const double dg = G.norm(g);
          const double dist = dist_to_subgroup(s, g);
          bool used = false;
          double margin = -1.0;
          if (dist <= a1 * dg) {
            margin = std::max(margin, G.norm(s.project_n(g)) - b1 * G.norm(s.project_h(g)) - slack);
            used = true;
          }
          if (G.norm(s.project_n(g)) <= b2 * G.norm(s.project_h(g))) {
            margin = std::max(margin, dist - a2 * dg - slack);
            used = true;
          }
          if (used) r.observe(margin); else ++r.skipped;
        }
      }
    }
  }
  if (s.has_axis() && s.n_normal() && !S.finite()) {
    auto& r = S.add("cones.halfcone_shift", "p h(t) C+(a) within p C+(a+2) for t > 0, mirrored for t < 0");
    HaltonSequence seq(split_cone_sample_dim(s) + 1, S.seed(r.check_id));
    std::vector<double> u(static_cast<std::size_t>(split_cone_sample_dim(s) + 1));
    const auto vertices = S.sampler.g(S.n(), S.seed(r.check_id + "v"));
    for (std::size_t i = 0; i < S.n(); ++i) {
      seq.next(u);
      const double alpha = 0.25 + 3.0 * u.back();
      const ConeHalf half = i % 2 == 0 ? ConeHalf::Plus : ConeHalf::Minus;
      const Element x = sample_in_split_cone(s, ConeFamily::SplitLeft, half, alpha,
                                             std::span<const double>(u).first(u.size() - 1), S.box);
      const double t = (half == ConeHalf::Plus ? 1.0 : -1.0) * (0.01 + 2.0 * u[0]);
      const Element& p = vertices[i];
      const Element g = G.multiply(G.multiply(p, s.axis_point(t)), x);
      const double a = minimal_opening(s, ConeFamily::SplitLeft, half, p, g);
      r.observe(a - (alpha + 2.0) - relative_tol(metric, alpha));
    }
  }
}

// -- lipschitz --------------------------------------------------------------------

std::vector<Element> base_points(Suite& S, const IntrinsicMap& phi, std::uint64_t sd) {
  if (S.finite()) return phi.domain_elements();
  std::vector<Element> out;
  if (phi.contains(S.G().identity())) out.push_back(S.G().identity());
  for (const auto& m : sample_domain(phi, S.box, 3, sd)) out.push_back(m);
  return out;
}

std::vector<Element> offsets_for(Suite& S, std::size_t count, std::uint64_t sd) {
  if (S.finite()) return S.s->n_elements();
  return S.sampler.n(count, sd);
}

void run_lipschitz_map(Suite& S, const std::string& spec) {
  const auto& s = *S.s;
  const auto& G = S.G();
  const auto tol = S.opt.tol;
  const IntrinsicMap phi = parse_map_spec(S.s, spec);
  const auto bases = base_points(S, phi, S.seed(tagged("bases", spec)));
  const std::size_t per_base = std::max<std::size_t>(S.n() / std::max<std::size_t>(bases.size(), 1), 2);
  auto sample_tol = [&](double x) { return S.finite() ? 0.0 : relative_tol(tol.sample, x); };
  const auto pairs = S.pairs(phi, S.n(), S.seed(tagged("pairs", spec)));

  double global_l = 0.0;
  {
    auto& r = S.add(tagged("lipschitz.fssc", spec), "graph-pair constant; matches the value-distance form on graph pairs");
    const auto est = fssc_constant(phi, pairs, tol.exact);
    global_l = est.value;
    r.constants["fssc"] = est.value;
    r.skipped = est.skipped;
    if (s.n_normal()) {
      double c2 = 0.0;
      for (const auto& [a, b] : pairs) {
        const GraphPoint x = graphing_map(phi, a);
        const GraphPoint y = graphing_map(phi, b);
        const double den = G.norm(s.project_n(G.multiply(G.inverse(x.point), y.point)));
        if (den >= tol.exact) c2 = std::max(c2, G.distance(x.value, y.value) / den);
      }
      r.constants["value_form"] = c2;
      r.observe(std::abs(c2 - est.value) - sample_tol(est.value));
    } else {
      r.observe(-1.0);
    }
    r.samples = est.samples;
  }

  if (s.n_normal()) {
    auto& r = S.add(tagged("lipschitz.conditions", spec),
                    "conditions 1-3 agree; condition 5 within 1 of condition 2 both ways; condition 4 at most 1 + condition 1");
    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
      const auto offsets = offsets_for(S, per_base, S.seed(r.check_id) + bi);
      std::array<double, 5> c{};
      std::size_t skipped = 0;
      bool degenerate = false;
      for (int id = 1; id <= 5; ++id) {
        try {
          const auto est = condition_constant(phi, static_cast<ConditionId>(id), bases[bi], offsets);
          c[static_cast<std::size_t>(id - 1)] = est.value;
          skipped = std::max(skipped, est.skipped);
        } catch (const DegenerateSample&) {
          degenerate = true;
        }
      }
      if (degenerate) {
        ++r.skipped;
        continue;
      }
      r.skipped += skipped;
      const double spread = std::max({c[0], c[1], c[2]}) - std::min({c[0], c[1], c[2]});
      double margin = spread - sample_tol(c[1]);
      margin = std::max(margin, c[4] - 1.0 - c[1] - sample_tol(c[1]));
      margin = std::max(margin, c[1] - 1.0 - c[4] - sample_tol(c[4]));
      margin = std::max(margin, c[3] - 1.0 - c[0] - sample_tol(c[0]));
      r.observe(margin);
      if (bi == 0) {
        for (int id = 1; id <= 5; ++id) r.constants["c" + std::to_string(id)] = c[static_cast<std::size_t>(id - 1)];
      }
    }
  }

  {
    auto& r = S.add(tagged("lipschitz.separation", spec),
                    "cone at 1/L' meets the graph only at the vertex exactly when L' exceeds the graph-pair constant");
    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
      const Element& m = bases[bi];
      const Element p = graphing_map(phi, m).point;
      std::vector<Element> graph_bases;
      std::vector<BasePair> local;
      for (const auto& n : offsets_for(S, per_base, S.seed(r.check_id) + bi)) {
        const Element k = s.project_n(G.multiply(p, n));
        if (!phi.contains(k)) continue;
        graph_bases.push_back(k);
        local.emplace_back(m, k);
      }
      double K;
      try {
        K = fssc_constant(phi, local, tol.exact).value;
      } catch (const DegenerateSample&) {
        ++r.skipped;
        continue;
      }
      if (!std::isfinite(K)) {
        ++r.skipped;
        continue;
      }
      const double above = K * (1.0 + 1e-9) + 1e-12;
      ConditionOptions closed;
      closed.opening = 1.0 / above;
      const auto c6 = condition_constant(phi, ConditionId::C6, m,
                                         offsets_for(S, per_base, S.seed(r.check_id) + bi), closed);
      const auto open = cone_separation_test(phi, m, above, ConeFamily::SplitLeft, graph_bases);
      double margin = (c6.value == 0.0 && open.separated) ? -1.0 : 1.0;
      if (c6.value != 0.0) r.constants["closed_witness_bases"] += 1.0;
      if (!open.separated) r.constants["open_witness_bases"] += 1.0;
      if (K > 0.0) {
        const auto below = cone_separation_test(phi, m, K * (1.0 - 1e-6), ConeFamily::SplitLeft, graph_bases);
        if (below.separated) {
          margin = 1.0;
          r.constants["missing_witness_bases"] += 1.0;
        }
      }
      r.observe(margin);
    }
    r.constants["fssc"] = global_l;
  }

  if (!S.finite()) {
    auto& r = S.add(tagged("lipschitz.axis_separation", spec),
                    "axis cone at 1/L' misses the graph once L' exceeds C5 (1 + L)");
    std::size_t printed_witnesses = 0;
    const std::size_t count = std::max<std::size_t>(per_base / 4, 8);
    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
      const Element& m = bases[bi];
      const Element p = graphing_map(phi, m).point;
      std::vector<Element> graph_bases;
      std::vector<BasePair> local;
      double c5 = 0.0;
      double c3 = 0.0;
      for (const auto& n : offsets_for(S, count, S.seed(r.check_id) + bi)) {
        const Element k = s.project_n(G.multiply(p, n));
        if (!phi.contains(k)) continue;
        const Element x = G.multiply(G.inverse(p), graphing_map(phi, k).point);
        const double dn = G.norm(s.project_n(x));
        const double dist = dist_to_subgroup(s, x);
        if (dist > 0.0) c5 = std::max(c5, dn / dist);
        if (G.norm(x) > 0.0) c3 = std::max(c3, dn / G.norm(x));
        graph_bases.push_back(k);
        local.emplace_back(m, k);
      }
      double L;
      try {
        L = fssc_constant(phi, local, tol.exact).value;
      } catch (const DegenerateSample&) {
        ++r.skipped;
        continue;
      }
      if (!std::isfinite(L) || L == 0.0) {
        ++r.skipped;
        continue;
      }
      SeparationOptions corrected;
      corrected.axis_threshold = c5 * (1.0 + L) * (1.0 + 1e-9);
      const auto res = cone_separation_test(phi, m, L, ConeFamily::Axis, graph_bases, corrected);
      r.observe(res.separated ? -1.0 : 1.0);
      SeparationOptions printed;
      printed.k = c3;
      if (!cone_separation_test(phi, m, L, ConeFamily::Axis, graph_bases, printed).separated) {
        ++printed_witnesses;
      }
    }
    r.constants["printed_threshold_witness_bases"] = static_cast<double>(printed_witnesses);
  }

  if (s.has_axis() && !S.finite()) {
    auto& r = S.add(tagged("lipschitz.halfcone", spec),
                    "a half-cone point on the wrong side of the graph comes with a graph point inside the cone");
    const double L = std::isfinite(global_l) && global_l > 0.0 ? global_l * (1.0 + 1e-6) : 1.0;
    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
      const auto res = halfcone_graph_test(phi, L, std::span<const Element>(&bases[bi], 1),
                                           std::max<std::size_t>(per_base / 2, 1), S.seed(r.check_id) + bi, S.box,
                                           tol.exact);
      r.skipped += res.skipped;
      if (res.contained) {
        r.observe(-1.0);
        continue;
      }
      SeparationOptions closed;
      closed.closed_at_L = true;
      const Element n = s.project_n(*res.witness);
      const auto sep = cone_separation_test(phi, bases[bi], L, ConeFamily::SplitLeft,
                                            std::span<const Element>(&n, 1), closed);
      r.observe(sep.separated ? 1.0 : -1.0);
      r.constants["uncontained_bases"] += 1.0;
    }
    r.constants["L"] = L;
  }

  {
    const Element& m = bases.front();
    const auto offsets = offsets_for(S, per_base, S.seed(tagged("projection", spec)));
    double alpha = global_l;
    try {
      alpha = std::max(alpha, condition_constant(phi, ConditionId::C1, m, offsets).value);
    } catch (const DegenerateSample&) {
    }
    if (alpha < 1.0) {
      auto& r = S.add(tagged("lipschitz.projection", spec),
                      "pi_H on the translated graph near 1 is alpha/(1-alpha)-Lipschitz at 1");
      const auto est = graph_projection_constant(phi, alpha, m, 2.0, offsets);
      r.constants["alpha"] = alpha;
      r.constants["value"] = est.value;
      r.constants["bound"] = est.bound;
      r.skipped = est.skipped;
      r.observe(est.value - est.bound - sample_tol(est.bound));
      r.samples = est.samples;
    }
  }

  if (!S.finite()) {
    auto& r = S.add(tagged("lipschitz.limit", spec),
                    "pointwise limit of uniformly Lipschitz maps keeps the constant");
    std::vector<IntrinsicMap> sequence;
    for (double h : {1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6, 1e8}) {
      std::vector<double> shift(static_cast<std::size_t>(s.h_dim()), 0.0);
      shift[0] = 1.0 / h;
      const Element c = s.h_element(shift);
      sequence.emplace_back(S.s, spec + "*shift", [phi, c, sp = S.s](const Element& n) {
        return sp->group().multiply(phi(n), c);
      }, [phi](const Element& n) { return phi.contains(n); });
    }
    std::vector<BasePair> limit_pairs(pairs.begin(), pairs.begin() + static_cast<long>(std::min<std::size_t>(pairs.size(), 1000)));
    double L = 0.0;
    for (const auto& f : sequence) {
      for (const auto& [a, b] : limit_pairs) {
        const GraphPoint x = graphing_map(f, a);
        const GraphPoint y = graphing_map(f, b);
        const double den = G.norm(s.project_n(G.multiply(G.inverse(x.point), y.point)));
        if (den >= 1e-9) L = std::max(L, G.distance(x.value, y.value) / den);
      }
    }
    try {
      const auto res = limit_stability_check(sequence, phi, L, limit_pairs, tol.sample);
      r.constants["sequence_constant"] = res.sequence_constant;
      r.constants["limit_constant"] = res.limit_constant;
      r.constants["convergence_gap"] = res.convergence_gap;
      r.observe(res.limit_constant - L - relative_tol(tol.sample, L));
      r.samples = limit_pairs.size();
    } catch (const DegenerateSample&) {
      ++r.skipped;
    }
  }

  if (s.h_normal()) {
    auto& r = S.add(tagged("lipschitz.metric_vs_intrinsic", spec),
                    "metric and intrinsic ratios of the graph map differ by at most 1 pointwise");
    const auto res = metric_vs_intrinsic(phi, pairs, tol.exact);
    r.constants["intrinsic"] = res.intrinsic;
    r.constants["metric"] = res.metric;
    r.skipped = res.skipped;
    r.observe(std::max(res.worst_metric_excess, res.worst_intrinsic_excess) - sample_tol(res.metric));
    r.samples = res.samples;
  }
}

void run_lipschitz(Suite& S) {
  for (const auto& spec : S.maps()) run_lipschitz_map(S, spec);
}

// -- quasi ---------------------------------------------------------------------------

void run_quasi_map(Suite& S, const std::string& spec) {
  const auto& s = *S.s;
  const auto tol = S.opt.tol;
  const IntrinsicMap phi = parse_map_spec(S.s, spec);
  const auto pairs = S.pairs(phi, S.n(), S.seed(tagged("pairs", spec)));
  const double box_c = estimate_splitting_constants(s, S.box, std::max<std::size_t>(S.n() / 10, 2),
                                                    S.seed(tagged("box_c", spec)), S.opt.exhaustive, tol.exact)
                           .c3();
  {
    auto& r = S.add(tagged("quasi.axioms", spec), "d_phi symmetric with zero diagonal");
    for (const auto& [a, b] : pairs) {
      r.observe(std::max(std::abs(quasi_distance(phi, a, b) - quasi_distance(phi, b, a)),
                         std::abs(quasi_distance(phi, a, a))) - (S.finite() ? 0.0 : tol.exact));
    }
  }
  {
    auto& r = S.add(tagged("quasi.triangle", spec), "quasi-triangle constant below C(1+L)");
    std::vector<BaseTriple> triples;
    if (S.exhaustive()) {
      const auto dom = phi.domain_elements();
      for (const auto& a : dom)
        for (const auto& b : dom)
          for (const auto& c : dom) triples.push_back({a, b, c});
    } else {
      const auto pts = sample_domain(phi, S.box, 3 * S.n(), S.seed(r.check_id));
      for (std::size_t i = 0; i + 2 < pts.size(); i += 3) triples.push_back({pts[i], pts[i + 1], pts[i + 2]});
    }
    const auto est = quasi_triangle_constant(phi, triples, box_c, tol.exact);
    r.constants["value"] = est.value;
    r.constants["C"] = est.splitting_c;
    r.constants["L"] = est.intrinsic_l;
    r.constants["bound"] = est.bound;
    r.skipped = est.skipped;
    r.observe(est.value - est.bound - 1e-6);
    r.samples = est.samples;
  }
  {
    auto& r = S.add(tagged("quasi.equivalence", spec), "d on the graph between d_phi/C and 2(1+L) d_phi");
    const auto eq = graph_equivalence_constants(phi, pairs, box_c, tol.exact);
    r.constants["c_low"] = eq.c_low;
    r.constants["c_high"] = eq.c_high;
    r.constants["low_bound"] = eq.low_bound;
    r.constants["high_bound"] = eq.high_bound;
    r.constants["doubled_low_holds"] = eq.doubled_low_holds;
    r.constants["unit_high_holds"] = eq.unit_high_holds;
    r.skipped = eq.skipped;
    r.observe(std::max(eq.low_bound - eq.c_low, eq.c_high - eq.high_bound) - 1e-6);
    r.samples = eq.samples;
    if (s.n_normal() && !s.h_normal()) {
      auto& v = S.add(tagged("quasi.value_lipschitz", spec), "d(phi(n),phi(m)) at most 2L d_phi(n,m)");
      v.constants["value"] = eq.value_lipschitz;
      v.constants["L"] = eq.intrinsic_l;
      v.observe(eq.value_lipschitz - 2.0 * eq.intrinsic_l - relative_tol(tol.sample, 2.0 * eq.intrinsic_l));
      v.samples = eq.samples;
    }
  }
  if (s.h_normal()) {
    auto& r = S.add(tagged("quasi.normal_identity", spec), "d_phi = d when the codomain is normal");
    const double res = normal_case_identity(phi, pairs);
    r.constants["residual"] = res;
    r.observe(res - tol.exact);
    r.samples = pairs.size();
  }
}

void run_quasi(Suite& S) {
  for (const auto& spec : S.maps()) run_quasi_map(S, spec);
}

// -- subgroup ------------------------------------------------------------------------

void run_subgroup_map(Suite& S, const std::string& spec) {
  const auto& s = *S.s;
  const auto& G = S.G();
  const auto tol = S.opt.tol;
  const IntrinsicMap phi = parse_map_spec(S.s, spec);
  auto pairs = S.pairs(phi, S.n(), S.seed(tagged("pairs", spec)));
  if (S.exhaustive()) {
    for (const auto& n : phi.domain_elements()) pairs.emplace_back(n, n);
  }
  const double exact = S.finite() ? 0.0 : tol.exact;
  const auto closure = subgroup_closure_check(phi, pairs, exact);
  {
    auto& r = S.add(tagged("subgroup.closure", spec), "whether the graph is closed under products and inverses");
    r.constants["closed"] = closure.closed;
    r.constants["residual"] = std::isfinite(closure.residual) ? closure.residual : -1.0;
    r.samples = closure.checked;
    r.worst_margin = -1.0;
  }
  if (closure.closed) {
    auto& r = S.add(tagged("subgroup.identities", spec), "product, inverse and value identities of subgroup graphs");
    const auto rep = identity_residuals(phi, pairs, exact);
    for (const auto& [id, v] : rep.residuals) r.constants[id] = v;
    for (const auto& [id, v] : rep.skipped) r.skipped += v;
    r.observe(rep.max_residual() - exact);
    r.samples = rep.pairs;

    auto& p = S.add(tagged("subgroup.power_bound", spec),
                    "d(1,phi(n)) <= C d(1,n^k) gives graph-pair constant at most C k");
    std::vector<Element> premise_points;
    for (const auto& [a, b] : pairs) {
      premise_points.push_back(a);
      premise_points.push_back(
          s.project_n(G.multiply(G.inverse(graphing_map(phi, a).point), graphing_map(phi, b).point)));
    }
    for (int k : {1, 2}) {
      double C = 0.0;
      bool finite_c = true;
      for (const auto& n : premise_points) {
        if (!phi.contains(n)) continue;
        const double num = G.norm(phi(n));
        const double den = G.norm(G.power(n, k));
        if (den > 0.0) C = std::max(C, num / den);
        else if (num > 0.0) finite_c = false;
      }
      std::vector<Element> in_domain;
      for (const auto& n : premise_points) if (phi.contains(n)) in_domain.push_back(n);
      if (!finite_c) {
        ++p.skipped;
        continue;
      }
      C *= 1.0 + tol.exact;
      try {
        const auto res = power_bound_check(phi, C, k, in_domain, pairs, S.finite() ? 1e-12 : tol.sample);
        p.constants["C_k" + std::to_string(k)] = C;
        p.constants["fssc"] = res.fssc;
        p.observe(res.holds ? -1.0 : res.fssc - res.bound);
      } catch (const PremiseFailed&) {
        p.observe(1.0);
      }
    }
  }
  {
    auto& r = S.add(tagged("subgroup.unique_preimage", spec), "pi_N(h pi_N(h^-1 n)) = n");
    const auto ns = S.sampler.n(S.n(), S.seed(r.check_id + "n"));
    const auto hs = S.sampler.h(S.n(), S.seed(r.check_id + "h"));
    std::vector<BasePair> nh;
    for (std::size_t i = 0; i < std::max(ns.size(), hs.size()); ++i) {
      nh.emplace_back(ns[i % ns.size()], hs[i % hs.size()]);
    }
    const double res = unique_preimage_residual(s, nh);
    r.constants["residual"] = res;
    r.observe(res - exact);
    r.samples = nh.size();
  }
}

void run_subgroup(Suite& S) {
  for (const auto& spec : S.maps()) run_subgroup_map(S, spec);
}

using Runner = void (*)(Suite&);

const std::vector<std::pair<std::string, Runner>>& runners() {
  static const std::vector<std::pair<std::string, Runner>> table{
      {"group", run_group},         {"zoo", run_zoo},   {"translation", run_translation},
      {"cones", run_cones},         {"lipschitz", run_lipschitz}, {"quasi", run_quasi},
      {"subgroup", run_subgroup},
  };
  return table;
}

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

nlohmann::ordered_json check_json(const CheckRecord& c) {
  nlohmann::ordered_json j;
  j["check_id"] = c.check_id;
  j["anchor"] = c.anchor;
  j["samples"] = c.samples;
  j["skipped"] = c.skipped;
  j["violations"] = c.violations;
  j["worst_margin"] = c.samples == 0 ? nlohmann::ordered_json(nullptr) : number(c.worst_margin);
  nlohmann::ordered_json constants = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.constants) constants[k] = number(v);
  j["constants"] = constants;
  return j;
}

nlohmann::ordered_json tolerances_json(const Tolerances& t) {
  return {{"exact", t.exact}, {"metric", t.metric}, {"inf", t.inf}, {"sample", t.sample}};
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, run] : runners()) out.push_back(name);
  out.emplace_back("all");
  return out;
}

SuiteReport run_suite(const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (options.samples == 0) throw InvalidSpec("--samples must be positive");
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), options.suite) == names.end()) {
    throw InvalidSpec("unknown suite '" + options.suite + "'");
  }
  SuiteReport report;
  report.options = options;
  auto splitting = instantiate_group(options.group);
  if (options.map) parse_map_spec(splitting, *options.map);
  Suite S(options, splitting, report.checks);
  for (const auto& [name, run] : runners()) {
    if (options.suite == "all" || options.suite == name) run(S);
  }
  for (const auto& c : report.checks) report.passed = report.passed && c.violations == 0;
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

CheckRecord estimate_constants(const EstimateOptions& o) {
  if (o.samples < 2) throw InvalidSpec("--samples must be at least 2");
  auto s = instantiate_group(o.group);
  const IntrinsicMap phi = parse_map_spec(s, o.map);
  const SampleBox box = make_box(*s, o.box);
  const bool exhaustive = o.exhaustive && s->group().is_finite();
  CheckRecord r;
  r.check_id = "estimate";
  r.anchor = "sampled constants of " + o.map + " on " + o.group;

  const auto pairs = exhaustive ? enumerate_domain_pairs(phi)
                                : sample_domain_pairs(phi, box, o.samples, derive_seed(o.seed, "pairs"));
  const auto fssc = fssc_constant(phi, pairs, o.tol.exact);
  r.constants["fssc"] = fssc.value;
  r.samples = fssc.samples;
  r.skipped = fssc.skipped;

  const Element m = phi.contains(s->group().identity())
                        ? s->group().identity()
                        : (exhaustive ? phi.domain_elements().front()
                                      : sample_domain(phi, box, 1, derive_seed(o.seed, "base")).front());
  const auto offsets = s->group().is_finite()
                           ? s->n_elements()
                           : Samples{*s, box, false}.n(o.samples, derive_seed(o.seed, "offsets"));
  for (int id = 1; id <= 5; ++id) {
    const auto cid = static_cast<ConditionId>(id);
    try {
      r.constants[to_string(cid)] = condition_constant(phi, cid, m, offsets).value;
    } catch (const DegenerateSample&) {
      r.constants[to_string(cid)] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  if (std::isfinite(fssc.value) && fssc.value > 0.0) {
    ConditionOptions c6;
    c6.opening = 1.0 / (fssc.value * (1.0 + 1e-9) + 1e-12);
    r.constants["c6_separated_above_fssc"] = condition_constant(phi, ConditionId::C6, m, offsets, c6).value == 0.0;
  }
  const auto c = estimate_splitting_constants(*s, box, o.samples, derive_seed(o.seed, "split"), exhaustive,
                                              o.tol.exact);
  for (int i = 0; i < 5; ++i) r.constants["split_C" + std::to_string(i + 1)] = c.c[static_cast<std::size_t>(i)];
  const auto eq = graph_equivalence_constants(phi, pairs, c.c3(), o.tol.exact);
  r.constants["quasi_c_low"] = eq.c_low;
  r.constants["quasi_c_high"] = eq.c_high;
  std::vector<BaseTriple> triples;
  for (std::size_t i = 0; i + 1 < pairs.size(); i += 2) {
    triples.push_back({pairs[i].first, pairs[i].second, pairs[i + 1].first});
  }
  if (!triples.empty()) {
    const auto qt = quasi_triangle_constant(phi, triples, c.c3(), o.tol.exact);
    r.constants["quasi_triangle"] = qt.value;
    r.constants["quasi_triangle_bound"] = qt.bound;
  }
  r.worst_margin = -1.0;
  return r;
}

void write_cone_sweep(std::ostream& out, const std::string& group, std::size_t samples,
                      std::uint64_t seed, const std::optional<std::string>& box_text) {
  if (samples == 0) throw InvalidSpec("--samples must be positive");
  auto s = instantiate_group(group);
  const SampleBox box = make_box(*s, box_text);
  const int dim = s->group().dimension();
  for (int i = 0; i < dim; ++i) out << "x" << i << ',';
  out << "axis,axis_strict,split_left,split_right\n";
  out.precision(17);
  Samples sampler{*s, box, false};
  for (const auto& g : sampler.g(samples, derive_seed(seed, "sweep"))) {
    for (double v : s->group().to_chart(g)) out << v << ',';
    const ConeFamily families[] = {ConeFamily::Axis, ConeFamily::AxisStrict, ConeFamily::SplitLeft,
                                   ConeFamily::SplitRight};
    for (std::size_t i = 0; i < 4; ++i) {
      out << minimal_opening(*s, families[i], ConeHalf::Full, {}, g) << (i == 3 ? '\n' : ',');
    }
  }
}

std::string report_json(const SuiteReport& report, int indent) {
  const auto& o = report.options;
  nlohmann::ordered_json j;
  j["suite"] = o.suite;
  j["group"] = o.group;
  j["map"] = o.map ? nlohmann::ordered_json(*o.map) : nlohmann::ordered_json(nullptr);
  j["seed"] = o.seed;
  j["samples"] = o.samples;
  j["exhaustive"] = o.exhaustive;
  j["box"] = o.box ? nlohmann::ordered_json(*o.box) : nlohmann::ordered_json(nullptr);
  j["tolerances"] = tolerances_json(o.tol);
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) checks.push_back(check_json(c));
  j["checks"] = checks;
  j["passed"] = report.passed;
  j["wall_time_s"] = report.wall_time_s;
  return j.dump(indent);
}

std::string estimate_json(const EstimateOptions& o, const CheckRecord& record, double wall_time_s,
                          int indent) {
  nlohmann::ordered_json j;
  j["suite"] = "estimate";
  j["group"] = o.group;
  j["map"] = o.map;
  j["seed"] = o.seed;
  j["samples"] = o.samples;
  j["exhaustive"] = o.exhaustive;
  j["box"] = o.box ? nlohmann::ordered_json(*o.box) : nlohmann::ordered_json(nullptr);
  j["tolerances"] = tolerances_json(o.tol);
  j["checks"] = nlohmann::ordered_json::array({check_json(record)});
  j["passed"] = true;
  j["wall_time_s"] = wall_time_s;
  return j.dump(indent);
}

}  // namespace intrinlip
