#include "intrinlip/subgroup_graphs.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "intrinlip/errors.hpp"

namespace intrinlip {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Chart residual of π_H(x) against φ(π_N(x)); +inf when π_N(x) ∉ E.
double off_graph_residual(const IntrinsicMap& phi, const Element& x) {
  const auto& s = phi.splitting();
  const Element k = s.project_n(x);
  if (!phi.contains(k)) return kInf;
  return s.group().chart_residual(s.project_h(x), phi(k));
}

}  // namespace

ClosureResult subgroup_closure_check(const IntrinsicMap& phi, std::span<const BasePair> pairs,
                                     double tol) {
  const auto& G = phi.splitting().group();
  ClosureResult out;
  for (const auto& [n, m] : pairs) {
    const Element a = graphing_map(phi, n).point;
    const Element b = graphing_map(phi, m).point;
    for (const Element& x : {G.multiply(a, b), G.inverse(a)}) {
      ++out.checked;
      const double r = off_graph_residual(phi, x);
      if (r > out.residual) {
        out.residual = r;
        if (r > tol) out.witness = x;
      }
    }
  }
  out.closed = out.residual <= tol;
  return out;
}

double IdentityResidualReport::max_residual() const {
  double worst = closure_residual;
  for (const auto& [id, r] : residuals) worst = std::max(worst, r);
  return worst;
}

IdentityResidualReport identity_residuals(const IntrinsicMap& phi,
                                          std::span<const BasePair> pairs, double tol) {
  const ClosureResult closure = subgroup_closure_check(phi, pairs, tol);
  if (!closure.closed) {
    throw NotASubgroup("identity_residuals: the graph is not closed on the sample (residual " +
                       std::to_string(closure.residual) + ")");
  }
  const auto& s = phi.splitting();
  const auto& G = s.group();
  auto mul = [&G](std::initializer_list<Element> xs) {
    Element out = G.identity();
    for (const auto& x : xs) out = G.multiply(out, x);
    return out;
  };
  auto inv = [&G](const Element& x) { return G.inverse(x); };
  auto conj = [&G](const Element& g, const Element& x) { return conjugate(G, g, x); };

  IdentityResidualReport report;
  report.closure_residual = closure.residual;
  report.pairs = pairs.size();
  auto record = [&](const std::string& id, const Element& lhs, const Element& rhs) {
    double& r = report.residuals[id];
    r = std::max(r, G.chart_residual(lhs, rhs));
  };
  // Identities of the form φ(arg) = rhs; skipped when arg ∉ E.
  auto record_map = [&](const std::string& id, const Element& arg,
                        const std::function<Element()>& rhs) {
    report.residuals.try_emplace(id, 0.0);
    if (!phi.contains(arg)) {
      ++report.skipped[id];
      return;
    }
    record(id, phi(arg), rhs());
  };

  for (const auto& [n, m] : pairs) {
    const Element fn = phi(n);
    const Element fm = phi(m);
    const Element Pn = mul({n, fn});
    const Element Pm = mul({m, fm});
    if (s.n_normal()) {
      record("N1", mul({inv(Pn), Pm}), mul({conj(inv(fn), mul({inv(n), m})), inv(fn), fm}));
      record("N2", mul({Pn, inv(Pm)}), mul({n, conj(mul({fn, inv(fm)}), inv(m)), fn, inv(fm)}));
      record("N3", mul({Pn, Pm}), mul({n, conj(fn, m), fn, fm}));
      record("N4", inv(mul({Pn, Pm})),
             mul({conj(inv(fm), inv(m)), conj(inv(mul({fn, fm})), inv(n)), inv(mul({fn, fm}))}));
      {
        const Element inner = conj(inv(fn), m);
        report.residuals.try_emplace("N5", 0.0);
        if (phi.contains(mul({n, m})) && phi.contains(inner)) {
          record("N5", phi(mul({n, m})), mul({fn, phi(inner)}));
        } else {
          ++report.skipped["N5"];
        }
      }
      record_map("Na", conj(inv(fn), mul({inv(n), m})), [&] { return mul({inv(fn), fm}); });
      record_map("Nb", mul({n, conj(mul({fn, inv(fm)}), inv(m))}),
                 [&] { return mul({fn, inv(fm)}); });
      record_map("Nc", mul({n, conj(fn, m)}), [&] { return mul({fn, fm}); });
      record_map("Nd", mul({conj(inv(fm), inv(m)), conj(inv(mul({fn, fm})), inv(n))}),
                 [&] { return inv(mul({fn, fm})); });
    }
    if (s.h_normal()) {
      const Element nm = mul({n, m});
      record("H1", mul({inv(Pn), Pm}), mul({inv(n), m, conj(mul({inv(m), n}), inv(fn)), fm}));
      record("H2", mul({Pn, inv(Pm)}), mul({n, inv(m), conj(m, mul({fn, inv(fm)}))}));
      record("H3", mul({Pn, Pm}), mul({nm, conj(inv(m), fn), fm}));
      record("H4", inv(mul({Pn, Pm})), mul({inv(nm), conj(nm, inv(fm)), conj(n, inv(fn))}));
      record_map("Ha", mul({inv(n), m}),
                 [&] { return mul({conj(mul({inv(m), n}), inv(fn)), fm}); });
      record_map("Hb", mul({n, inv(m)}), [&] { return conj(m, mul({fn, inv(fm)})); });
      record_map("Hc", nm, [&] { return mul({conj(inv(m), fn), fm}); });
      record_map("Hd", inv(nm), [&] { return mul({conj(nm, inv(fm)), conj(n, inv(fn))}); });
    }
  }
  return report;
}

PowerBoundResult power_bound_check(const IntrinsicMap& phi, double C, int k,
                                   std::span<const Element> bases,
                                   std::span<const BasePair> pairs, double tol) {
  if (k < 1) throw InvalidSpec("power_bound_check: k >= 1");
  const ClosureResult closure = subgroup_closure_check(phi, pairs);
  if (!closure.closed) throw NotASubgroup("power_bound_check: the graph is not closed on the sample");
  const auto& G = phi.splitting().group();
  PowerBoundResult out;
  for (const auto& n : bases) {
    const double lhs = G.norm(phi(n));
    const double den = G.norm(G.power(n, k));
    if (lhs > C * den + tol * (1.0 + C * den)) {
      throw PremiseFailed("power_bound_check: d(1,phi(n)) exceeds C d(1,n^k)", n);
    }
    if (den > 0.0) out.premise_ratio = std::max(out.premise_ratio, lhs / den);
  }
  out.fssc = fssc_constant(phi, pairs).value;
  out.bound = C * k;
  out.holds = out.fssc <= out.bound + tol * (1.0 + out.bound);
  return out;
}

double unique_preimage_residual(const Splitting& s, std::span<const BasePair> pairs_nh) {
  const auto& G = s.group();
  double worst = 0.0;
  for (const auto& [n, h] : pairs_nh) {
    const Element m = s.project_n(G.multiply(G.inverse(h), n));
    worst = std::max(worst, G.chart_residual(s.project_n(G.multiply(h, m)), n));
  }
  return worst;
}

}  // namespace intrinlip
