#include "intrinlip/group.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "intrinlip/errors.hpp"

namespace intrinlip {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498948482;

// Ratio with the shared degenerate-denominator convention: 0/0 is skipped
// (nullopt), x/0 with x > 0 is +inf.
std::optional<double> ratio(double num, double den, double tol) {
  if (den < tol) {
    if (num < tol) return std::nullopt;
    return kInf;
  }
  return num / den;
}

struct LineMin {
  double t;
  double f;
};

// Grid scan of f over [lo, hi] followed by golden-section refinement in the
// bracket around the best grid point.
template <class F>
LineMin minimize_on_line(const F& f, double lo, double hi, const SearchParams& search) {
  const int grid = std::max(search.grid, 3);
  LineMin best{lo, f(lo)};
  int best_i = 0;
  const double step = (hi - lo) / (grid - 1);
  for (int i = 1; i < grid; ++i) {
    const double t = lo + step * i;
    const double v = f(t);
    if (v < best.f) {
      best = {t, v};
      best_i = i;
    }
  }
  double a = lo + step * std::max(best_i - 1, 0);
  double b = lo + step * std::min(best_i + 1, grid - 1);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  const double width_tol = search.tol * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  int iter = 0;
  while (b - a > width_tol) {
    if (++iter > search.max_iter) {
      throw SearchBudgetExceeded("dist_to_subgroup: golden-section did not converge");
    }
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  if (fc < best.f) best = {c, fc};
  if (fd < best.f) best = {d, fd};
  return best;
}

}  // namespace

Element MetricGroup::power(const Element& g, int k) const {
  Element base = k < 0 ? inverse(g) : g;
  Element result = identity();
  for (int i = 0; i < std::abs(k); ++i) result = multiply(result, base);
  return result;
}

double MetricGroup::chart_residual(const Element& a, const Element& b) const {
  const auto ca = to_chart(a);
  const auto cb = to_chart(b);
  if (ca.size() != cb.size()) return kInf;
  double r = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) r = std::max(r, std::abs(ca[i] - cb[i]));
  return r;
}

Element conjugate(const MetricGroup& group, const Element& g, const Element& n) {
  return group.multiply(group.multiply(g, n), group.inverse(g));
}

std::string to_string(NormalSide side) {
  switch (side) {
    case NormalSide::N: return "N_normal";
    case NormalSide::H: return "H_normal";
    case NormalSide::Both: return "both_normal";
  }
  return "?";
}

Splitting::Splitting(std::shared_ptr<const MetricGroup> group, Layout layout)
    : group_(std::move(group)), layout_(std::move(layout)) {
  if (!group_) throw InvalidSpec("Splitting: null group");
  const int dim = group_->dimension();
  std::vector<bool> used(static_cast<std::size_t>(dim), false);
  for (const auto* coords : {&layout_.n_coords, &layout_.h_coords}) {
    for (int c : *coords) {
      if (c < 0 || c >= dim || used[static_cast<std::size_t>(c)]) {
        throw InvalidSpec("Splitting: coordinate layout is not a partition");
      }
      used[static_cast<std::size_t>(c)] = true;
    }
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw InvalidSpec("Splitting: coordinate layout is not a partition");
  }
}

Element Splitting::embed(const std::vector<int>& coords, std::span<const double> chart) const {
  if (chart.size() != coords.size()) throw InvalidSpec("Splitting: chart size mismatch");
  std::array<double, kMaxCoords> full{};
  for (std::size_t i = 0; i < coords.size(); ++i) {
    full[static_cast<std::size_t>(coords[i])] = chart[i];
  }
  return group_->from_chart(std::span<const double>(full.data(),
                                                    static_cast<std::size_t>(group_->dimension())));
}

Element Splitting::n_element(std::span<const double> chart) const {
  return embed(layout_.n_coords, chart);
}

Element Splitting::h_element(std::span<const double> chart) const {
  return embed(layout_.h_coords, chart);
}

std::vector<double> Splitting::n_chart(const Element& n) const {
  const auto full = group_->to_chart(n);
  std::vector<double> out;
  for (int c : layout_.n_coords) out.push_back(full[static_cast<std::size_t>(c)]);
  return out;
}

std::vector<double> Splitting::h_chart(const Element& h) const {
  const auto full = group_->to_chart(h);
  std::vector<double> out;
  for (int c : layout_.h_coords) out.push_back(full[static_cast<std::size_t>(c)]);
  return out;
}

Element Splitting::project_h(const Element& g) const {
  if (n_normal()) return h_element(h_chart(g));
  return group_->multiply(group_->inverse(project_n(g)), g);
}

Element Splitting::project_n(const Element& g) const {
  if (n_normal()) return group_->multiply(g, group_->inverse(project_h(g)));
  return n_element(n_chart(g));
}

bool Splitting::off_coords_vanish(const std::vector<int>& keep, const Element& g,
                                  double tol) const {
  const auto full = group_->to_chart(g);
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), static_cast<int>(i)) != keep.end()) continue;
    if (std::abs(full[i]) > tol) return false;
  }
  return true;
}

bool Splitting::in_n(const Element& g, double tol) const {
  return off_coords_vanish(layout_.n_coords, g, tol);
}

bool Splitting::in_h(const Element& g, double tol) const {
  return off_coords_vanish(layout_.h_coords, g, tol);
}

Element Splitting::axis_point(double t) const {
  if (!has_axis()) throw AxisMissing("splitting '" + name() + "' has no one-dimensional axis");
  const double chart[1] = {t};
  return h_element(chart);
}

double Splitting::axis_parameter(const Element& h) const {
  if (!has_axis()) throw AxisMissing("splitting '" + name() + "' has no one-dimensional axis");
  return h_chart(h)[0];
}

double Splitting::h_chart_radius(double r) const {
  return layout_.h_chart_radius ? layout_.h_chart_radius(r) : r;
}

std::vector<Element> Splitting::n_elements() const {
  std::vector<Element> out;
  for (const auto& g : group_->elements()) {
    if (in_n(g, 0.0)) out.push_back(g);
  }
  return out;
}

std::vector<Element> Splitting::h_elements() const {
  std::vector<Element> out;
  for (const auto& g : group_->elements()) {
    if (in_h(g, 0.0)) out.push_back(g);
  }
  return out;
}

namespace {

Element pick(const std::vector<Element>& elems, double u) {
  const auto size = elems.size();
  auto i = static_cast<std::size_t>(u * static_cast<double>(size));
  return elems[std::min(i, size - 1)];
}

}  // namespace

Element Splitting::sample_n(std::span<const double> unit, const SampleBox& box) const {
  if (group_->is_finite()) return pick(n_elements(), unit[0]);
  std::vector<double> chart(layout_.n_coords.size());
  for (std::size_t i = 0; i < chart.size(); ++i) {
    chart[i] = box.at(layout_.n_coords[i], unit[i]);
  }
  return n_element(chart);
}

Element Splitting::sample_h(std::span<const double> unit, const SampleBox& box) const {
  if (group_->is_finite()) return pick(h_elements(), unit[0]);
  std::vector<double> chart(layout_.h_coords.size());
  for (std::size_t i = 0; i < chart.size(); ++i) {
    chart[i] = box.at(layout_.h_coords[i], unit[i]);
  }
  return h_element(chart);
}

Element Splitting::sample_g(std::span<const double> unit, const SampleBox& box) const {
  if (group_->is_finite()) return pick(group_->elements(), unit[0]);
  std::vector<double> chart(static_cast<std::size_t>(group_->dimension()));
  for (std::size_t i = 0; i < chart.size(); ++i) {
    chart[i] = box.at(static_cast<int>(i), unit[i]);
  }
  return group_->from_chart(chart);
}

int Splitting::n_sample_dim() const { return group_->is_finite() ? 1 : n_dim(); }
int Splitting::h_sample_dim() const { return group_->is_finite() ? 1 : h_dim(); }
int Splitting::g_sample_dim() const { return group_->is_finite() ? 1 : group_->dimension(); }

Decomposition decompose(const Splitting& s, const Element& g, double tol) {
  Decomposition d{s.project_n(g), s.project_h(g)};
  const double residual = s.group().chart_residual(s.group().multiply(d.n, d.h), g);
  if (!(residual <= tol)) {
    throw DecompositionFailure("decompose: recomposition residual " + std::to_string(residual));
  }
  return d;
}

RightDecomposition decompose_right(const Splitting& s, const Element& g) {
  const auto& G = s.group();
  const Element n = s.project_n(g);
  const Element h = s.project_h(g);
  if (s.n_normal()) {
    // g = n·h = h·(h⁻¹ n h)
    return {h, conjugate(G, G.inverse(h), n)};
  }
  // g = n·h = (n h n⁻¹)·n
  return {conjugate(G, n, h), n};
}

double dist_to_subgroup(const Splitting& s, const Element& g, const SearchParams& search) {
  const auto& G = s.group();
  if (G.is_finite()) {
    double best = kInf;
    for (const auto& q : s.h_elements()) best = std::min(best, G.norm(G.multiply(g, q)));
    return best;
  }
  const double base = G.norm(g);
  if (base == 0.0) return 0.0;
  const double radius = 1.05 * s.h_chart_radius(2.0 * base) + 1e-9;
  const int dim = s.h_dim();
  std::vector<double> t(static_cast<std::size_t>(dim), 0.0);
  std::vector<double> trial(t);
  auto objective = [&](const std::vector<double>& chart) {
    return G.norm(G.multiply(g, s.h_element(chart)));
  };
  double value = base;
  for (int sweep = 0;; ++sweep) {
    if (sweep >= search.max_sweeps) {
      throw SearchBudgetExceeded("dist_to_subgroup: coordinate sweeps did not converge");
    }
    const double before = value;
    for (int i = 0; i < dim; ++i) {
      auto along = [&](double ti) {
        trial = t;
        trial[static_cast<std::size_t>(i)] = ti;
        return objective(trial);
      };
      const LineMin m = minimize_on_line(along, -radius, radius, search);
      if (m.f < value) {
        value = m.f;
        t[static_cast<std::size_t>(i)] = m.t;
      }
    }
    if (dim == 1 || before - value <= 1e-12 * (1.0 + value)) break;
  }
  return value;
}

SplittingConstants estimate_splitting_constants(const Splitting& s, const SampleBox& box,
                                                std::size_t n_samples, std::uint64_t seed,
                                                bool exhaustive, double tol) {
  const auto& G = s.group();
  SplittingConstants out;
  out.box = (exhaustive && G.is_finite()) ? "exhaustive" : box.describe();
  std::array<std::size_t, 5> used{};

  auto fold = [&](int which, std::optional<double> r) {
    if (!r) {
      ++out.skipped[static_cast<std::size_t>(which)];
      return;
    }
    ++used[static_cast<std::size_t>(which)];
    out.c[static_cast<std::size_t>(which)] = std::max(out.c[static_cast<std::size_t>(which)], *r);
  };
  auto single = [&](const Element& g) {
    const double dg = G.norm(g);
    const double dn = G.norm(s.project_n(g));
    const double dh = G.norm(s.project_h(g));
    fold(1, ratio(dh + dn, dg, tol));
    fold(2, ratio(dn, dg, tol));
    fold(3, ratio(dh, dg, tol));
    fold(4, ratio(dn, dist_to_subgroup(s, g), tol));
  };
  auto pair = [&](const Element& g, const Element& p) {
    fold(0, ratio(G.distance(s.project_h(g), s.project_h(p)), G.distance(g, p), tol));
  };

  if (exhaustive && G.is_finite()) {
    const auto elems = G.elements();
    for (const auto& g : elems) {
      single(g);
      for (const auto& p : elems) pair(g, p);
    }
    out.samples = elems.size();
  } else {
    if (n_samples < 2) throw DegenerateSample("estimate_splitting_constants: need >= 2 samples");
    const int d = s.g_sample_dim();
    HaltonSequence seq(2 * d, seed);
    std::vector<double> u(static_cast<std::size_t>(2 * d));
    for (std::size_t i = 0; i < n_samples; ++i) {
      seq.next(u);
      const Element g = s.sample_g(std::span<const double>(u).first(static_cast<std::size_t>(d)), box);
      const Element p = s.sample_g(std::span<const double>(u).last(static_cast<std::size_t>(d)), box);
      single(g);
      pair(g, p);
    }
    out.samples = n_samples;
  }
  for (std::size_t i = 0; i < 5; ++i) {
    if (used[i] == 0) {
      throw DegenerateSample("estimate_splitting_constants: every denominator of C" +
                             std::to_string(i + 1) + " vanished");
    }
  }
  return out;
}

}  // namespace intrinlip
