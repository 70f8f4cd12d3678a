#include "intrinlip/intrinsic_map.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "intrinlip/errors.hpp"
#include "intrinlip/zoo.hpp"

namespace intrinlip {

IntrinsicMap::IntrinsicMap(std::shared_ptr<const Splitting> splitting, std::string descriptor,
                           Evaluate evaluate, Domain domain)
    : splitting_(std::move(splitting)),
      descriptor_(std::move(descriptor)),
      evaluate_(std::move(evaluate)),
      domain_(std::move(domain)) {
  if (!splitting_ || !evaluate_) throw InvalidSpec("IntrinsicMap: missing splitting or evaluator");
}

Element IntrinsicMap::operator()(const Element& n) const {
  if (!contains(n)) throw OutsideDomain(descriptor_ + ": " + to_string(n) + " is outside E");
  return evaluate_(n);
}

double IntrinsicMap::axis_value(const Element& n) const {
  return splitting_->axis_parameter((*this)(n));
}

std::vector<Element> IntrinsicMap::domain_elements() const {
  if (!splitting_->group().is_finite()) {
    throw InvalidSpec("domain_elements: only finite groups enumerate E");
  }
  std::vector<Element> out;
  for (const auto& n : splitting_->n_elements()) {
    if (contains(n)) out.push_back(n);
  }
  return out;
}

GraphPoint graphing_map(const IntrinsicMap& phi, const Element& n) {
  const Element value = phi(n);
  return {n, value, phi.splitting().group().multiply(n, value)};
}

IntrinsicMap translate_map(const IntrinsicMap& phi, const Element& q) {
  const auto& s = phi.splitting();
  const Element q_inv = s.group().inverse(q);
  auto evaluate = [phi, q_inv](const Element& n) {
    const auto& s = phi.splitting();
    const auto& G = s.group();
    const Element x = G.multiply(q_inv, n);
    return G.multiply(G.inverse(s.project_h(x)), phi(s.project_n(x)));
  };
  auto domain = [phi, q_inv](const Element& n) {
    const auto& s = phi.splitting();
    return phi.contains(s.project_n(s.group().multiply(q_inv, n)));
  };
  return IntrinsicMap(phi.splitting_ptr(), "translate(" + phi.descriptor() + "," + to_string(q) + ")",
                      evaluate, domain);
}

DistanceBound graph_distance_bound(const IntrinsicMap& phi, const Element& p) {
  const auto& s = phi.splitting();
  const auto& G = s.group();
  const GraphPoint w = graphing_map(phi, s.project_n(p));
  return {G.norm(G.multiply(G.inverse(s.project_h(p)), w.value)), w};
}

std::string to_string(GraphSide side) {
  switch (side) {
    case GraphSide::Supergraph: return "supergraph";
    case GraphSide::Subgraph: return "subgraph";
    case GraphSide::Graph: return "graph";
  }
  return "?";
}

GraphSide classify_point(const IntrinsicMap& phi, const Element& p, double tol) {
  const auto& s = phi.splitting();
  const double t = s.axis_parameter(s.project_h(p));
  const double f = phi.axis_value(s.project_n(p));
  if (t > f + tol) return GraphSide::Supergraph;
  if (t < f - tol) return GraphSide::Subgraph;
  return GraphSide::Graph;
}

// -- builtin maps ------------------------------------------------------------

namespace {

std::string join(const std::vector<double>& v) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

std::vector<double> parse_numbers(std::string_view text, std::string_view what) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    double value = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
      throw InvalidSpec("map spec: bad number '" + std::string(token) + "' in " + std::string(what));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw InvalidSpec("map spec: " + std::string(what) + " needs parameters");
  return out;
}

const DihedralGroup* as_dihedral(const Splitting& s) {
  return dynamic_cast<const DihedralGroup*>(&s.group());
}

}  // namespace

IntrinsicMap constant_map(std::shared_ptr<const Splitting> s, std::vector<double> h_chart) {
  // A full group chart is accepted when it names an element of H.
  if (static_cast<int>(h_chart.size()) == s->group().dimension() && s->h_dim() != s->group().dimension()) {
    const Element g = s->group().from_chart(h_chart);
    if (!s->in_h(g, 0.0)) throw InvalidSpec("const: value " + join(h_chart) + " is not in H");
    h_chart = s->h_chart(g);
  }
  if (static_cast<int>(h_chart.size()) != s->h_dim()) {
    throw InvalidSpec("const: expected " + std::to_string(s->h_dim()) + " H chart values");
  }
  const Element value = s->h_element(h_chart);
  return IntrinsicMap(s, "const:" + join(h_chart), [value](const Element&) { return value; });
}

IntrinsicMap chart_linear_map(std::shared_ptr<const Splitting> s, std::string descriptor,
                              std::vector<double> matrix, std::vector<double> offset) {
  const auto rows = static_cast<std::size_t>(s->h_dim());
  const auto cols = static_cast<std::size_t>(s->n_dim());
  if (matrix.size() != rows * cols) {
    throw InvalidSpec(descriptor + ": expected " + std::to_string(rows * cols) + " coefficients");
  }
  if (offset.empty()) offset.assign(rows, 0.0);
  if (offset.size() != rows) throw InvalidSpec(descriptor + ": offset size mismatch");
  const Splitting* raw = s.get();
  auto evaluate = [raw, matrix, offset, rows, cols](const Element& n) {
    const auto x = raw->n_chart(n);
    std::vector<double> y(offset);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) y[i] += matrix[i * cols + j] * x[j];
    }
    return raw->h_element(y);
  };
  return IntrinsicMap(s, std::move(descriptor), evaluate);
}

IntrinsicMap linear_map(std::shared_ptr<const Splitting> s, double lambda, double offset) {
  if (s->group().is_finite()) throw InvalidSpec("linear: Lie instances only");
  const auto rows = static_cast<std::size_t>(s->h_dim());
  const auto cols = static_cast<std::size_t>(s->n_dim());
  std::vector<double> matrix(rows * cols, 0.0);
  if (rows == cols) {
    for (std::size_t i = 0; i < rows; ++i) matrix[i * cols + i] = lambda;
  } else if (rows == 1) {
    matrix[0] = lambda;
  } else {
    throw InvalidSpec("linear: needs dim N = dim H or a one-dimensional H");
  }
  std::ostringstream name;
  name.precision(17);
  name << "linear:" << lambda;
  return chart_linear_map(std::move(s), name.str(), std::move(matrix),
                          std::vector<double>(rows, offset));
}

IntrinsicMap hom_map(std::shared_ptr<const Splitting> s, std::vector<double> coeffs) {
  if (const auto* d = as_dihedral(*s)) {
    if (coeffs.size() != 1 || coeffs[0] != std::round(coeffs[0])) {
      throw InvalidSpec("hom: dihedral homomorphisms take one integer coefficient");
    }
    const long long c = std::llround(coeffs[0]);
    const int n = d->n();
    if (c % 2 != 0 && n % 2 != 0) {
      throw InvalidSpec("hom: r^k -> s^k is a homomorphism only for even n");
    }
    const Splitting* raw = s.get();
    auto evaluate = [raw, c](const Element& rot) {
      const long long k = std::llround(raw->n_chart(rot)[0]);
      const double e = static_cast<double>(((c * k) % 2 + 2) % 2);
      return raw->h_element(std::vector<double>{e});
    };
    return IntrinsicMap(s, "hom:" + std::to_string(c), evaluate);
  }
  const std::string name = "hom:" + join(coeffs);
  return chart_linear_map(std::move(s), name, std::move(coeffs));
}

IntrinsicMap table_map(std::shared_ptr<const Splitting> s, std::string descriptor,
                       std::vector<std::pair<std::vector<double>, std::vector<double>>> rows) {
  if (rows.empty()) throw InvalidSpec(descriptor + ": empty table");
  const auto nd = static_cast<std::size_t>(s->n_dim());
  const auto hd = static_cast<std::size_t>(s->h_dim());
  struct Row {
    std::vector<double> n;
    Element value;
  };
  std::vector<Row> table;
  for (auto& [n, h] : rows) {
    if (n.size() != nd || h.size() != hd) throw InvalidSpec(descriptor + ": row size mismatch");
    table.push_back({n, s->h_element(h)});
  }
  const Splitting* raw = s.get();

  if (const auto* d = as_dihedral(*s)) {
    const int order = d->order();
    auto lookup = std::make_shared<std::vector<std::optional<Element>>>(
        static_cast<std::size_t>(order));
    for (const auto& r : table) {
      const int idx = d->index_of(raw->n_element(r.n));
      (*lookup)[static_cast<std::size_t>(idx)] = r.value;
    }
    auto evaluate = [lookup, d](const Element& n) {
      return *(*lookup)[static_cast<std::size_t>(d->index_of(n))];
    };
    auto domain = [lookup, d, raw](const Element& n) {
      return raw->in_n(n, 0.0) && (*lookup)[static_cast<std::size_t>(d->index_of(n))].has_value();
    };
    return IntrinsicMap(s, std::move(descriptor), evaluate, domain);
  }

  std::vector<double> lo(nd, std::numeric_limits<double>::infinity());
  std::vector<double> hi(nd, -std::numeric_limits<double>::infinity());
  for (const auto& r : table) {
    for (std::size_t j = 0; j < nd; ++j) {
      lo[j] = std::min(lo[j], r.n[j]);
      hi[j] = std::max(hi[j], r.n[j]);
    }
  }
  auto shared = std::make_shared<const std::vector<Row>>(std::move(table));
  auto evaluate = [shared, raw](const Element& n) {
    const auto x = raw->n_chart(n);
    double best = std::numeric_limits<double>::infinity();
    const Element* value = nullptr;
    for (const auto& r : *shared) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) d2 += (x[j] - r.n[j]) * (x[j] - r.n[j]);
      if (d2 < best) {
        best = d2;
        value = &r.value;
      }
    }
    return *value;
  };
  auto domain = [lo, hi, raw](const Element& n) {
    const auto x = raw->n_chart(n);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!(x[j] >= lo[j] && x[j] <= hi[j])) return false;
    }
    return true;
  };
  return IntrinsicMap(s, std::move(descriptor), evaluate, domain);
}

IntrinsicMap load_table_map(std::shared_ptr<const Splitting> s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("table: cannot open '" + path + "'");
  const auto nd = static_cast<std::size_t>(s->n_dim());
  const auto hd = static_cast<std::size_t>(s->h_dim());
  std::vector<std::pair<std::vector<double>, std::vector<double>>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<double> values;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw InvalidSpec("table: bad number on line " + std::to_string(line_no));
      }
    }
    if (values.empty()) continue;
    if (values.size() != nd + hd) {
      throw InvalidSpec("table: line " + std::to_string(line_no) + " needs " +
                        std::to_string(nd + hd) + " values");
    }
    rows.emplace_back(std::vector<double>(values.begin(), values.begin() + static_cast<long>(nd)),
                      std::vector<double>(values.begin() + static_cast<long>(nd), values.end()));
  }
  return table_map(std::move(s), "table:" + path, std::move(rows));
}

IntrinsicMap parse_map_spec(std::shared_ptr<const Splitting> s, std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidSpec("map spec: expected kind:params, got '" + std::string(spec) + "'");
  }
  const auto kind = spec.substr(0, colon);
  const auto params = spec.substr(colon + 1);
  if (kind == "const") return constant_map(std::move(s), parse_numbers(params, "const"));
  if (kind == "linear") {
    const auto v = parse_numbers(params, "linear");
    if (v.size() != 1) throw InvalidSpec("linear: takes one coefficient");
    return linear_map(std::move(s), v[0]);
  }
  if (kind == "hom") return hom_map(std::move(s), parse_numbers(params, "hom"));
  if (kind == "table") return load_table_map(std::move(s), std::string(params));
  throw InvalidSpec("map spec: unknown kind '" + std::string(kind) + "'");
}

std::vector<std::string> shipped_map_specs(const Splitting& s) {
  if (const auto* d = as_dihedral(s)) {
    std::vector<std::string> out{"const:0", "const:1"};
    if (d->n() % 2 == 0) out.emplace_back("hom:1");
    return out;
  }
  const std::string name = s.name();
  if (name == "heisenberg") return {"const:0", "linear:0.5", "linear:2", "hom:1,0.5"};
  if (name == "affine:swapped") return {"const:0", "linear:0.5", "hom:1"};
  std::string zero = "const:0";
  for (int i = 1; i < s.h_dim(); ++i) zero += ",0";
  std::vector<std::string> out{zero};
  if (s.h_dim() == s.n_dim() || s.h_dim() == 1) {
    out.emplace_back("linear:0.5");
    out.emplace_back("linear:2");
  }
  return out;
}

std::vector<Element> sample_domain(const IntrinsicMap& phi, const SampleBox& box,
                                   std::size_t count, std::uint64_t seed) {
  const auto& s = phi.splitting();
  std::vector<Element> out;
  out.reserve(count);
  if (s.group().is_finite()) {
    const auto domain = phi.domain_elements();
    if (domain.empty()) throw DegenerateSample(phi.descriptor() + ": empty domain");
    HaltonSequence seq(1, seed);
    for (std::size_t i = 0; i < count; ++i) {
      const double u = seq.next()[0];
      const auto idx = std::min(static_cast<std::size_t>(u * static_cast<double>(domain.size())),
                                domain.size() - 1);
      out.push_back(domain[idx]);
    }
    return out;
  }
  HaltonSequence seq(s.n_sample_dim(), seed);
  std::vector<double> u(static_cast<std::size_t>(s.n_sample_dim()));
  const std::size_t budget = 100 * std::max<std::size_t>(count, 1);
  for (std::size_t tries = 0; out.size() < count && tries < budget; ++tries) {
    seq.next(u);
    Element n = s.sample_n(u, box);
    if (phi.contains(n)) out.push_back(n);
  }
  if (out.size() < count) {
    throw DegenerateSample(phi.descriptor() + ": sample box barely meets the domain");
  }
  return out;
}

}  // namespace intrinlip
