#include "intrinlip/zoo.hpp"

#include <charconv>
#include <cmath>
#include <deque>
#include <numeric>

#include "intrinlip/errors.hpp"

namespace intrinlip {

// -- abelian -----------------------------------------------------------------

AbelianPlane::AbelianPlane(int m, int k) : m_(m), k_(k) {
  if (m < 1 || k < 1 || m + k > kMaxCoords) {
    throw InvalidSpec("abelian:m,k needs m,k >= 1 and m+k <= " + std::to_string(kMaxCoords));
  }
}

std::string AbelianPlane::name() const {
  return "abelian:" + std::to_string(m_) + "," + std::to_string(k_);
}

Element AbelianPlane::identity() const { return Element::zeros(m_ + k_); }

Element AbelianPlane::multiply(const Element& a, const Element& b) const {
  Element out = Element::zeros(m_ + k_);
  for (int i = 0; i < m_ + k_; ++i) out[i] = a[i] + b[i];
  return out;
}

Element AbelianPlane::inverse(const Element& g) const {
  Element out = Element::zeros(m_ + k_);
  for (int i = 0; i < m_ + k_; ++i) out[i] = -g[i];
  return out;
}

double AbelianPlane::norm(const Element& g) const {
  double s = 0.0;
  for (int i = 0; i < m_ + k_; ++i) s += g[i] * g[i];
  return std::sqrt(s);
}

Element AbelianPlane::from_chart(std::span<const double> chart) const { return Element(chart); }

std::vector<double> AbelianPlane::to_chart(const Element& g) const {
  return {g.coords().begin(), g.coords().end()};
}

// -- Heisenberg --------------------------------------------------------------

Element HeisenbergGroup::identity() const { return {0.0, 0.0, 0.0}; }

Element HeisenbergGroup::multiply(const Element& a, const Element& b) const {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2] + 0.5 * (a[0] * b[1] - a[1] * b[0])};
}

Element HeisenbergGroup::inverse(const Element& g) const { return {-g[0], -g[1], -g[2]}; }

double HeisenbergGroup::norm(const Element& g) const {
  const double r2 = g[0] * g[0] + g[1] * g[1];
  return std::pow(r2 * r2 + g[2] * g[2], 0.25);
}

Element HeisenbergGroup::from_chart(std::span<const double> chart) const {
  return Element(chart);
}

std::vector<double> HeisenbergGroup::to_chart(const Element& g) const {
  return {g[0], g[1], g[2]};
}

// -- affine ------------------------------------------------------------------

Element AffineGroup::identity() const { return {0.0, 1.0}; }

Element AffineGroup::multiply(const Element& a, const Element& b) const {
  return {a[0] + a[1] * b[0], a[1] * b[1]};
}

Element AffineGroup::inverse(const Element& g) const { return {-g[0] / g[1], 1.0 / g[1]}; }

double AffineGroup::norm(const Element& g) const {
  const double db = g[0];
  const double da = g[1] - 1.0;
  return std::acosh(1.0 + (db * db + da * da) / (2.0 * g[1]));
}

Element AffineGroup::from_chart(std::span<const double> chart) const {
  return {chart[0], std::exp(chart[1])};
}

std::vector<double> AffineGroup::to_chart(const Element& g) const {
  if (!(g[1] > 0.0)) throw InvalidSpec("affine element with non-positive scale");
  return {g[0], std::log(g[1])};
}

// -- word metric -------------------------------------------------------------

WordMetricTable::WordMetricTable(int order, int identity,
                                 const std::function<int(int, int)>& multiply,
                                 const std::vector<int>& generators)
    : length_(static_cast<std::size_t>(order), -1) {
  std::deque<int> queue{identity};
  length_[static_cast<std::size_t>(identity)] = 0;
  while (!queue.empty()) {
    const int g = queue.front();
    queue.pop_front();
    for (int s : generators) {
      const int h = multiply(g, s);
      if (length_[static_cast<std::size_t>(h)] < 0) {
        length_[static_cast<std::size_t>(h)] = length_[static_cast<std::size_t>(g)] + 1;
        queue.push_back(h);
      }
    }
  }
  for (int len : length_) {
    if (len < 0) throw InvalidSpec("word metric: generators do not generate the group");
  }
  symmetric_ = true;
  for (int s : generators) {
    bool has_inverse = false;
    for (int t : generators) has_inverse = has_inverse || multiply(s, t) == identity;
    symmetric_ = symmetric_ && has_inverse;
  }
}

// -- dihedral ----------------------------------------------------------------

namespace {

constexpr int kMaxDihedral = 1 << 16;

int checked_dihedral_order(int n) {
  if (n < 2 || n > kMaxDihedral) {
    throw InvalidSpec("dihedral:n needs 2 <= n <= " + std::to_string(kMaxDihedral));
  }
  return n;
}

int mod(long long a, int n) { return static_cast<int>(((a % n) + n) % n); }

// Index k + n·e for r^k s^e.
int dihedral_product(int n, int a, int b) {
  const int ka = a % n, ea = a / n;
  const int kb = b % n, eb = b / n;
  return mod(ka + (ea ? -kb : kb), n) + n * ((ea + eb) % 2);
}

}  // namespace

DihedralGroup::DihedralGroup(int n)
    : n_(checked_dihedral_order(n)),
      table_(2 * n, 0, [n](int a, int b) { return dihedral_product(n, a, b); },
             {1 % n, n - 1, n}) {}

std::string DihedralGroup::name() const { return "dihedral:" + std::to_string(n_); }

Element DihedralGroup::identity() const { return {0.0, 0.0}; }

int DihedralGroup::index_of(const Element& g) const {
  return mod(std::llround(g[0]), n_) + n_ * mod(std::llround(g[1]), 2);
}

Element DihedralGroup::element_at(int index) const {
  return {static_cast<double>(index % n_), static_cast<double>(index / n_)};
}

Element DihedralGroup::multiply(const Element& a, const Element& b) const {
  return element_at(dihedral_product(n_, index_of(a), index_of(b)));
}

Element DihedralGroup::inverse(const Element& g) const {
  const int i = index_of(g);
  if (i >= n_) return g;  // reflections are involutions
  return element_at(mod(-i, n_));
}

double DihedralGroup::norm(const Element& g) const { return table_.length(index_of(g)); }

Element DihedralGroup::from_chart(std::span<const double> chart) const {
  return element_at(mod(std::llround(chart[0]), n_) + n_ * mod(std::llround(chart[1]), 2));
}

std::vector<double> DihedralGroup::to_chart(const Element& g) const {
  const int i = index_of(g);
  return {static_cast<double>(i % n_), static_cast<double>(i / n_)};
}

std::vector<Element> DihedralGroup::elements() const {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(order()));
  for (int i = 0; i < order(); ++i) out.push_back(element_at(i));
  return out;
}

Element DihedralGroup::rotation(int k) const { return element_at(mod(k, n_)); }
Element DihedralGroup::reflection() const { return element_at(n_); }

int word_metric_distance(const DihedralGroup& group, const Element& g, const Element& p) {
  return group.table().length(group.index_of(group.multiply(group.inverse(g), p)));
}

// -- specs -------------------------------------------------------------------

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidSpec("group spec: bad integer '" + std::string(text) + "' in " +
                      std::string(what));
  }
  return value;
}

}  // namespace

GroupSpec GroupSpec::parse(std::string_view text) {
  GroupSpec spec;
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "heisenberg" && colon == std::string_view::npos) {
    spec.kind = Kind::Heisenberg;
  } else if (head == "affine") {
    spec.kind = Kind::Affine;
    if (colon != std::string_view::npos) {
      if (tail != "swapped") throw InvalidSpec("group spec: unknown affine variant");
      spec.swapped = true;
    }
  } else if (head == "abelian" && colon != std::string_view::npos) {
    spec.kind = Kind::AbelianPlane;
    const auto comma = tail.find(',');
    if (comma == std::string_view::npos) throw InvalidSpec("group spec: abelian:m,k");
    spec.m = parse_int(tail.substr(0, comma), "abelian:m,k");
    spec.k = parse_int(tail.substr(comma + 1), "abelian:m,k");
  } else if (head == "dihedral" && colon != std::string_view::npos) {
    spec.kind = Kind::Dihedral;
    spec.n = parse_int(tail, "dihedral:n");
  } else {
    throw InvalidSpec("group spec: unknown group '" + std::string(text) + "'");
  }
  return spec;
}

std::string GroupSpec::to_string() const {
  switch (kind) {
    case Kind::AbelianPlane: return "abelian:" + std::to_string(m) + "," + std::to_string(k);
    case Kind::Heisenberg: return "heisenberg";
    case Kind::Affine: return swapped ? "affine:swapped" : "affine";
    case Kind::Dihedral: return "dihedral:" + std::to_string(n);
  }
  return "?";
}

std::shared_ptr<const Splitting> instantiate_group(const GroupSpec& spec) {
  using Layout = Splitting::Layout;
  const std::string name = spec.to_string();
  switch (spec.kind) {
    case GroupSpec::Kind::AbelianPlane: {
      auto g = std::make_shared<AbelianPlane>(spec.m, spec.k);
      std::vector<int> n(static_cast<std::size_t>(spec.m));
      std::vector<int> h(static_cast<std::size_t>(spec.k));
      std::iota(n.begin(), n.end(), 0);
      std::iota(h.begin(), h.end(), spec.m);
      return std::make_shared<Splitting>(g, Layout{name, NormalSide::Both, n, h, spec.k == 1, {}});
    }
    case GroupSpec::Kind::Heisenberg:
      return std::make_shared<Splitting>(std::make_shared<HeisenbergGroup>(),
                                         Layout{name, NormalSide::N, {1, 2}, {0}, true, {}});
    case GroupSpec::Kind::Affine:
      if (spec.swapped) {
        // d(1,(b,1)) = arccosh(1 + b²/2), so |b| = 2 sinh(r/2) on the sphere of radius r.
        return std::make_shared<Splitting>(
            std::make_shared<AffineGroup>(),
            Layout{name, NormalSide::H, {1}, {0}, false,
                   [](double r) { return 2.0 * std::sinh(0.5 * r); }});
      }
      return std::make_shared<Splitting>(std::make_shared<AffineGroup>(),
                                         Layout{name, NormalSide::N, {0}, {1}, true, {}});
    case GroupSpec::Kind::Dihedral:
      return std::make_shared<Splitting>(std::make_shared<DihedralGroup>(spec.n),
                                         Layout{name, NormalSide::N, {0}, {1}, false, {}});
  }
  throw InvalidSpec("group spec: unknown kind");
}

std::shared_ptr<const Splitting> instantiate_group(std::string_view text) {
  return instantiate_group(GroupSpec::parse(text));
}

std::vector<std::string> shipped_group_specs() {
  return {"abelian:1,1", "abelian:2,1", "heisenberg", "affine", "affine:swapped",
          "dihedral:4", "dihedral:6"};
}

}  // namespace intrinlip
