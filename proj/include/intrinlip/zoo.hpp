#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "intrinlip/group.hpp"

namespace intrinlip {

/// ℝ^m × ℝ^k with the Euclidean distance.
class AbelianPlane final : public MetricGroup {
 public:
  AbelianPlane(int m, int k);

  std::string name() const override;
  int dimension() const override { return m_ + k_; }
  Element identity() const override;
  Element multiply(const Element& a, const Element& b) const override;
  Element inverse(const Element& g) const override;
  double norm(const Element& g) const override;
  Element from_chart(std::span<const double> chart) const override;
  std::vector<double> to_chart(const Element& g) const override;

  int m() const noexcept { return m_; }
  int k() const noexcept { return k_; }

 private:
  int m_;
  int k_;
};

/// First Heisenberg group, (x,y,t)(x',y',t') = (x+x', y+y', t+t'+½(xy'−yx')),
/// with the gauge ‖(x,y,t)‖ = ((x²+y²)² + t²)^{1/4}.
class HeisenbergGroup final : public MetricGroup {
 public:
  std::string name() const override { return "heisenberg"; }
  int dimension() const override { return 3; }
  Element identity() const override;
  Element multiply(const Element& a, const Element& b) const override;
  Element inverse(const Element& g) const override;
  double norm(const Element& g) const override;
  Element from_chart(std::span<const double> chart) const override;
  std::vector<double> to_chart(const Element& g) const override;
};

/// Orientation-preserving affine maps of the line, (b,a)(b',a') = (b+ab', aa')
/// with a > 0, carrying the hyperbolic distance of the upper half-plane.
/// Stored as (b, a); the chart is (b, log a).
class AffineGroup final : public MetricGroup {
 public:
  std::string name() const override { return "affine"; }
  int dimension() const override { return 2; }
  Element identity() const override;
  Element multiply(const Element& a, const Element& b) const override;
  Element inverse(const Element& g) const override;
  double norm(const Element& g) const override;
  Element from_chart(std::span<const double> chart) const override;
  std::vector<double> to_chart(const Element& g) const override;
};

/// Breadth-first word lengths over a finite group given by its
/// multiplication table on indices.
class WordMetricTable {
 public:
  WordMetricTable(int order, int identity, const std::function<int(int, int)>& multiply,
                  const std::vector<int>& generators);

  int order() const noexcept { return static_cast<int>(length_.size()); }
  int length(int index) const { return length_.at(static_cast<std::size_t>(index)); }
  bool symmetric_generators() const noexcept { return symmetric_; }

 private:
  std::vector<int> length_;
  bool symmetric_ = false;
};

/// D_n = Z_n ⋊ Z_2 with elements r^k s^e stored as (k, e) and the word
/// metric for the generators {r, r⁻¹, s}.
class DihedralGroup final : public MetricGroup {
 public:
  explicit DihedralGroup(int n);

  std::string name() const override;
  int dimension() const override { return 2; }
  Element identity() const override;
  Element multiply(const Element& a, const Element& b) const override;
  Element inverse(const Element& g) const override;
  double norm(const Element& g) const override;
  Element from_chart(std::span<const double> chart) const override;
  std::vector<double> to_chart(const Element& g) const override;
  bool is_finite() const override { return true; }
  std::vector<Element> elements() const override;

  int n() const noexcept { return n_; }
  int order() const noexcept { return 2 * n_; }
  int index_of(const Element& g) const;
  Element element_at(int index) const;
  const WordMetricTable& table() const noexcept { return table_; }

  Element rotation(int k) const;
  Element reflection() const;

 private:
  int n_;
  WordMetricTable table_;
};

/// Word length of g⁻¹p.
int word_metric_distance(const DihedralGroup& group, const Element& g, const Element& p);

/// Textual forms: `abelian:m,k` | `heisenberg` | `affine` | `affine:swapped`
/// | `dihedral:n`. The swapped affine instance takes dilations as the domain
/// subgroup and the (normal) translations as the codomain.
struct GroupSpec {
  enum class Kind { AbelianPlane, Heisenberg, Affine, Dihedral };

  Kind kind = Kind::Heisenberg;
  int m = 1;
  int k = 1;
  int n = 4;
  bool swapped = false;

  static GroupSpec parse(std::string_view text);
  std::string to_string() const;
};

/// Throws InvalidSpec for out-of-range parameters.
std::shared_ptr<const Splitting> instantiate_group(const GroupSpec& spec);
std::shared_ptr<const Splitting> instantiate_group(std::string_view text);

/// Group specs exercised by the default suites.
std::vector<std::string> shipped_group_specs();

}  // namespace intrinlip
