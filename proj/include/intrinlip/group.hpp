#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "intrinlip/element.hpp"
#include "intrinlip/sampling.hpp"

namespace intrinlip {

/// A group with a left-invariant distance. Elements are addressed through a
/// chart (real coordinates used for sampling boxes, map specs and tables);
/// for most instances the chart is the storage representation itself.
class MetricGroup {
 public:
  virtual ~MetricGroup() = default;

  virtual std::string name() const = 0;
  /// Number of chart coordinates.
  virtual int dimension() const = 0;
  virtual Element identity() const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element inverse(const Element& g) const = 0;
  /// d(1, g).
  virtual double norm(const Element& g) const = 0;

  virtual Element from_chart(std::span<const double> chart) const = 0;
  virtual std::vector<double> to_chart(const Element& g) const = 0;

  virtual bool is_finite() const { return false; }
  /// All elements, in index order, for finite groups; empty otherwise.
  virtual std::vector<Element> elements() const { return {}; }

  /// d(g, p) = d(1, g⁻¹p).
  double distance(const Element& g, const Element& p) const {
    return norm(multiply(inverse(g), p));
  }
  Element power(const Element& g, int k) const;
  /// Residual between two elements measured in chart coordinates.
  double chart_residual(const Element& a, const Element& b) const;
};

/// C_g(n) = g·n·g⁻¹.
Element conjugate(const MetricGroup& group, const Element& g, const Element& n);

enum class NormalSide { N, H, Both };

std::string to_string(NormalSide side);

/// G = N·H with N ∩ H = {1}. Both subgroups are coordinate subspaces of the
/// group chart; the non-normal factor is read off its chart coordinates and
/// the normal factor is recovered algebraically, so g = π_N(g)·π_H(g).
class Splitting {
 public:
  struct Layout {
    std::string name;
    NormalSide normal = NormalSide::N;
    std::vector<int> n_coords;
    std::vector<int> h_coords;
    /// True when the H chart t ↦ h(t) is a homomorphism with d(1,h(t)) = |t|
    /// (only meaningful for one-dimensional H).
    bool geodesic_axis = false;
    /// Bound on |chart| for H elements with d(1,h) ≤ r. Defaults to r.
    std::function<double(double)> h_chart_radius;
  };

  Splitting(std::shared_ptr<const MetricGroup> group, Layout layout);

  const MetricGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const MetricGroup>& group_ptr() const noexcept { return group_; }
  const std::string& name() const noexcept { return layout_.name; }

  NormalSide normal_side() const noexcept { return layout_.normal; }
  bool n_normal() const noexcept { return layout_.normal != NormalSide::H; }
  bool h_normal() const noexcept { return layout_.normal != NormalSide::N; }

  int n_dim() const noexcept { return static_cast<int>(layout_.n_coords.size()); }
  int h_dim() const noexcept { return static_cast<int>(layout_.h_coords.size()); }

  Element n_element(std::span<const double> chart) const;
  Element h_element(std::span<const double> chart) const;
  std::vector<double> n_chart(const Element& n) const;
  std::vector<double> h_chart(const Element& h) const;

  Element project_n(const Element& g) const;
  Element project_h(const Element& g) const;

  bool in_n(const Element& g, double tol) const;
  bool in_h(const Element& g, double tol) const;

  /// One-dimensional geodesic axis t ↦ h(t), when registered.
  bool has_axis() const noexcept { return layout_.geodesic_axis && h_dim() == 1; }
  Element axis_point(double t) const;
  double axis_parameter(const Element& h) const;

  double h_chart_radius(double r) const;

  /// Finite instances: the elements of N and H.
  std::vector<Element> n_elements() const;
  std::vector<Element> h_elements() const;

  /// Map a unit-cube point (dimension n_dim / h_dim / group dimension, or 1
  /// for finite groups) into the box.
  Element sample_n(std::span<const double> unit, const SampleBox& box) const;
  Element sample_h(std::span<const double> unit, const SampleBox& box) const;
  Element sample_g(std::span<const double> unit, const SampleBox& box) const;
  int n_sample_dim() const;
  int h_sample_dim() const;
  int g_sample_dim() const;

 private:
  Element embed(const std::vector<int>& coords, std::span<const double> chart) const;
  bool off_coords_vanish(const std::vector<int>& keep, const Element& g, double tol) const;

  std::shared_ptr<const MetricGroup> group_;
  Layout layout_;
};

struct Decomposition {
  Element n;
  Element h;
};

/// g = n·h with n ∈ N, h ∈ H. Throws DecompositionFailure if the
/// recomposition residual exceeds tol.
Decomposition decompose(const Splitting& s, const Element& g, double tol = 1e-9);

/// g = ℓ·m with ℓ ∈ H, m ∈ N (the H ⋉ N factorization).
struct RightDecomposition {
  Element h;
  Element n;
};
RightDecomposition decompose_right(const Splitting& s, const Element& g);

struct SearchParams {
  int grid = 512;
  int max_iter = 200;
  int max_sweeps = 64;
  double tol = 1e-12;
};

/// inf { d(1, g·q) : q ∈ H }: the distance from g⁻¹ to H (equivalently from
/// 1 to the coset gH). Exact on finite groups; grid scan plus golden-section
/// refinement over the H chart otherwise. Throws SearchBudgetExceeded.
double dist_to_subgroup(const Splitting& s, const Element& g, const SearchParams& search = {});

/// Sampled suprema of the five splitting ratios:
///   C1  d(π_H g, π_H p) / d(g, p)
///   C2  (d(1,π_H g) + d(1,π_N g)) / d(1,g)
///   C3  d(1,π_N g) / d(1,g)
///   C4  d(1,π_H g) / d(1,g)
///   C5  d(1,π_N g) / dist_to_subgroup(g)
struct SplittingConstants {
  std::array<double, 5> c{};
  std::size_t samples = 0;
  std::array<std::size_t, 5> skipped{};
  std::string box;

  double c1() const { return c[0]; }
  double c2() const { return c[1]; }
  double c3() const { return c[2]; }
  double c4() const { return c[3]; }
  double c5() const { return c[4]; }
};

/// Throws DegenerateSample if every denominator of some ratio vanishes.
SplittingConstants estimate_splitting_constants(const Splitting& s, const SampleBox& box,
                                                std::size_t n_samples, std::uint64_t seed,
                                                bool exhaustive = false,
                                                double tol = 1e-9);

}  // namespace intrinlip
