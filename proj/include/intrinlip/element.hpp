#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <string>

namespace intrinlip {

inline constexpr int kMaxCoords = 8;

/// A group element stored in the owning group's coordinate representation.
/// Lie instances use real coordinates; finite instances store exact small
/// integers (still as doubles, so arithmetic on them is exact).
class Element {
 public:
  Element() = default;
  Element(std::initializer_list<double> coords);
  explicit Element(std::span<const double> coords);

  static Element zeros(int size);

  int size() const noexcept { return size_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const {
    return {c_.data(), static_cast<std::size_t>(size_)};
  }

  friend bool operator==(const Element& a, const Element& b);

 private:
  std::array<double, kMaxCoords> c_{};
  int size_ = 0;
};

/// Max absolute coordinate difference; +inf on size mismatch.
double coord_residual(const Element& a, const Element& b);

std::string to_string(const Element& g);

struct Tolerances {
  double exact = 1e-9;   // algebraic residuals
  double metric = 1e-7;  // metric-axiom checks
  double inf = 1e-6;     // infimum search slack
  double sample = 1e-6;  // sampled-constant comparisons (relative: tau*(1+x))
};

}  // namespace intrinlip
