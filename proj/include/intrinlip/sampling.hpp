#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace intrinlip {

/// Halton sequence with a seed-derived index offset and Cranley-Patterson
/// shift. Output lies in [0,1)^dim and is reproducible for a given seed.
class HaltonSequence {
 public:
  static constexpr int kMaxDim = 48;

  HaltonSequence(int dim, std::uint64_t seed);

  int dim() const noexcept { return dim_; }
  void next(std::span<double> out);
  std::vector<double> next();

 private:
  int dim_;
  std::uint64_t index_;
  std::vector<double> shift_;
};

/// Axis-aligned box in chart coordinates. A box given with two numbers
/// applies the same interval to every coordinate.
struct SampleBox {
  std::vector<double> lo;
  std::vector<double> hi;

  static SampleBox uniform(int dim, double lo, double hi);
  /// Accepts "lo,hi" or "lo1,hi1,lo2,hi2,...". Throws InvalidSpec.
  static SampleBox parse(std::string_view csv, int dim);

  int dim() const noexcept { return static_cast<int>(lo.size()); }
  double at(int coord, double u) const { return lo[coord] + u * (hi[coord] - lo[coord]); }
  std::string describe() const;
};

}  // namespace intrinlip
