#include "intrinlip/sampling.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "intrinlip/errors.hpp"

namespace intrinlip {
namespace {

constexpr int kPrimes[HaltonSequence::kMaxDim] = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
    59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131,
    137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223};

double radical_inverse(std::uint64_t index, int base) {
  const double inv_base = 1.0 / base;
  double inv = inv_base;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % static_cast<std::uint64_t>(base)) * inv;
    index /= static_cast<std::uint64_t>(base);
    inv *= inv_base;
  }
  return result;
}

// Bit-level conversion keeps the shift identical across standard libraries.
double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

HaltonSequence::HaltonSequence(int dim, std::uint64_t seed) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("HaltonSequence: bad dimension");
  std::mt19937_64 rng(seed);
  index_ = 1 + (rng() & 0xffffu);
  shift_.resize(static_cast<std::size_t>(dim));
  for (double& s : shift_) s = unit_from_bits(rng());
}

void HaltonSequence::next(std::span<double> out) {
  if (out.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("HaltonSequence: output size mismatch");
  }
  for (int d = 0; d < dim_; ++d) {
    double u = radical_inverse(index_, kPrimes[d]) + shift_[static_cast<std::size_t>(d)];
    if (u >= 1.0) u -= 1.0;
    out[static_cast<std::size_t>(d)] = u;
  }
  ++index_;
}

std::vector<double> HaltonSequence::next() {
  std::vector<double> out(static_cast<std::size_t>(dim_));
  next(out);
  return out;
}

SampleBox SampleBox::uniform(int dim, double lo, double hi) {
  SampleBox box;
  box.lo.assign(static_cast<std::size_t>(dim), lo);
  box.hi.assign(static_cast<std::size_t>(dim), hi);
  return box;
}

SampleBox SampleBox::parse(std::string_view csv, int dim) {
  std::vector<double> values;
  std::string token;
  std::istringstream in{std::string(csv)};
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InvalidSpec("box: cannot parse '" + token + "'");
    }
  }
  SampleBox box;
  if (values.size() == 2) {
    box = uniform(dim, values[0], values[1]);
  } else if (values.size() == 2 * static_cast<std::size_t>(dim)) {
    for (int i = 0; i < dim; ++i) {
      box.lo.push_back(values[2 * static_cast<std::size_t>(i)]);
      box.hi.push_back(values[2 * static_cast<std::size_t>(i) + 1]);
    }
  } else {
    throw InvalidSpec("box: expected 2 or " + std::to_string(2 * dim) + " values");
  }
  for (int i = 0; i < dim; ++i) {
    if (!(box.lo[static_cast<std::size_t>(i)] < box.hi[static_cast<std::size_t>(i)])) {
      throw InvalidSpec("box: empty interval");
    }
  }
  return box;
}

std::string SampleBox::describe() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (i) os << 'x';
    os << '[' << lo[i] << ',' << hi[i] << ']';
  }
  return os.str();
}

}  // namespace intrinlip
