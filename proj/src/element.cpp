#include "intrinlip/element.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace intrinlip {

Element::Element(std::initializer_list<double> coords)
    : Element(std::span<const double>(coords.begin(), coords.size())) {}

Element::Element(std::span<const double> coords) {
  if (coords.size() > static_cast<std::size_t>(kMaxCoords)) {
    throw std::length_error("Element: too many coordinates");
  }
  std::copy(coords.begin(), coords.end(), c_.begin());
  size_ = static_cast<int>(coords.size());
}

Element Element::zeros(int size) {
  Element e;
  if (size < 0 || size > kMaxCoords) throw std::length_error("Element: bad size");
  e.size_ = size;
  return e;
}

bool operator==(const Element& a, const Element& b) {
  if (a.size_ != b.size_) return false;
  return std::equal(a.c_.begin(), a.c_.begin() + a.size_, b.c_.begin());
}

double coord_residual(const Element& a, const Element& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double r = 0.0;
  for (int i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

std::string to_string(const Element& g) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (int i = 0; i < g.size(); ++i) {
    if (i) os << ", ";
    os << g[i];
  }
  os << ')';
  return os.str();
}

}  // namespace intrinlip
