#pragma once

// Independent reference implementations used as test oracles. None of these
// call into the library.

#include <array>
#include <cmath>
#include <deque>
#include <vector>

namespace oracle {

// (x,y,t)(x',y',t') = (x+x', y+y', t+t'+(xy'-yx')/2)
inline std::array<double, 3> heis_mul(std::array<double, 3> a, std::array<double, 3> b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2] + 0.5 * (a[0] * b[1] - a[1] * b[0])};
}
inline double heis_norm(std::array<double, 3> g) {
  const double r2 = g[0] * g[0] + g[1] * g[1];
  return std::sqrt(std::sqrt(r2 * r2 + g[2] * g[2]));
}

// Upper half-plane distance between b1 + i a1 and b2 + i a2.
inline double hyperbolic(double b1, double a1, double b2, double a2) {
  return std::acosh(1.0 + ((b1 - b2) * (b1 - b2) + (a1 - a2) * (a1 - a2)) / (2.0 * a1 * a2));
}

// D_n as permutations of the polygon vertices 0..n-1.
struct DihedralPerm {
  int n;
  using Perm = std::vector<int>;

  Perm rotation(int k) const {
    Perm p(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) p[static_cast<std::size_t>(v)] = ((v + k) % n + n) % n;
    return p;
  }
  Perm reflection() const {
    Perm p(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) p[static_cast<std::size_t>(v)] = (n - v) % n;
    return p;
  }
  // (a*b)(v) = a(b(v))
  static Perm compose(const Perm& a, const Perm& b) {
    Perm p(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) p[v] = a[static_cast<std::size_t>(b[v])];
    return p;
  }
  // r^k s^e as a permutation.
  Perm element(int k, int e) const { return e ? compose(rotation(k), reflection()) : rotation(k); }

  // Decode a permutation back to (k, e).
  std::array<int, 2> decode(const Perm& p) const {
    for (int k = 0; k < n; ++k)
      for (int e = 0; e < 2; ++e)
        if (element(k, e) == p) return {k, e};
    return {-1, -1};
  }

  // Word length of r^k s^e for generators {r, r^-1, s} by BFS on the
  // Cayley graph of the permutation group.
  int word_length(int k, int e) const {
    std::vector<int> dist(static_cast<std::size_t>(2 * n), -1);
    auto idx = [&](std::array<int, 2> ke) { return ke[0] + n * ke[1]; };
    std::deque<Perm> queue{rotation(0)};
    dist[0] = 0;
    const std::array<Perm, 3> gens{rotation(1), rotation(n - 1), reflection()};
    while (!queue.empty()) {
      const Perm p = queue.front();
      queue.pop_front();
      const int dp = dist[static_cast<std::size_t>(idx(decode(p)))];
      for (const auto& g : gens) {
        const Perm q = compose(p, g);
        auto& dq = dist[static_cast<std::size_t>(idx(decode(q)))];
        if (dq < 0) {
          dq = dp + 1;
          queue.push_back(q);
        }
      }
    }
    return dist[static_cast<std::size_t>(k + n * e)];
  }
};

// Brute-force min over t in [lo, hi] of f(t) on a fine grid.
template <class F>
double scan_min(const F& f, double lo, double hi, int steps) {
  double best = f(lo);
  for (int i = 1; i <= steps; ++i) best = std::min(best, f(lo + (hi - lo) * i / steps));
  return best;
}

}  // namespace oracle
