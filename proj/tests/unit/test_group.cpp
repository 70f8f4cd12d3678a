#include <doctest.h>

#include <cmath>

#include "intrinlip/errors.hpp"
#include "intrinlip/group.hpp"
#include "intrinlip/zoo.hpp"
#include "oracles.hpp"

using namespace intrinlip;

namespace {

std::array<double, 3> arr(const Element& g) { return {g[0], g[1], g[2]}; }

}  // namespace

TEST_CASE("conjugation examples") {
  auto ab = instantiate_group("abelian:1,1");
  CHECK(conjugate(ab->group(), Element{5.0, -2.0}, Element{1.0, 0.0}) == Element{1.0, 0.0});

  DihedralGroup d4(4);
  CHECK(conjugate(d4, d4.reflection(), d4.rotation(1)) == d4.rotation(3));

  HeisenbergGroup h;
  const Element c = conjugate(h, Element{1.0, 0.0, 0.0}, Element{0.0, 1.0, 0.0});
  CHECK(coord_residual(c, Element{0.0, 1.0, 1.0}) < 1e-15);
  // Re-multiplication: c * g = g * n.
  const auto lhs = oracle::heis_mul(arr(c), {1.0, 0.0, 0.0});
  const auto rhs = oracle::heis_mul({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
  for (int i = 0; i < 3; ++i) CHECK(lhs[static_cast<std::size_t>(i)] == doctest::Approx(rhs[static_cast<std::size_t>(i)]));
}

TEST_CASE("heisenberg law and gauge match the closed forms") {
  HeisenbergGroup h;
  HaltonSequence seq(6, 11);
  for (int i = 0; i < 2000; ++i) {
    const auto u = seq.next();
    const Element a{4 * u[0] - 2, 4 * u[1] - 2, 4 * u[2] - 2};
    const Element b{4 * u[3] - 2, 4 * u[4] - 2, 4 * u[5] - 2};
    const auto want = oracle::heis_mul(arr(a), arr(b));
    CHECK(coord_residual(h.multiply(a, b), Element{want[0], want[1], want[2]}) < 1e-14);
    CHECK(h.norm(a) == doctest::Approx(oracle::heis_norm(arr(a))).epsilon(1e-14));
  }
  CHECK(h.norm(Element{1.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(h.norm(Element{0.0, 0.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("affine distance matches the half-plane formula") {
  AffineGroup aff;
  CHECK(aff.distance(Element{0.0, 1.0}, Element{0.0, std::exp(1.0)}) == doctest::Approx(1.0).epsilon(1e-12));
  HaltonSequence seq(4, 3);
  for (int i = 0; i < 1000; ++i) {
    const auto u = seq.next();
    const Element g{4 * u[0] - 2, std::exp(2 * u[1] - 1)};
    const Element p{4 * u[2] - 2, std::exp(2 * u[3] - 1)};
    CHECK(aff.distance(g, p) == doctest::Approx(oracle::hyperbolic(g[0], g[1], p[0], p[1])).epsilon(1e-9));
  }
}

TEST_CASE("group axioms hold on samples (property)") {
  for (const auto& spec : shipped_group_specs()) {
    CAPTURE(spec);
    auto s = instantiate_group(spec);
    const auto& G = s->group();
    const SampleBox box = SampleBox::uniform(G.dimension(), -1.5, 1.5);
    HaltonSequence seq(3 * s->g_sample_dim(), 5);
    std::vector<double> u(static_cast<std::size_t>(3 * s->g_sample_dim()));
    const auto d = static_cast<std::size_t>(s->g_sample_dim());
    for (int i = 0; i < 500; ++i) {
      seq.next(u);
      const auto us = std::span<const double>(u);
      const Element a = s->sample_g(us.subspan(0, d), box);
      const Element b = s->sample_g(us.subspan(d, d), box);
      const Element c = s->sample_g(us.subspan(2 * d, d), box);
      CHECK(G.chart_residual(G.multiply(G.multiply(a, b), c), G.multiply(a, G.multiply(b, c))) < 1e-9);
      CHECK(G.chart_residual(G.multiply(a, G.inverse(a)), G.identity()) < 1e-12);
      CHECK(std::abs(G.distance(G.multiply(c, a), G.multiply(c, b)) - G.distance(a, b)) < 1e-7);
      CHECK(std::abs(G.norm(a) - G.norm(G.inverse(a))) < 1e-9);
      const auto dec = decompose(*s, a);
      CHECK(s->in_n(dec.n, 1e-9));
      CHECK(s->in_h(dec.h, 1e-9));
      CHECK(G.chart_residual(G.multiply(dec.n, dec.h), a) < 1e-9);
      const auto right = decompose_right(*s, a);
      CHECK(s->in_h(right.h, 1e-9));
      CHECK(s->in_n(right.n, 1e-9));
      CHECK(G.chart_residual(G.multiply(right.h, right.n), a) < 1e-9);
    }
  }
}

TEST_CASE("decomposition examples") {
  auto h = instantiate_group("heisenberg");
  const auto d = decompose(*h, Element{1.0, 2.0, 3.0});
  CHECK(coord_residual(d.n, Element{0.0, 2.0, 4.0}) < 1e-15);
  CHECK(coord_residual(d.h, Element{1.0, 0.0, 0.0}) < 1e-15);

  for (const auto& spec : shipped_group_specs()) {
    auto s = instantiate_group(spec);
    const auto e = decompose(*s, s->group().identity());
    CHECK(e.n == s->group().identity());
    CHECK(e.h == s->group().identity());
  }

  auto d4 = instantiate_group("dihedral:4");
  const auto& D = dynamic_cast<const DihedralGroup&>(d4->group());
  const auto r2s = D.multiply(D.rotation(2), D.reflection());
  const auto parts = decompose(*d4, r2s);
  CHECK(parts.n == D.rotation(2));
  CHECK(parts.h == D.reflection());

  auto ab = instantiate_group("abelian:1,1");
  CHECK(ab->project_n(Element{3.0, 7.0}) == Element{3.0, 0.0});
}

TEST_CASE("distance to the subgroup") {
  // H is the second coordinate axis: dist((-3,-4) to H) = 3.
  auto ab = instantiate_group("abelian:1,1");
  CHECK(dist_to_subgroup(*ab, Element{3.0, 4.0}) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(dist_to_subgroup(*ab, ab->group().identity()) == 0.0);

  auto d4 = instantiate_group("dihedral:4");
  const auto& D = dynamic_cast<const DihedralGroup&>(d4->group());
  CHECK(dist_to_subgroup(*d4, D.rotation(1)) == 1.0);
  CHECK(dist_to_subgroup(*d4, D.identity()) == 0.0);

  // Brute-force scan over the H chart as the oracle on Lie instances.
  for (const char* spec : {"heisenberg", "affine", "affine:swapped"}) {
    CAPTURE(spec);
    auto s = instantiate_group(spec);
    const auto& G = s->group();
    const SampleBox box = SampleBox::uniform(G.dimension(), -1.0, 1.0);
    HaltonSequence seq(s->g_sample_dim(), 17);
    for (int i = 0; i < 40; ++i) {
      const Element g = s->sample_g(seq.next(), box);
      const double got = dist_to_subgroup(*s, g);
      const double want = oracle::scan_min(
          [&](double t) {
            const double c[1] = {t};
            return G.norm(G.multiply(g, s->h_element(c)));
          },
          -8.0, 8.0, 200000);
      CHECK(got <= want + 1e-6);
      CHECK(got >= want - 1e-6);
    }
  }
}

TEST_CASE("splitting constants") {
  auto ab = instantiate_group("abelian:1,1");
  const auto c = estimate_splitting_constants(*ab, SampleBox::uniform(2, -1, 1), 10000, 7);
  CHECK(c.c2() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(c.c3() <= c.c2());
  CHECK(c.c4() <= c.c2());
  // Euclidean projections are 1-Lipschitz and dist to H equals |x|.
  CHECK(c.c1() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c.c5() == doctest::Approx(1.0).epsilon(1e-6));

  // D4: enumerate (d(1,n) + d(1,h)) / d(1,g) with the permutation oracle.
  oracle::DihedralPerm perm{4};
  double c2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    for (int e = 0; e < 2; ++e) {
      if (k == 0 && e == 0) continue;
      c2 = std::max(c2, static_cast<double>(perm.word_length(k, 0) + perm.word_length(0, e)) /
                            perm.word_length(k, e));
    }
  }
  CHECK(c2 == 1.0);
  auto d4 = instantiate_group("dihedral:4");
  const auto cd = estimate_splitting_constants(*d4, SampleBox::uniform(2, 0, 1), 10, 1, true);
  CHECK(cd.c2() == c2);

  auto h = instantiate_group("heisenberg");
  const auto ch = estimate_splitting_constants(*h, SampleBox::uniform(3, -1, 1), 10000, 3);
  for (double v : ch.c) CHECK(std::isfinite(v));
  CHECK(ch.c3() <= ch.c2());
  CHECK(ch.c4() <= ch.c2());
}

TEST_CASE("splitting validation") {
  auto G = std::make_shared<AbelianPlane>(1, 1);
  Splitting::Layout bad;
  bad.name = "bad";
  bad.n_coords = {0};
  bad.h_coords = {0};
  CHECK_THROWS_AS(Splitting(G, bad), InvalidSpec);
  auto h = instantiate_group("heisenberg");
  CHECK_THROWS_AS(instantiate_group("dihedral:4")->axis_point(1.0), AxisMissing);
  CHECK(h->axis_parameter(h->axis_point(0.25)) == doctest::Approx(0.25));
  CHECK(to_string(NormalSide::N) == "N_normal");
}
