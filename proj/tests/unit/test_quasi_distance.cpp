#include <doctest.h>

#include <cmath>

#include "intrinlip/errors.hpp"
#include "intrinlip/quasi_distance.hpp"
#include "intrinlip/zoo.hpp"
#include "oracles.hpp"

using namespace intrinlip;

TEST_CASE("quasi-distance closed forms") {
  auto ab = instantiate_group("abelian:1,1");
  const auto phi = linear_map(ab, 3.0);
  CHECK(quasi_distance(phi, Element{1.0, 0.0}, Element{1.0, 0.0}) == 0.0);
  CHECK(quasi_distance(phi, Element{1.0, 0.0}, Element{-1.5, 0.0}) == doctest::Approx(2.5));

  // phi = 1 on Heisenberg: graph points are the bases, so d_phi is the metric on N.
  auto h = instantiate_group("heisenberg");
  const auto zero = constant_map(h, {0.0});
  HaltonSequence seq(4, 3);
  for (int i = 0; i < 200; ++i) {
    const auto u = seq.next();
    const Element a{0.0, 2 * u[0] - 1, 2 * u[1] - 1};
    const Element b{0.0, 2 * u[2] - 1, 2 * u[3] - 1};
    const auto d = oracle::heis_norm({0.0, b[1] - a[1], b[2] - a[2]});
    CHECK(quasi_distance(zero, a, b) == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("quasi-triangle constant") {
  auto ab = instantiate_group("abelian:1,1");
  const SampleBox box = SampleBox::uniform(2, -1, 1);
  const auto phi = linear_map(ab, 2.0);
  const auto pts = sample_domain(phi, box, 3000, 4);
  std::vector<BaseTriple> triples;
  for (std::size_t i = 0; i + 2 < pts.size(); i += 3) triples.push_back({pts[i], pts[i + 1], pts[i + 2]});
  const auto est = quasi_triangle_constant(phi, triples);
  CHECK(est.value <= 1.0 + 1e-12);
  CHECK(est.intrinsic_l == doctest::Approx(2.0));

  auto h = instantiate_group("heisenberg");
  const auto psi = linear_map(h, 0.5);
  const auto hp = sample_domain(psi, SampleBox::uniform(3, -1, 1), 3000, 4);
  std::vector<BaseTriple> ht;
  for (std::size_t i = 0; i + 2 < hp.size(); i += 3) ht.push_back({hp[i], hp[i + 1], hp[i + 2]});
  const auto he = quasi_triangle_constant(psi, ht);
  CHECK(he.value <= he.bound + 1e-6);
}

TEST_CASE("graph equivalence constants") {
  auto ab = instantiate_group("abelian:1,1");
  for (double lambda : {0.5, 1.0, 2.0}) {
    const auto phi = linear_map(ab, lambda);
    const auto pairs = sample_domain_pairs(phi, SampleBox::uniform(2, -1, 1), 500, 2);
    const auto eq = graph_equivalence_constants(phi, pairs);
    CHECK(std::abs(eq.c_low - std::sqrt(1 + lambda * lambda)) <= 1e-9);
    CHECK(std::abs(eq.c_high - std::sqrt(1 + lambda * lambda)) <= 1e-9);
    CHECK(eq.c_low >= eq.low_bound - 1e-6);
    CHECK(eq.c_high <= eq.high_bound + 1e-6);
  }
  const auto c = constant_map(ab, {0.7});
  const auto cp = sample_domain_pairs(c, SampleBox::uniform(2, -1, 1), 200, 2);
  const auto ce = graph_equivalence_constants(c, cp);
  CHECK(ce.c_low == doctest::Approx(1.0));
  CHECK(ce.c_high == doctest::Approx(1.0));

  // D4, phi(1) = 1, phi(r^2) = s: d(q1,q2) = |r^2 s| and d_phi = |r^2|.
  oracle::DihedralPerm perm{4};
  const double want = static_cast<double>(perm.word_length(2, 1)) / perm.word_length(2, 0);
  auto d4 = instantiate_group("dihedral:4");
  const auto t = table_map(d4, "t", {{{0.0}, {0.0}}, {{2.0}, {1.0}}});
  const auto te = graph_equivalence_constants(t, enumerate_domain_pairs(t));
  CHECK(te.c_low == want);
  CHECK(te.c_high == want);
  CHECK_THROWS_AS(graph_equivalence_constants(t, std::vector<BasePair>{}), DegenerateSample);
}

TEST_CASE("quasi-distance equals the metric on normal codomains") {
  auto ab = instantiate_group("abelian:1,1");
  const auto pairs = sample_domain_pairs(linear_map(ab, 2.0), SampleBox::uniform(2, -1, 1), 300, 1);
  CHECK(normal_case_identity(linear_map(ab, 2.0), pairs) <= 1e-15);
  auto sw = instantiate_group("affine:swapped");
  for (const char* spec : {"hom:1", "const:0", "linear:0.5"}) {
    const auto phi = parse_map_spec(sw, spec);
    const auto sp = sample_domain_pairs(phi, SampleBox::uniform(2, -1, 1), 300, 1);
    CHECK(normal_case_identity(phi, sp) <= 1e-9);
  }
  auto h = instantiate_group("heisenberg");
  CHECK_THROWS_AS(normal_case_identity(constant_map(h, {0.0}), pairs), WrongNormalSide);
}
