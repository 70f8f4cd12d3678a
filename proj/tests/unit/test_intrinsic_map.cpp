#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "intrinlip/errors.hpp"
#include "intrinlip/intrinsic_map.hpp"
#include "intrinlip/zoo.hpp"
#include "oracles.hpp"

using namespace intrinlip;

TEST_CASE("graphing map closed forms") {
  auto h = instantiate_group("heisenberg");
  const double lambda = 0.7;
  const auto phi = linear_map(h, lambda);
  HaltonSequence seq(2, 9);
  for (int i = 0; i < 200; ++i) {
    const auto u = seq.next();
    const double y = 4 * u[0] - 2;
    const double t = 4 * u[1] - 2;
    const auto gp = graphing_map(phi, Element{0.0, y, t});
    CHECK(coord_residual(gp.point, Element{lambda * y, y, t - lambda * y * y / 2}) < 1e-14);
    const auto d = decompose(*h, gp.point);
    CHECK(coord_residual(d.n, Element{0.0, y, t}) < 1e-12);
    CHECK(coord_residual(d.h, gp.value) < 1e-12);
  }

  const auto zero = constant_map(h, {0.0});
  CHECK(graphing_map(zero, Element{0.0, 1.0, 2.0}).point == (Element{0.0, 1.0, 2.0}));

  auto ab = instantiate_group("abelian:1,1");
  CHECK(graphing_map(linear_map(ab, 3.0), Element{2.0, 0.0}).point == (Element{2.0, 6.0}));
}

TEST_CASE("translated maps") {
  auto ab = instantiate_group("abelian:1,1");
  const double lambda = 1.5;
  const auto phi = linear_map(ab, lambda);
  const Element q{0.4, -1.1};
  const auto phi_q = translate_map(phi, q);
  for (double n : {-2.0, -0.3, 0.0, 1.25}) {
    CHECK(phi_q(Element{n, 0.0})[1] == doctest::Approx(q[1] + lambda * (n - q[0])));
  }

  // q Gamma_phi lies on Gamma_{phi_q} on the Heisenberg group (property).
  auto h = instantiate_group("heisenberg");
  const auto psi = linear_map(h, 2.0);
  HaltonSequence seq(5, 21);
  for (int i = 0; i < 300; ++i) {
    const auto u = seq.next();
    const Element g{2 * u[0] - 1, 2 * u[1] - 1, 2 * u[2] - 1};
    const Element n{0.0, 2 * u[3] - 1, 2 * u[4] - 1};
    const auto psi_g = translate_map(psi, g);
    const Element x = h->group().multiply(g, graphing_map(psi, n).point);
    const auto gp = graphing_map(psi_g, h->project_n(x));
    CHECK(h->group().chart_residual(gp.point, x) < 1e-12);
    // (psi_g)_{g^-1} = psi
    const auto back = translate_map(psi_g, h->group().inverse(g));
    CHECK(h->group().chart_residual(back(n), psi(n)) < 1e-12);
    // A graph point p gives psi_{p^-1}(1) = 1.
    const Element p = graphing_map(psi, n).point;
    CHECK(h->group().chart_residual(translate_map(psi, h->group().inverse(p))(h->group().identity()),
                                    h->group().identity()) < 1e-12);
  }
}

TEST_CASE("translation on D4 as a set identity") {
  auto d4 = instantiate_group("dihedral:4");
  const auto& D = dynamic_cast<const DihedralGroup&>(d4->group());
  // phi(1) = 1, phi(r^2) = s on E = {1, r^2}.
  const auto phi = table_map(d4, "t", {{{0.0}, {0.0}}, {{2.0}, {1.0}}});
  CHECK(phi.domain_elements().size() == 2);
  CHECK_THROWS_AS(phi(D.rotation(1)), OutsideDomain);
  for (const auto& q : D.elements()) {
    const auto phi_q = translate_map(phi, q);
    std::set<int> translated;
    for (const auto& n : phi.domain_elements()) translated.insert(D.index_of(D.multiply(q, graphing_map(phi, n).point)));
    std::set<int> graph;
    for (const auto& n : d4->n_elements()) {
      if (phi_q.contains(n)) graph.insert(D.index_of(graphing_map(phi_q, n).point));
    }
    CHECK(translated == graph);
  }
}

TEST_CASE("distance bound and classification") {
  auto ab = instantiate_group("abelian:1,1");
  const auto zero = constant_map(ab, {0.0});
  const auto b = graph_distance_bound(zero, Element{2.0, -3.0});
  CHECK(b.bound == doctest::Approx(3.0));
  CHECK(b.witness.point == (Element{2.0, 0.0}));
  CHECK(graph_distance_bound(zero, Element{5.0, 0.0}).bound == 0.0);
  CHECK(classify_point(zero, Element{1.0, 2.0}) == GraphSide::Supergraph);
  CHECK(classify_point(zero, Element{1.0, -2.0}) == GraphSide::Subgraph);
  CHECK(classify_point(zero, Element{1.0, 0.0}) == GraphSide::Graph);
  CHECK(to_string(GraphSide::Graph) == "graph");

  // Heisenberg: the bound is attained and no sampled graph point is closer.
  auto h = instantiate_group("heisenberg");
  const auto phi = linear_map(h, 1.0);
  const Element p{0.0, 0.0, 1.0};
  const auto hb = graph_distance_bound(phi, p);
  CHECK(hb.bound == doctest::Approx(h->group().norm(phi(h->project_n(p)))));
  HaltonSequence seq(2, 4);
  double sampled = 1e300;
  for (int i = 0; i < 1000; ++i) {
    const auto u = seq.next();
    sampled = std::min(sampled, h->group().distance(p, graphing_map(phi, Element{0.0, 4 * u[0] - 2, 4 * u[1] - 2}).point));
  }
  CHECK(hb.bound <= sampled + 1e-12);
}

TEST_CASE("map specs") {
  auto h = instantiate_group("heisenberg");
  CHECK(parse_map_spec(h, "const:0").descriptor() == "const:0");
  CHECK(parse_map_spec(h, "const:0,0,0")(Element{0.0, 1.0, 1.0}) == h->group().identity());
  CHECK_THROWS_AS(parse_map_spec(h, "const:0,1,0"), InvalidSpec);
  CHECK_THROWS_AS(parse_map_spec(h, "const:"), InvalidSpec);
  CHECK_THROWS_AS(parse_map_spec(h, "linear:1,2"), InvalidSpec);
  CHECK_THROWS_AS(parse_map_spec(h, "wiggle:1"), InvalidSpec);
  CHECK_THROWS_AS(parse_map_spec(h, "linear"), InvalidSpec);
  CHECK_THROWS_AS(parse_map_spec(h, "table:/nonexistent/file"), InvalidSpec);
  const auto hom = parse_map_spec(h, "hom:1,0.5");
  CHECK(hom(Element{0.0, 2.0, 4.0})[0] == doctest::Approx(4.0));

  auto d4 = instantiate_group("dihedral:4");
  const auto& D = dynamic_cast<const DihedralGroup&>(d4->group());
  const auto dh = parse_map_spec(d4, "hom:1");
  CHECK(dh(D.rotation(1)) == D.reflection());
  CHECK(dh(D.rotation(2)) == D.identity());
  CHECK_THROWS_AS(parse_map_spec(instantiate_group("dihedral:5"), "hom:1"), InvalidSpec);
  CHECK_THROWS_AS(parse_map_spec(d4, "linear:1"), InvalidSpec);

  for (const auto& g : shipped_group_specs()) {
    auto s = instantiate_group(g);
    for (const auto& m : shipped_map_specs(*s)) {
      CAPTURE(g);
      CAPTURE(m);
      CHECK_NOTHROW(parse_map_spec(s, m));
    }
  }
}

TEST_CASE("table maps") {
  const std::string path = "intrinlip_test_table.tsv";
  {
    std::ofstream out(path);
    out << "# y t value\n0 0 0\n1, 0, 1\n0 1 -1   # trailing comment\n\n1 1 2\n";
  }
  auto h = instantiate_group("heisenberg");
  const auto phi = load_table_map(h, path);
  CHECK(phi.contains(Element{0.0, 0.5, 0.5}));
  CHECK_FALSE(phi.contains(Element{0.0, 1.5, 0.5}));
  CHECK(phi(Element{0.0, 0.9, 0.1})[0] == 1.0);
  CHECK(phi(Element{0.0, 0.9, 0.95})[0] == 2.0);
  {
    std::ofstream out(path);
    out << "0 0\n";
  }
  CHECK_THROWS_AS(load_table_map(h, path), InvalidSpec);
  std::remove(path.c_str());
}

TEST_CASE("domain sampling") {
  auto h = instantiate_group("heisenberg");
  const auto phi = table_map(h, "box", {{{0.0, 0.0}, {0.0}}, {{0.5, 0.5}, {0.0}}});
  const auto pts = sample_domain(phi, SampleBox::uniform(3, -1.0, 1.0), 200, 3);
  CHECK(pts.size() == 200);
  for (const auto& n : pts) CHECK(phi.contains(n));
  const auto tiny = table_map(h, "tiny", {{{0.0, 0.0}, {0.0}}, {{1e-9, 1e-9}, {0.0}}});
  CHECK_THROWS_AS(sample_domain(tiny, SampleBox::uniform(3, -1.0, 1.0), 10, 3), DegenerateSample);
}
