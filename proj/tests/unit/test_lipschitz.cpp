#include <doctest.h>

#include <cmath>

#include "intrinlip/errors.hpp"
#include "intrinlip/lipschitz.hpp"
#include "intrinlip/zoo.hpp"
#include "oracles.hpp"

using namespace intrinlip;

namespace {

std::vector<Element> n_offsets(const Splitting& s, int count, std::uint64_t seed) {
  const SampleBox box = SampleBox::uniform(s.group().dimension(), -1.0, 1.0);
  HaltonSequence seq(s.n_sample_dim(), seed);
  std::vector<Element> out;
  for (int i = 0; i < count; ++i) out.push_back(s.sample_n(seq.next(), box));
  return out;
}

}  // namespace

TEST_CASE("graph-pair constant closed forms") {
  auto ab = instantiate_group("abelian:1,1");
  const SampleBox box = SampleBox::uniform(2, -1.0, 1.0);
  const auto two = linear_map(ab, 2.0);
  CHECK(fssc_constant(two, sample_domain_pairs(two, box, 500, 1)).value == doctest::Approx(2.0).epsilon(1e-12));
  const auto zero = constant_map(ab, {0.3});
  CHECK(fssc_constant(zero, sample_domain_pairs(zero, box, 500, 1)).value == 0.0);

  // D4 with phi(1) = 1, phi(r^2) = s: the only nontrivial pair gives x^-1 x' = r^2 s,
  // so the ratio is |s| / |r^2| by the permutation-model word lengths.
  oracle::DihedralPerm perm{4};
  const double want = static_cast<double>(perm.word_length(0, 1)) / perm.word_length(2, 0);
  auto d4 = instantiate_group("dihedral:4");
  const auto phi = table_map(d4, "t", {{{0.0}, {0.0}}, {{2.0}, {1.0}}});
  const auto pairs = enumerate_domain_pairs(phi);
  CHECK(pairs.size() == 2);
  CHECK(fssc_constant(phi, pairs).value == want);

  CHECK_THROWS_AS(fssc_constant(zero, std::vector<BasePair>{}), DegenerateSample);
}

TEST_CASE("base-point conditions on linear abelian maps") {
  auto ab = instantiate_group("abelian:1,1");
  const double lambda = 1.5;
  const auto phi = linear_map(ab, lambda);
  const auto offsets = n_offsets(*ab, 400, 3);
  for (const Element& m : {Element{0.0, 0.0}, Element{0.7, 0.0}}) {
    for (ConditionId id : {ConditionId::C1, ConditionId::C2, ConditionId::C3}) {
      CHECK(condition_constant(phi, id, m, offsets).value == doctest::Approx(lambda).epsilon(1e-12));
    }
    CHECK(condition_constant(phi, ConditionId::C4, m, offsets).value ==
          doctest::Approx(std::sqrt(1 + lambda * lambda)).epsilon(1e-12));
    CHECK(condition_constant(phi, ConditionId::C5, m, offsets).value ==
          doctest::Approx(std::sqrt(1 + lambda * lambda)).epsilon(1e-12));
  }
  CHECK(to_string(ConditionId::Fssc) == "fssc");
  CHECK(to_string(ConditionId::C6) == "c6");
}

TEST_CASE("conditions one and two agree on the Heisenberg group") {
  auto h = instantiate_group("heisenberg");
  const auto phi = linear_map(h, 0.5);
  const auto offsets = n_offsets(*h, 2000, 5);
  const Element m = h->group().identity();
  const double c1 = condition_constant(phi, ConditionId::C1, m, offsets).value;
  const double c2 = condition_constant(phi, ConditionId::C2, m, offsets).value;
  CHECK(std::abs(c1 - c2) <= 1e-6 * (1 + c2));
}

TEST_CASE("cone separation") {
  auto ab = instantiate_group("abelian:1,1");
  const double lambda = 2.0;
  const auto phi = linear_map(ab, lambda);
  const auto bases = n_offsets(*ab, 300, 8);
  const Element m{0.2, 0.0};
  CHECK(cone_separation_test(phi, m, lambda * 1.01, ConeFamily::SplitLeft, bases).separated);
  const auto below = cone_separation_test(phi, m, lambda * 0.99, ConeFamily::SplitLeft, bases);
  CHECK_FALSE(below.separated);
  REQUIRE(below.witness.has_value());
  // The witness is a graph point inside the cone at the vertex.
  const Element p = graphing_map(phi, m).point;
  CHECK(minimal_opening(*ab, ConeFamily::SplitLeft, ConeHalf::Full, p, *below.witness) <= 1.0 / (lambda * 0.99));

  ConditionOptions wide;
  wide.opening = 1.0 / (lambda * 0.99);
  CHECK(std::isinf(condition_constant(phi, ConditionId::C6, m, bases, wide).value));
  ConditionOptions narrow;
  narrow.opening = 1.0 / (lambda * 1.01);
  CHECK(condition_constant(phi, ConditionId::C6, m, bases, narrow).value == 0.0);

  // D4 at the exact graph-pair constant, every group element as a cone point.
  auto d4 = instantiate_group("dihedral:4");
  const auto t = table_map(d4, "t", {{{0.0}, {0.0}}, {{2.0}, {1.0}}});
  const double L = fssc_constant(t, enumerate_domain_pairs(t)).value;
  for (const auto& base : t.domain_elements()) {
    CHECK(cone_separation_test(t, base, L, ConeFamily::SplitLeft, t.domain_elements()).separated);
    SeparationOptions closed;
    closed.closed_at_L = true;
    CHECK_FALSE(cone_separation_test(t, base, L, ConeFamily::SplitLeft, t.domain_elements(), closed).separated);
  }
}

TEST_CASE("half-cone containment") {
  auto ab = instantiate_group("abelian:1,1");
  const SampleBox box = SampleBox::uniform(2, -1.0, 1.0);
  const std::vector<Element> bases{Element{0.0, 0.0}, Element{0.3, 0.0}};
  const auto zero = constant_map(ab, {0.0});
  CHECK(halfcone_graph_test(zero, 0.5, bases, 500, 1, box).contained);
  const auto two = linear_map(ab, 2.0);
  const auto tight = halfcone_graph_test(two, 2.0 + 1e-9, bases, 2000, 1, box);
  CHECK(tight.contained);
  const auto wide = halfcone_graph_test(two, 1.0, bases, 2000, 1, box);
  REQUIRE_FALSE(wide.contained);
  REQUIRE(wide.witness.has_value());
  // Oracle: the witness lies on the wrong side of the line y = 2x.
  const Element w = *wide.witness;
  const Element v = *wide.witness_vertex;
  const double above = w[1] - 2.0 * w[0];
  const double up = w[1] - v[1];
  CHECK(above * up < 0.0);
  CHECK_THROWS_AS(halfcone_graph_test(parse_map_spec(instantiate_group("dihedral:4"), "const:0"), 1.0,
                                      std::vector<Element>{Element{0.0, 0.0}}, 1, 1, box),
                  AxisMissing);
}

TEST_CASE("projection of translated graphs") {
  auto ab = instantiate_group("abelian:1,1");
  const auto offsets = n_offsets(*ab, 500, 2);
  const Element m{0.1, 0.0};
  const auto half = graph_projection_constant(linear_map(ab, 0.5), 0.5, m, 2.0, offsets);
  CHECK(half.bound == doctest::Approx(1.0));
  CHECK(half.value <= 1.0 + 1e-6);
  const auto quarter = graph_projection_constant(linear_map(ab, 0.25), 0.25, m, 2.0, offsets);
  CHECK(quarter.value <= 1.0 / 3.0 + 1e-6);
  CHECK(graph_projection_constant(constant_map(ab, {1.0}), 0.1, m, 2.0, offsets).value == 0.0);
  CHECK_THROWS_AS(graph_projection_constant(linear_map(ab, 0.5), 1.0, m, 2.0, offsets), InvalidSpec);
}

TEST_CASE("limit stability") {
  auto ab = instantiate_group("abelian:1,1");
  const double lambda = 1.5;
  std::vector<IntrinsicMap> seq;
  for (double h : {1.0, 10.0, 100.0, 1e4, 1e8}) seq.push_back(linear_map(ab, lambda * (1 + 1 / h)));
  const auto limit = linear_map(ab, lambda);
  const auto pairs = sample_domain_pairs(limit, SampleBox::uniform(2, -1, 1), 300, 4);
  const auto r = limit_stability_check(seq, limit, 2 * lambda, pairs);
  CHECK(r.certified);
  CHECK(r.holds);
  CHECK(r.limit_constant == doctest::Approx(lambda));
  CHECK(r.sequence_constant == doctest::Approx(2 * lambda));

  const std::vector<IntrinsicMap> constant{limit};
  CHECK(limit_stability_check(constant, limit, lambda, pairs).holds);
  const std::vector<IntrinsicMap> far{linear_map(ab, 3.0)};
  CHECK_THROWS_AS(limit_stability_check(far, limit, lambda, pairs), NotConverged);

  // Heisenberg: phi_h = (lambda y + 1/h) converges to (lambda y).
  auto hz = instantiate_group("heisenberg");
  std::vector<IntrinsicMap> hseq;
  for (double h : {1.0, 100.0, 1e8}) hseq.push_back(linear_map(hz, 0.5, 1 / h));
  const auto hl = linear_map(hz, 0.5);
  const auto hp = sample_domain_pairs(hl, SampleBox::uniform(3, -1, 1), 300, 4);
  const auto hr = limit_stability_check(hseq, hl, 10.0, hp);
  CHECK(hr.holds);
  CHECK(hr.limit_constant <= hr.sequence_constant + 1e-6 * (1 + hr.sequence_constant));
}

TEST_CASE("metric and intrinsic constants on normal codomains") {
  auto ab = instantiate_group("abelian:1,1");
  const double lambda = 2.0;
  const auto phi = linear_map(ab, lambda);
  const auto pairs = sample_domain_pairs(phi, SampleBox::uniform(2, -1, 1), 400, 6);
  const auto r = metric_vs_intrinsic(phi, pairs);
  CHECK(r.metric == doctest::Approx(std::sqrt(1 + lambda * lambda)));
  CHECK(r.intrinsic == doctest::Approx(lambda));
  CHECK(r.worst_metric_excess <= 1e-9);
  CHECK(r.worst_intrinsic_excess <= 1e-9);
  const auto c = metric_vs_intrinsic(constant_map(ab, {0.5}), pairs);
  CHECK(c.metric == doctest::Approx(1.0));
  CHECK(c.intrinsic == 0.0);

  auto sw = instantiate_group("affine:swapped");
  const auto hom = parse_map_spec(sw, "hom:1");
  const auto sp = sample_domain_pairs(hom, SampleBox::uniform(2, -1, 1), 400, 6);
  const auto rs = metric_vs_intrinsic(hom, sp);
  CHECK(rs.worst_metric_excess <= 1e-6);
  CHECK(rs.worst_intrinsic_excess <= 1e-6);
  CHECK_THROWS_AS(metric_vs_intrinsic(linear_map(instantiate_group("heisenberg"), 1.0), pairs), WrongNormalSide);
}
