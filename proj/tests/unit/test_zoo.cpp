#include <doctest.h>

#include "intrinlip/errors.hpp"
#include "intrinlip/zoo.hpp"
#include "oracles.hpp"

using namespace intrinlip;

TEST_CASE("dihedral law and word metric agree with the permutation model") {
  for (int n : {3, 4, 5, 8, 12}) {
    CAPTURE(n);
    DihedralGroup D(n);
    oracle::DihedralPerm perm{n};
    for (int a = 0; a < 2 * n; ++a) {
      const auto ga = D.element_at(a);
      const auto pa = perm.element(a % n, a / n);
      CHECK(D.norm(ga) == perm.word_length(a % n, a / n));
      for (int b = 0; b < 2 * n; ++b) {
        const auto got = D.multiply(ga, D.element_at(b));
        const auto want = perm.decode(oracle::DihedralPerm::compose(pa, perm.element(b % n, b / n)));
        CHECK(D.index_of(got) == want[0] + n * want[1]);
      }
      CHECK(D.multiply(ga, D.inverse(ga)) == D.identity());
    }
    CHECK(D.table().symmetric_generators());
  }
}

TEST_CASE("dihedral word metric examples") {
  DihedralGroup D(4);
  CHECK(D.norm(D.rotation(1)) == 1.0);
  CHECK(D.norm(D.multiply(D.rotation(2), D.reflection())) == 3.0);
  CHECK(D.distance(D.rotation(1), D.rotation(1)) == 0.0);
  CHECK(word_metric_distance(D, D.rotation(1), D.rotation(3)) == 2);
}

TEST_CASE("group spec parsing") {
  CHECK(GroupSpec::parse("heisenberg").kind == GroupSpec::Kind::Heisenberg);
  const auto ab = GroupSpec::parse("abelian:2,1");
  CHECK(ab.kind == GroupSpec::Kind::AbelianPlane);
  CHECK(ab.m == 2);
  CHECK(ab.k == 1);
  CHECK(GroupSpec::parse("dihedral:6").n == 6);
  CHECK(GroupSpec::parse("affine:swapped").swapped);
  CHECK(GroupSpec::parse("abelian:2,1").to_string() == "abelian:2,1");
  for (const char* bad : {"", "sl2", "dihedral:1", "dihedral:x", "abelian:0,1", "abelian:5,5",
                          "abelian:1", "affine:other"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(instantiate_group(bad), InvalidSpec);
  }
}

TEST_CASE("shipped instances have the documented normal sides and axes") {
  CHECK(instantiate_group("abelian:1,1")->normal_side() == NormalSide::Both);
  CHECK(instantiate_group("abelian:1,1")->has_axis());
  CHECK_FALSE(instantiate_group("abelian:1,2")->has_axis());
  CHECK(instantiate_group("heisenberg")->normal_side() == NormalSide::N);
  CHECK(instantiate_group("heisenberg")->has_axis());
  CHECK(instantiate_group("affine")->normal_side() == NormalSide::N);
  CHECK(instantiate_group("affine:swapped")->normal_side() == NormalSide::H);
  CHECK_FALSE(instantiate_group("affine:swapped")->has_axis());
  CHECK(instantiate_group("dihedral:4")->normal_side() == NormalSide::N);
  CHECK(instantiate_group("dihedral:4")->n_elements().size() == 4);
  CHECK(instantiate_group("dihedral:4")->h_elements().size() == 2);
}

TEST_CASE("geodesic axes are one-parameter subgroups at unit speed") {
  for (const char* spec : {"abelian:1,1", "heisenberg", "affine"}) {
    CAPTURE(spec);
    auto s = instantiate_group(spec);
    for (double t : {-2.5, -1.0, -0.1, 0.0, 0.3, 1.0, 4.0}) {
      CHECK(s->group().norm(s->axis_point(t)) == doctest::Approx(std::abs(t)).epsilon(1e-12));
      CHECK(s->group().chart_residual(s->group().multiply(s->axis_point(t), s->axis_point(0.75)),
                                      s->axis_point(t + 0.75)) < 1e-12);
    }
  }
}
