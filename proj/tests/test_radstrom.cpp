#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "setlab/radstrom.hpp"

using namespace setlab;

TEST_CASE("direction sets lie on the dual unit sphere") {
  for (auto tag : {NormTag::L1, NormTag::L2, NormTag::Linf}) {
    for (int dim = 1; dim <= 5; ++dim) {
      const SpaceSpec s(dim, tag);
      for (const auto& d : {canonical_directions(s), grid_directions(s, 37), random_directions(s, 50, 9)})
        for (Eigen::Index j = 0; j < d.size(); ++j)
          CHECK(std::abs(oracle::norm(oracle::dual_tag(tag), d.direction(j)) - 1) <= 1e-12);
    }
  }
  CHECK_THROWS(DirectionSet(SpaceSpec(2, NormTag::L2), Matrix<double>::Ones(2, 1),
                            DirectionSet::Provenance::Random));
}

TEST_CASE("planar grids start at angle zero and nest under refinement") {
  const SpaceSpec s(2, NormTag::L2);
  const auto coarse = grid_directions(s, 8);
  const auto fine = grid_directions(s, 32);
  CHECK(coarse.direction(0)(0) == 1);
  CHECK(coarse.direction(0)(1) == 0);
  for (Eigen::Index j = 0; j < coarse.size(); ++j)
    CHECK((coarse.direction(j) - fine.direction(4 * j)).norm() <= 1e-15);
  CHECK(coarse.provenance() == DirectionSet::Provenance::Grid);
  CHECK(to_string(unite(coarse, fine).provenance()) == "union");
  CHECK(unite(coarse, fine).size() == 40);
}

TEST_CASE("random direction sets are reproducible from their seed") {
  const SpaceSpec s(4, NormTag::L1);
  CHECK(random_directions(s, 20, 5).directions() == random_directions(s, 20, 5).directions());
  CHECK(random_directions(s, 20, 5).directions() != random_directions(s, 20, 6).directions());
  CHECK(random_directions(s, 20, 5).fingerprint() == random_directions(s, 20, 5).fingerprint());
  CHECK(random_directions(s, 20, 5).fingerprint() != random_directions(s, 20, 6).fingerprint());
}

TEST_CASE("support views form a vector space") {
  oracle::Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const SpaceSpec s(rng.integer(1, 4), oracle::any_norm(rng));
    const auto a = oracle::random_polytope(rng, s, rng.integer(1, 6));
    const auto b = oracle::random_polytope(rng, s, rng.integer(1, 6));
    const double t = rng.uniform(0, 3), u = rng.uniform(0, 3);
    const auto dirs = random_directions(s, 40, static_cast<std::uint64_t>(trial));
    // R(tA + uB) = t R(A) + u R(B), with tA + uB formed explicitly.
    CHECK(linearity_residual(a, b, t, u, dirs) <= 1e-12);
    const SupportView combo = t * embed(a) + u * embed(b);
    const Vector<double> values = combo.evaluate(dirs);
    for (Eigen::Index j = 0; j < dirs.size(); ++j) {
      const Vector<double> x = dirs.direction(j);
      const double expected = t * oracle::support(a, x) + u * oracle::support(b, x);
      CHECK(std::abs(values(j) - expected) <= 1e-12);
      CHECK(std::abs(combo(x) - expected) <= 1e-12);
    }
    // Cached and uncached evaluation agree; differences are pointwise.
    CHECK(combo.evaluate(dirs) == values);
    const SupportView diff = embed(a) - embed(b);
    CHECK((diff.evaluate(dirs) - (embed(a).evaluate(dirs) - embed(b).evaluate(dirs))).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("sampled embedding distance approaches Hausdorff from below") {
  oracle::Rng rng(67);
  const SpaceSpec s(2, NormTag::L2);
  const auto grid = grid_directions(s, 10000);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = oracle::random_polytope(rng, s, rng.integer(1, 6));
    const auto b = oracle::random_polytope(rng, s, rng.integer(1, 6));
    const double gap = isometry_gap(a, b, grid);
    CHECK(gap >= -1e-9);
    CHECK(gap <= 1e-3);
  }
}

TEST_CASE("embedding of a single body exposes it") {
  const SpaceSpec s(2, NormTag::L2);
  const auto a = Polytope<double>::origin(s);
  CHECK(embed(a).body() != nullptr);
  CHECK((2.0 * embed(a)).body() == nullptr);
  CHECK_THROWS_AS(sampled_distance(embed(a), embed(Polytope<double>::origin(SpaceSpec(3, NormTag::L2))),
                                   canonical_directions(s)),
                  DimensionMismatch);
}
