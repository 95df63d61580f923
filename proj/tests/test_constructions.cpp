#include <doctest.h>

#include "oracles.hpp"
#include "setlab/constructions.hpp"
#include "setlab/radstrom.hpp"

using namespace setlab;

TEST_CASE("subset family witnesses every pattern (exhaustive, n <= 12)") {
  for (int n = 1; n <= 12; ++n) {
    const SubsetFamily f(n);
    REQUIRE(f.ground_size() == (std::uint64_t{1} << n));
    for (std::uint64_t w = 0; w < f.ground_size(); ++w) {
      const std::uint64_t m = witness_element_mask(f, w);
      bool ok = m < f.ground_size();
      for (int j = 1; j <= n; ++j) ok = ok && f.contains(j, m) == static_cast<bool>((w >> (j - 1)) & 1U);
      CHECK(ok);
      CHECK(f.pattern(m) == w);
    }
  }
}

TEST_CASE("subset family members and bounds") {
  const SubsetFamily f(3);
  CHECK(f.members(1) == std::vector<std::uint64_t>{1, 3, 5, 7});
  CHECK(f.members(3) == std::vector<std::uint64_t>{4, 5, 6, 7});
  const int w[] = {1, 3};
  CHECK(witness_element(f, w) == 5);
  const int bad[] = {4};
  CHECK_THROWS_AS(witness_element(f, bad), std::out_of_range);
  CHECK_THROWS_AS(f.contains(0, 1), std::out_of_range);
  CHECK_THROWS(SubsetFamily(0));
  CHECK_THROWS(SubsetFamily(SubsetFamily::max_n + 1));
}

TEST_CASE("canonical bases are Auerbach systems in every l_p") {
  oracle::Rng rng(71);
  for (auto tag : {NormTag::L1, NormTag::L2, NormTag::Linf}) {
    const SpaceSpec s(6, tag);
    const auto sys = auerbach_canonical(s, 5);
    for (const auto& v : sys.vectors) CHECK(oracle::norm(tag, v) == 1);
    for (int t = 0; t < 100; ++t) {
      std::vector<double> b(5);
      for (auto& x : b) x = rng.uniform(-3, 3);
      CHECK(sys.slack(b) >= -1e-15);
    }
  }
  CHECK_THROWS(auerbach_canonical(SpaceSpec(3, NormTag::L2), 4));
}

TEST_CASE("coefficient certificate against brute force over all index sets") {
  oracle::Rng rng(73);
  const int n = 8;
  const SubsetFamily f(n);
  const SpaceSpec s(std::int64_t{1} << n, NormTag::Linf);
  const auto sets = lemma_sets(n, 0, s);
  for (const auto& v : sets) CHECK(v.size() == 128);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(n);
    for (auto& x : a) x = rng.uniform(-1, 1);
    const auto cert = coefficient_lower_bound(f, a);
    double total = 0, best = 0;
    for (double x : a) total += std::abs(x);
    // Brute force: max over W of |sum_{k in W} a_k|.
    for (std::uint64_t w = 0; w < f.ground_size(); ++w) {
      double sum = 0;
      for (int k = 0; k < n; ++k)
        if ((w >> k) & 1U) sum += a[k];
      best = std::max(best, std::abs(sum));
    }
    CHECK(cert.value == doctest::Approx(best).epsilon(1e-14));
    CHECK(cert.value >= 0.5 * total - 1e-15);
    // The certificate direction evaluates the combination to +-s.
    double at_direction = 0;
    for (int k = 0; k < n; ++k)
      at_direction += a[k] * sets[k].generators().row(static_cast<Eigen::Index>(cert.direction)).maxCoeff();
    CHECK(std::abs(at_direction) == doctest::Approx(cert.value).epsilon(1e-14));
  }
}

TEST_CASE("lemma sets need an l-infinity space of the right size") {
  CHECK_THROWS(lemma_sets(3, 0, SpaceSpec(8, NormTag::L2)));
  CHECK_THROWS_AS(lemma_sets(3, 1, SpaceSpec(8, NormTag::Linf)), DimensionMismatch);
  const auto sets = lemma_sets(2, 3, SpaceSpec(8, NormTag::Linf));
  CHECK(sets[0].generator(0) == Vector<double>::Unit(8, 4));  // coordinate 3 + element 1
  CHECK(sets[1].tag() == "V2");
}

TEST_CASE("block family layout") {
  const BlockFamily one(1);
  CHECK(one.size() == 4);
  CHECK(one.space().dim == 16);
  const BlockFamily two(2);
  CHECK(two.size() == 16);
  CHECK(two.space().dim == 16 + 4096);
  REQUIRE(two.blocks().size() == 2);
  CHECK(two.blocks()[1].first_index == 5);
  CHECK(two.blocks()[1].family.n() == 12);
  CHECK(two.blocks()[1].offset == 16);
  CHECK(two.locate(5) == std::pair<std::size_t, int>{1, 1});
  CHECK(two.set(5).size() == 2048);
  CHECK(two.set(16).generator(0)(16 + 2048) == 1);  // first member of T_12 is 2^11
  CHECK_THROWS_AS(two.locate(17), std::out_of_range);
  CHECK_THROWS_AS(BlockFamily(3), std::invalid_argument);
}

namespace {

struct Profile {
  Vector<double> up, down;  // h(V_i, e_m) and h(V_i, -e_m) for every m
};

std::vector<Profile> canonical_profiles(const BlockFamily& fam) {
  std::vector<Profile> out;
  for (int i = 1; i <= fam.size(); ++i) {
    const auto v = fam.set(i);
    out.push_back({v.generators().rowwise().maxCoeff(), -v.generators().rowwise().minCoeff()});
  }
  return out;
}

// max over +-e_m of |(1/N) sum psi_i h(V_i, .) - (1/2N) sum h(V_i, .)|.
double canonical_oracle(const std::vector<Profile>& profiles, const std::vector<std::uint8_t>& psi) {
  const auto n = static_cast<double>(profiles.size());
  Vector<double> up = Vector<double>::Zero(profiles.front().up.size()), down = up;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const double c = (psi[i] - 0.5) / n;
    up += c * profiles[i].up;
    down += c * profiles[i].down;
  }
  return std::max(up.cwiseAbs().maxCoeff(), down.cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("certificate distance matches the canonical-direction oracle, n_max = 1 exhaustive") {
  const BlockFamily fam(1);
  const auto profiles = canonical_profiles(fam);
  double lowest = 1;
  for (int k = 0; k < 16; ++k) {
    std::vector<std::uint8_t> psi(4);
    for (int i = 0; i < 4; ++i) psi[i] = (k >> i) & 1;
    const double c = certificate_distance(fam, psi, 4);
    CHECK(c == doctest::Approx(canonical_oracle(profiles, psi)).epsilon(1e-15));
    lowest = std::min(lowest, c);
  }
  // Frozen from the exhaustive run: half the majority count over N.
  CHECK(lowest == 0.25);
}

TEST_CASE("certificate distance at n_max = 2 on sampled patterns") {
  const BlockFamily fam(2);
  const auto profiles = canonical_profiles(fam);
  oracle::Rng rng(79);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint8_t> psi(16);
    for (auto& v : psi) v = static_cast<std::uint8_t>(rng.integer(0, 1));
    const double c = certificate_distance(fam, psi, 16);
    CHECK(c == doctest::Approx(canonical_oracle(profiles, psi)).epsilon(1e-15));
    CHECK(c >= 3.0 / 16);
  }
  std::vector<std::uint8_t> psi(16, 0);
  CHECK_THROWS_AS(certificate_distance(fam, psi, 4), DimensionMismatch);
  psi[0] = 2;
  CHECK_THROWS(certificate_distance(fam, psi, 16));
}
