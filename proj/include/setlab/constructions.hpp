#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "setlab/polytope.hpp"

namespace setlab {

/// n subsets T_1..T_n of {0, ..., 2^n - 1} such that every pattern W of
/// {1..n} is realized by some element: m in T_j exactly when j in W.
/// Realized by binary encoding, T_j = {m : bit j-1 of m is set}.
class SubsetFamily {
 public:
  static constexpr int max_n = 20;

  explicit SubsetFamily(int n);

  int n() const noexcept { return n_; }
  std::uint64_t ground_size() const noexcept { return std::uint64_t{1} << n_; }

  /// Membership m in T_j, j 1-based.
  bool contains(int j, std::uint64_t m) const;

  /// Elements of T_j in increasing order, j 1-based.
  std::vector<std::uint64_t> members(int j) const;

  /// The set {j : m in T_j} as a bitmask (bit j-1 for index j).
  std::uint64_t pattern(std::uint64_t m) const;

 private:
  int n_;
};

SubsetFamily combinatorial_family(int n);

/// m_W for W given as 1-based indices; throws on an index outside 1..n.
std::uint64_t witness_element(const SubsetFamily& family, std::span<const int> w);

/// m_W for W given as a bitmask (bit j-1 for index j).
std::uint64_t witness_element_mask(const SubsetFamily& family, std::uint64_t w_mask);

/// Unit vectors e_1..e_n whose combinations dominate the largest coefficient.
struct AuerbachSystem {
  SpaceSpec space;
  std::vector<Point<double>> vectors;

  /// ||sum b_k e_k|| - max |b_k|; nonnegative for an Auerbach system.
  double slack(std::span<const double> coefficients) const;
};

/// The first n canonical basis vectors, an Auerbach system in every l_p.
AuerbachSystem auerbach_canonical(const SpaceSpec& space, int n);

/// V_k = conv{e_{offset+i} : i in T_k}, k = 1..n, in an l-infinity space.
std::vector<Polytope<double>> lemma_sets(int n, Eigen::Index offset, const SpaceSpec& space);

struct CoefficientCertificate {
  /// Witness element m_W; also the coordinate whose functional certifies the bound.
  std::uint64_t direction;
  /// s = sum over W of |a_k|.
  double value;
  /// The chosen index set W as a bitmask.
  std::uint64_t w_mask;
  /// True when W collects the positive coefficients, false for the complement.
  bool positive_side;
};

/// Picks W as the positive-coefficient set or its complement, whichever carries
/// more |a_k| mass, so that s >= (1/2) sum |a_k|.
CoefficientCertificate coefficient_lower_bound(const SubsetFamily& family,
                                               std::span<const double> a);

/// The block family behind the non-convergence construction: block 1 holds
/// indices 1..4 (family size 4), block m >= 2 holds indices 4^{m-1}+1..4^m
/// (family size 4^m - 4^{m-1}). Blocks occupy disjoint coordinate ranges of
/// one l-infinity space.
class BlockFamily {
 public:
  static constexpr int max_blocks = 2;

  struct Block {
    int first_index;  // 1-based global index of the first set in the block
    SubsetFamily family;
    Eigen::Index offset;  // first coordinate of the block
  };

  explicit BlockFamily(int n_max);

  int n_max() const noexcept { return n_max_; }
  const SpaceSpec& space() const noexcept { return space_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  /// Total number of sets N = 4^{n_max}.
  int size() const noexcept { return size_; }
  /// V_i for 1-based i, materialized on demand (a block-2 set holds 2048
  /// generators of dimension 4112).
  Polytope<double> set(int i) const;

  /// Block index and local family index (both 0-based / 1-based) for global set i.
  std::pair<std::size_t, int> locate(int i) const;

 private:
  int n_max_;
  SpaceSpec space_;
  std::vector<Block> blocks_;
  int size_ = 0;
};

BlockFamily counterexample_family(int n_max);

/// max over canonical directions e_m of |(1/N) sum_i (psi_i - 1/2) h(V_i, e_m)|,
/// evaluated block by block from the set memberships without forming any sum.
double certificate_distance(const BlockFamily& family, std::span<const std::uint8_t> psi, int n);

}  // namespace setlab
