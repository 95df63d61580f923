#include "setlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace setlab {

SubsetFamily::SubsetFamily(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("subset family needs n >= 1");
  if (n > max_n)
    throw std::invalid_argument("subset family with n = " + std::to_string(n) +
                                " exceeds the supported maximum " + std::to_string(max_n));
}

bool SubsetFamily::contains(int j, std::uint64_t m) const {
  if (j < 1 || j > n_) throw std::out_of_range("family index out of range");
  return (m >> (j - 1)) & 1U;
}

std::vector<std::uint64_t> SubsetFamily::members(int j) const {
  if (j < 1 || j > n_) throw std::out_of_range("family index out of range");
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(ground_size() / 2));
  for (std::uint64_t m = 0; m < ground_size(); ++m)
    if ((m >> (j - 1)) & 1U) out.push_back(m);
  return out;
}

std::uint64_t SubsetFamily::pattern(std::uint64_t m) const {
  if (m >= ground_size()) throw std::out_of_range("element outside the ground set");
  std::uint64_t mask = 0;
  for (int j = 1; j <= n_; ++j)
    if (contains(j, m)) mask |= std::uint64_t{1} << (j - 1);
  return mask;
}

SubsetFamily combinatorial_family(int n) { return SubsetFamily(n); }

std::uint64_t witness_element(const SubsetFamily& family, std::span<const int> w) {
  std::uint64_t mask = 0;
  for (int j : w) {
    if (j < 1 || j > family.n())
      throw std::out_of_range("index " + std::to_string(j) + " is not in 1.." +
                              std::to_string(family.n()));
    mask |= std::uint64_t{1} << (j - 1);
  }
  return witness_element_mask(family, mask);
}

std::uint64_t witness_element_mask(const SubsetFamily& family, std::uint64_t w_mask) {
  if (w_mask >= family.ground_size()) throw std::out_of_range("pattern uses indices beyond n");
  // Binary encoding makes the witness the mask itself.
  return w_mask;
}

double AuerbachSystem::slack(std::span<const double> coefficients) const {
  if (coefficients.size() != vectors.size())
    throw DimensionMismatch("coefficient count does not match the system size");
  Point<double> sum = Point<double>::Zero(space.dim);
  double biggest = 0;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    sum += coefficients[k] * vectors[k];
    biggest = std::max(biggest, std::abs(coefficients[k]));
  }
  return norm(space, sum) - biggest;
}

AuerbachSystem auerbach_canonical(const SpaceSpec& space, int n) {
  if (n < 1 || n > space.dim)
    throw std::invalid_argument("Auerbach system of size " + std::to_string(n) +
                                " does not fit in dimension " + std::to_string(space.dim));
  AuerbachSystem out{space, {}};
  for (int k = 0; k < n; ++k) out.vectors.push_back(Point<double>::Unit(space.dim, k));
  return out;
}

std::vector<Polytope<double>> lemma_sets(int n, Eigen::Index offset, const SpaceSpec& space) {
  const SubsetFamily family(n);
  if (space.norm != NormTag::Linf)
    throw std::invalid_argument("lemma sets are built in an l-infinity space");
  if (offset < 0 || space.dim < offset + static_cast<Eigen::Index>(family.ground_size()))
    throw DimensionMismatch("space dimension " + std::to_string(space.dim) +
                            " cannot hold 2^" + std::to_string(n) + " coordinates at offset " +
                            std::to_string(offset));
  std::vector<Polytope<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const auto members = family.members(k);
    Matrix<double> g = Matrix<double>::Zero(space.dim, static_cast<Eigen::Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c)
      g(offset + static_cast<Eigen::Index>(members[c]), static_cast<Eigen::Index>(c)) = 1.0;
    out.emplace_back(space, std::move(g), "V" + std::to_string(k));
  }
  return out;
}

CoefficientCertificate coefficient_lower_bound(const SubsetFamily& family,
                                               std::span<const double> a) {
  if (static_cast<int>(a.size()) != family.n())
    throw DimensionMismatch("coefficient vector length does not match the family size");
  std::uint64_t positive = 0;
  double pos_mass = 0, neg_mass = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > 0) {
      positive |= std::uint64_t{1} << k;
      pos_mass += a[k];
    } else {
      neg_mass -= a[k];
    }
  }
  const std::uint64_t all = family.ground_size() - 1;
  CoefficientCertificate out{};
  out.positive_side = pos_mass >= neg_mass;
  out.w_mask = out.positive_side ? positive : (all & ~positive);
  out.value = out.positive_side ? pos_mass : neg_mass;
  out.direction = witness_element_mask(family, out.w_mask);
  return out;
}

BlockFamily::BlockFamily(int n_max) : n_max_(n_max) {
  if (n_max < 1) throw std::invalid_argument("block family needs n_max >= 1");
  if (n_max > max_blocks)
    throw std::invalid_argument(
        "n_max = " + std::to_string(n_max) +
        " is out of reach: block 3 carries 48 sets and needs 2^48 coordinates; the supported "
        "maximum is n_max = 2 (dimension 2^4 + 2^12 = 4112)");
  Eigen::Index dim = 0;
  int first = 1;
  for (int m = 1; m <= n_max; ++m) {
    const int size = m == 1 ? 4 : (1 << (2 * m)) - (1 << (2 * (m - 1)));
    blocks_.push_back({first, SubsetFamily(size), dim});
    dim += static_cast<Eigen::Index>(blocks_.back().family.ground_size());
    first += size;
  }
  space_ = SpaceSpec(dim, NormTag::Linf);
  size_ = first - 1;
}

Polytope<double> BlockFamily::set(int i) const {
  const auto [b, k] = locate(i);
  const Block& block = blocks_[b];
  const auto members = block.family.members(k);
  Matrix<double> g = Matrix<double>::Zero(space_.dim, static_cast<Eigen::Index>(members.size()));
  for (std::size_t c = 0; c < members.size(); ++c)
    g(block.offset + static_cast<Eigen::Index>(members[c]), static_cast<Eigen::Index>(c)) = 1.0;
  return Polytope<double>(space_, std::move(g), "V" + std::to_string(i));
}

std::pair<std::size_t, int> BlockFamily::locate(int i) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const int lo = blocks_[b].first_index;
    if (i >= lo && i < lo + blocks_[b].family.n()) return {b, i - lo + 1};
  }
  throw std::out_of_range("set index " + std::to_string(i) + " outside the family");
}

BlockFamily counterexample_family(int n_max) { return BlockFamily(n_max); }

double certificate_distance(const BlockFamily& family, std::span<const std::uint8_t> psi, int n) {
  if (n != family.size())
    throw DimensionMismatch("N must equal 4^n_max = " + std::to_string(family.size()));
  if (static_cast<int>(psi.size()) != n)
    throw DimensionMismatch("psi has length " + std::to_string(psi.size()) + ", expected " +
                            std::to_string(n));
  // Within block b, h(V_i, e_m) = [m in T_k] and h(V_i, -e_m) = -[T_k = {m}]
  // for coordinates m of the block; both vanish outside the block.
  double best = 0;
  for (const auto& block : family.blocks()) {
    const SubsetFamily& fam = block.family;
    std::vector<double> coeff(static_cast<std::size_t>(fam.n()));
    for (int k = 1; k <= fam.n(); ++k) {
      const auto v = psi[static_cast<std::size_t>(block.first_index + k - 2)];
      if (v > 1) throw std::invalid_argument("psi entries must be 0 or 1");
      coeff[static_cast<std::size_t>(k - 1)] = static_cast<double>(v) - 0.5;
    }
    for (std::uint64_t m = 0; m < fam.ground_size(); ++m) {
      double plus = 0;
      for (int k = 1; k <= fam.n(); ++k)
        if ((m >> (k - 1)) & 1U) plus += coeff[static_cast<std::size_t>(k - 1)];
      best = std::max(best, std::abs(plus));
      // -e_m only sees singleton sets, which occur for a one-set family.
      if (fam.n() == 1 && m == 1) best = std::max(best, std::abs(coeff[0]));
    }
  }
  return best / static_cast<double>(n);
}

}  // namespace setlab
