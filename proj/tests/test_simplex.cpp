#include <doctest.h>

#include "oracles.hpp"
#include "setlab/min_norm_point.hpp"
#include "setlab/simplex.hpp"

using namespace setlab;

TEST_CASE("simplex matches vertex enumeration on random two-variable programs") {
  oracle::Rng rng(7);
  int optimal = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int m = rng.integer(1, 6);
    lp::Problem<double> p;
    p.A.resize(m, 2);
    p.b.resize(m);
    for (int r = 0; r < m; ++r) {
      p.A(r, 0) = rng.uniform(-1, 2);
      p.A(r, 1) = rng.uniform(-1, 2);
      p.b(r) = rng.uniform(-0.5, 3);
    }
    // A bounding row keeps the program bounded.
    p.A.conservativeResize(m + 1, 2);
    p.b.conservativeResize(m + 1);
    p.A.row(m) << 1, 1;
    p.b(m) = 10;
    p.sense.assign(m + 1, lp::RowSense::LessEqual);
    Vector<double> gain(2);
    gain << rng.uniform(-1, 1), rng.uniform(-1, 1);
    p.c = -gain;  // the solver minimizes
    const double expected = oracle::lp2_max(p.A, p.b, gain);
    const auto r = lp::solve(p);
    if (std::isinf(expected)) {
      CHECK(r.status == lp::Status::Infeasible);
      continue;
    }
    REQUIRE(r.status == lp::Status::Optimal);
    ++optimal;
    CHECK(-r.objective == doctest::Approx(expected).epsilon(1e-9));
    CHECK(r.residual <= 1e-9);
  }
  CHECK(optimal > 100);
}

TEST_CASE("simplex handles equality and >= rows, unboundedness and infeasibility") {
  lp::Problem<double> p;
  p.A.resize(2, 3);
  p.A << 1, 1, 1,
         1, -1, 0;
  p.b.resize(2);
  p.b << 1, 0.2;
  p.sense = {lp::RowSense::Equal, lp::RowSense::GreaterEqual};
  p.c.resize(3);
  p.c << 1, 2, 3;
  // x2 >= 0 is cheapest at x2 = 0: x0 + x1 = 1 with x0 - x1 >= 0.2 -> x0 = 1, x1 = 0 costs 1.
  auto r = lp::solve(p);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == doctest::Approx(1.0));

  p.c << -1, 0, 0;
  p.sense = {lp::RowSense::GreaterEqual, lp::RowSense::GreaterEqual};
  CHECK(lp::solve(p).status == lp::Status::Unbounded);

  p.sense = {lp::RowSense::Equal, lp::RowSense::Equal};
  p.b << -1, 0;
  CHECK(lp::solve(p).status == lp::Status::Infeasible);

  lp::Problem<double> f = p;
  f.b << 1, 0;
  f.c.resize(0);
  const auto feas = lp::find_feasible(f);
  REQUIRE(feas.status == lp::Status::Optimal);
  CHECK((f.A * feas.x - f.b).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(feas.x.minCoeff() >= 0);
}

TEST_CASE("degenerate programs terminate") {
  // Many redundant rows through the optimum.
  lp::Problem<double> p;
  const int m = 30;
  p.A.resize(m, 2);
  p.b.resize(m);
  for (int r = 0; r < m; ++r) {
    const double t = static_cast<double>(r) / m;
    p.A.row(r) << t, 1 - t;
    p.b(r) = 1;  // every row passes through (1, 1)
  }
  p.sense.assign(m, lp::RowSense::LessEqual);
  p.c.resize(2);
  p.c << -1, -1;
  const auto r = lp::solve(p);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == doctest::Approx(-2.0));
}

TEST_CASE("Wolfe min-norm point agrees with a projected-gradient oracle") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = rng.integer(1, 5), k = rng.integer(1, 8);
    Matrix<double> pts(d, k);
    for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = rng.uniform(-1, 2);
    const auto r = min_norm_point<double>(pts);
    REQUIRE(r.converged);
    CHECK(r.weights.minCoeff() >= 0);
    CHECK(r.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((pts * r.weights - r.point).norm() <= 1e-12);
    // Optimality: no column improves on the point, <x, p_i> >= ||x||^2.
    const double sq = r.point.squaredNorm();
    CHECK((pts.transpose() * r.point).minCoeff() >= sq - 1e-9);
    // Projected gradient on the simplex reaches the same value from above.
    Vector<double> w = Vector<double>::Constant(k, 1.0 / k);
    for (int it = 0; it < 20000; ++it) {
      Vector<double> grad = pts.transpose() * (pts * w);
      w -= 0.05 * grad;
      // Euclidean projection onto the simplex (sort-based).
      std::vector<double> u(w.data(), w.data() + k);
      std::sort(u.rbegin(), u.rend());
      double cum = 0, theta = 0;
      for (int j = 0; j < k; ++j) {
        cum += u[j];
        const double t = (cum - 1) / (j + 1);
        if (u[j] - t > 0) theta = t;
      }
      w = (w.array() - theta).cwiseMax(0.0);
    }
    CHECK(r.distance <= (pts * w).norm() + 1e-9);
    CHECK(r.distance >= (pts * w).norm() - 1e-4);
  }
}
