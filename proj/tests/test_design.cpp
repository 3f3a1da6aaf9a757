#include "doctest.h"
#include "support.hpp"
#include "trajnyq/design.hpp"
#include "trajnyq/error.hpp"

#include <cmath>
#include <vector>

using namespace trajnyq;
using namespace testing;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidInput;
}

// Shortest nonzero lattice vector by brute force over a generous coefficient range.
Vec shortest_by_enumeration(const std::vector<Vec>& b, int range) {
  Vec best;
  double len = 1e300;
  for (int i = -range; i <= range; ++i)
    for (int j = -range; j <= range; ++j) {
      if (i == 0 && j == 0) continue;
      const Vec x = i * b[0] + j * b[1];
      if (x.norm() < len) {
        len = x.norm();
        best = x;
      }
    }
  return best;
}

// Whether x sits on some line w + sum m_i v_i + t v_d with integer m.
bool on_lines(const UniformLinesD& s, const Vec& x) {
  const int d = s.dim;
  Mat B(d, d);
  for (int i = 0; i < d; ++i) B.col(i) = s.basis[static_cast<std::size_t>(i)];
  const Vec coeff = B.fullPivLu().solve(x - s.w);
  for (int i = 0; i + 1 < d; ++i)
    if (std::abs(coeff[i] - std::round(coeff[i])) > 1e-8) return false;
  return true;
}

}  // namespace

TEST_SUITE("design") {
  TEST_CASE("uniform lines in the plane") {
    const double eps = 1e-6;
    SUBCASE("disc") {
      const auto r = optimal_uniform_2d(disc(1.0), eps);
      const auto& L = std::get<UniformLines2D>(r.set);
      CHECK(L.delta == doctest::Approx(kPi - eps).epsilon(1e-14));
      CHECK(r.density == doctest::Approx(1.0 / kPi).epsilon(1e-5));
      CHECK(r.critical_density == doctest::Approx(1.0 / kPi).epsilon(1e-14));
      CHECK(r.verdict.status == Status::Nyquist);
    }
    SUBCASE("triangle") {
      const auto r = optimal_uniform_2d(right_triangle(1.0), eps);
      const auto& L = std::get<UniformLines2D>(r.set);
      CHECK(std::abs(L.normal().dot(v2(0, 1))) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(L.delta == doctest::Approx(2 * kPi - eps).epsilon(1e-12));
      CHECK(r.density == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-5));
    }
    SUBCASE("rectangle") {
      const auto r = optimal_uniform_2d(rectangle(2.0, 1.0), eps);
      const auto& L = std::get<UniformLines2D>(r.set);
      CHECK(std::abs(L.normal()[1]) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(r.density == doctest::Approx(1.0 / kPi).epsilon(1e-5));
    }
    SUBCASE("epsilon range") {
      CHECK(kind_of([] { optimal_uniform_2d(disc(1.0), 0.0); }) == ErrorKind::EpsilonOutOfRange);
      CHECK(kind_of([] { optimal_uniform_2d(disc(1.0), kPi); }) == ErrorKind::EpsilonOutOfRange);
    }
  }

  TEST_CASE("designs re-check as Nyquist and densities fall as epsilon shrinks") {
    Rng rng(3);
    for (int trial = 0; trial < 15; ++trial) {
      const auto omega = random_polygon(rng, 8, rng.uniform(0.5, 3.0));
      const double bound = 2 * kPi / width_direction(omega).width;
      double last = 1e300;
      for (double f : {0.9, 0.5, 0.2, 0.05, 1e-3, 1e-6}) {
        const auto r = optimal_uniform_2d(omega, f * bound);
        CHECK(check(r.set, omega).status == Status::Nyquist);
        CHECK(r.density < last);
        CHECK(r.density >= r.critical_density);
        last = r.density;
      }
      CHECK(last == doctest::Approx(width_direction(omega).width / (2 * kPi)).epsilon(1e-5));
    }
  }

  TEST_CASE("hyperplane designs") {
    const double eps = 1e-6;
    const auto ball = ConvexBody::ball(Vec::Zero(3), 2.0, true);
    const auto r = optimal_hyperplane_set(ball, eps);
    CHECK(r.density == doctest::Approx(2.0 / kPi).epsilon(1e-5));
    CHECK(r.verdict.status == Status::Nyquist);

    const auto cub = optimal_hyperplane_set(ConvexBody::box(v3(1, 2, 3)), eps);
    const auto& H = std::get<HyperplaneSet>(cub.set);
    CHECK(std::abs(H.h[0]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(H.delta == doctest::Approx(kPi - eps).epsilon(1e-12));

    // Homogeneity: densities scale with the body.
    for (double alpha : {0.5, 3.0}) {
      const auto s = optimal_hyperplane_set(ConvexBody::box(v3(1, 2, 3)).scaled(alpha), eps);
      CHECK(s.critical_density == doctest::Approx(alpha * cub.critical_density).epsilon(1e-12));
    }
  }

  TEST_CASE("closed-form lattice designs in R^3") {
    const double eps = 1e-6;
    SUBCASE("ball") {
      const auto r = optimal_uniform_d(ConvexBody::ball(Vec::Zero(3), 1.0, true), eps, {SearchKind::ClosedForm});
      CHECK(r.critical_density == doctest::Approx(std::sqrt(3.0) / (2 * kPi * kPi)).epsilon(1e-12));
      CHECK(r.density == doctest::Approx(r.critical_density).epsilon(1e-5));
      CHECK(r.density > r.critical_density);
      CHECK(r.verdict.status == Status::Nyquist);
      // Gram-determinant oracle on the unscaled hexagonal vectors.
      const Vec a = (kPi / std::sqrt(3.0)) * v3(1, std::sqrt(3.0), 0);
      const Vec b = (2 * kPi / std::sqrt(3.0)) * v3(1, 0, 0);
      const double gram = a.squaredNorm() * b.squaredNorm() - std::pow(a.dot(b), 2);
      CHECK(r.critical_density == doctest::Approx(1.0 / std::sqrt(gram)).epsilon(1e-12));
    }
    SUBCASE("cuboid") {
      const auto r = optimal_uniform_d(ConvexBody::box(v3(1, 2, 3)), eps, {SearchKind::ClosedForm});
      const auto& s = std::get<UniformLinesD>(r.set);
      CHECK((s.basis[0] - (1 - eps) * v3(kPi, 0, 0)).norm() < 1e-12);
      CHECK((s.basis[1] - (1 - eps) * v3(0, kPi / 2, 0)).norm() < 1e-12);
      CHECK((s.basis[2] - v3(0, 0, 1)).norm() < 1e-12);
      CHECK(r.critical_density == doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-12));
      CHECK(r.verdict.status == Status::Nyquist);
    }
    SUBCASE("symmetry is required") {
      CHECK(kind_of([] { optimal_uniform_d(ConvexBody::ball(Vec::Zero(3), 1.0), 0.1, {SearchKind::ClosedForm}); }) ==
            ErrorKind::SymmetryRequired);
    }
  }

  TEST_CASE("orientation grid approaches the closed form") {
    const auto ball = ConvexBody::ball(Vec::Zero(3), 1.0, true);
    const auto closed = optimal_uniform_d(ball, 1e-4, {SearchKind::ClosedForm});
    const auto grid = optimal_uniform_d(ball, 1e-4, {SearchKind::OrientationGrid, 32});
    CHECK(grid.verdict.status == Status::Nyquist);
    CHECK(std::abs(grid.density - closed.density) <= 0.01 * closed.density);

    const auto box = ConvexBody::box(v3(1, 2, 3));
    const auto bgrid = optimal_uniform_d(box, 1e-4, {SearchKind::OrientationGrid, 64});
    CHECK(bgrid.verdict.status == Status::Nyquist);
    CHECK(bgrid.density <= 1.01 * optimal_uniform_d(box, 1e-4, {SearchKind::ClosedForm}).density);
  }

  TEST_CASE("certified unions never beat the single-family bound") {
    Rng rng(17);
    int certified = 0;
    for (int trial = 0; trial < 2000 && certified < 10; ++trial) {
      const auto omega = random_polygon(rng, 7, 1.0, v2(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)));
      const double t1 = rng.uniform(0, kPi), t2 = t1 + rng.uniform(0.3, kPi - 0.3);
      const double d1 = rng.uniform(1.0, 8.0), d2 = rng.uniform(1.0, 8.0);
      const UnionUniform2D s({UniformLines2D(Vec::Zero(2), v2(std::cos(t1), std::sin(t1)), d1),
                              UniformLines2D(Vec::Zero(2), v2(std::cos(t2), std::sin(t2)), d2)});
      if (check(s, omega).status != Status::Nyquist) continue;
      ++certified;
      CHECK(1 / d1 + 1 / d2 >= width_direction(omega).width / (2 * kPi) - 1e-9);
    }
    CHECK(certified == 10);
  }

  TEST_CASE("lattice to uniform lines") {
    SUBCASE("square lattice") {
      const auto s = uniform_from_lattice({v2(1, 0), v2(0, 1)});
      CHECK(density(s) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(s.basis[1][0]) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("skewed lattice") {
      const std::vector<Vec> b{v2(1, 0), v2(0.5, 0.1)};
      const Vec c = shortest_by_enumeration(b, 20);
      const auto s = uniform_from_lattice(b);
      const double det = std::abs(b[0][0] * b[1][1] - b[0][1] * b[1][0]);
      CHECK(density(s) == doctest::Approx(c.norm() / det).epsilon(1e-12));
      CHECK(std::abs(s.basis[1].dot(c.normalized())) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("hexagonal lattice spacing") {
      const double side = 0.7;
      const std::vector<Vec> b{v2(side, 0), v2(side / 2, side * std::sqrt(3.0) / 2)};
      const auto s = uniform_from_lattice(b);
      const double det = side * side * std::sqrt(3.0) / 2;
      CHECK(1.0 / density(s) == doctest::Approx(det / side).epsilon(1e-12));
    }
    SUBCASE("visits every lattice point") {
      Rng rng(99);
      for (int d : {2, 3, 4}) {
        CAPTURE(d);
        std::vector<Vec> b;
        for (int i = 0; i < d; ++i) {
          Vec x(d);
          for (int j = 0; j < d; ++j) x[j] = rng.normal();
          b.push_back(x);
        }
        const auto s = uniform_from_lattice(b);
        int hits = 0;
        for (int t = 0; t < 1000; ++t) {
          Vec x = Vec::Zero(d);
          for (int i = 0; i < d; ++i) x += static_cast<double>(static_cast<long>(rng.next() % 41) - 20) * b[static_cast<std::size_t>(i)];
          hits += on_lines(s, x);
        }
        CHECK(hits == 1000);
      }
    }
    SUBCASE("singular basis") {
      CHECK(kind_of([] { uniform_from_lattice({v2(1, 2), v2(2, 4)}); }) == ErrorKind::SingularBasis);
    }
  }
}
