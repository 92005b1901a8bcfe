#include "helpers.hpp"
#include "qspec/funcalc.hpp"
#include "qspec/random_pairs.hpp"

using namespace qspec;
using testing::mat;
using testing::throws_code;

namespace {

QSeries random_series(Rng& rng, Complex q, std::size_t m, std::size_t k) {
  QSeries f(q, m, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) f.set(i, j, random_complex(rng));
  return f;
}

QOpenSet sat_x(Complex c, double r) { return {Axis::X, false, {{c, r}}}; }

}  // namespace

TEST_SUITE("funcalc") {
  TEST_CASE("evaluate examples") {
    const QPair p = jordan_q_pair(1.0, 2, QParameter(0.5));
    const CalculusResult xy = evaluate(QSeries::monomial(0.5, 2, 2, 1, 1), p);
    CHECK(xy.value == mat({{0, 0}, {2, 0}}));
    CHECK(xy.nilpotency_residual == 0.0);
    CHECK(evaluate(QSeries::one(0.5, 3, 2), p).value == Matrix::Identity(2, 2));
    const QPair n = nilpotent_q_pair(4, QParameter(0.5));
    CHECK(evaluate(QSeries::monomial(0.5, 5, 5, 0, 4), n).value.isZero());
    CHECK(evaluate(QSeries::monomial(0.5, 5, 5, 4, 0), n).value.isZero());
  }

  TEST_CASE("evaluate is linear") {
    Rng rng(51);
    const QPair p = jordan_q_pair(1.0, 3, QParameter(0.5));
    for (int t = 0; t < 20; ++t) {
      const QSeries f = random_series(rng, 0.5, 3, 3);
      const QSeries g = random_series(rng, 0.5, 3, 3);
      const Complex a = random_complex(rng);
      const Matrix lhs = evaluate(add(f, scale(g, a)), p).value;
      const Matrix rhs = evaluate(f, p).value + a * evaluate(g, p).value;
      CHECK(max_norm(lhs - rhs) < 1e-12);
    }
  }

  TEST_CASE("evaluate errors") {
    const QPair scalar = validate_qpair(mat({{0}}), mat({{1}}), QParameter(0.5));
    CHECK(throws_code([&] { evaluate(QSeries::y(0.5, 2, 2), scalar); }, ErrorCode::NotNilpotent));
    const QPair p = jordan_q_pair(1.0, 2, QParameter(0.5));
    CHECK(throws_code([&] { evaluate(QSeries::x(0.25, 2, 2), p); }, ErrorCode::QMismatch));
  }

  TEST_CASE("homomorphism examples") {
    const QPair p = jordan_q_pair(1.0, 3, QParameter(0.5));
    const QSeries x = QSeries::x(0.5, 3, 3);
    const QSeries y = QSeries::y(0.5, 3, 3);
    // (y x)(T, S) = q x y (T, S) = q T S, and S T = q T S holds for the pair
    const Matrix yx = evaluate(q_mul(y, x), p).value;
    CHECK(max_norm(yx - 0.5 * p.T() * p.S()) < 1e-14);
    CHECK(max_norm(yx - p.S() * p.T()) < 1e-14);
    const QSeries one = QSeries::one(0.5, 3, 3);
    CHECK(homomorphism_check(one, one, p).residual == 0.0);
    CHECK(homomorphism_check(y, x, p).residual < 1e-14);
  }

  TEST_CASE("property: multiplicativity") {
    Rng rng(52);
    RandomPairOptions opts;
    opts.allow_y_blocks = false;
    for (int t = 0; t < 100; ++t) {
      const QParameter q = random_q(rng, 0.2, 0.95);
      const QPair p = t % 2 == 0 ? jordan_q_pair(random_complex(rng), 3, q) : random_q_pair(rng, q, opts);
      const std::size_t k = p.dim() + 1;
      const QSeries f = random_series(rng, q.value(), 4, k);
      const QSeries g = random_series(rng, q.value(), 4, k);
      const HomomorphismReport r = homomorphism_check(f, g, p);
      CHECK(r.residual <= 1e-9 * r.scale);
    }
  }

  TEST_CASE("admissibility examples") {
    const ToleranceConfig cfg;
    const QPair n = nilpotent_q_pair(3, QParameter(0.5));
    OpenSet small;
    small.x = sat_x(5.0, 0.5);
    CHECK(calculus_admissible(n, small, Geometry::Local, cfg).admissible);

    const QPair scalar = validate_qpair(mat({{1}}), mat({{0}}), QParameter(0.5));
    OpenSet u;
    u.x = sat_x(1.0, 0.05);
    CHECK(calculus_admissible(scalar, u, Geometry::OY, cfg).admissible);
    OpenSet miss;
    miss.x = sat_x(3.0, 0.05);
    const Admissibility a = calculus_admissible(scalar, miss, Geometry::OY, cfg);
    CHECK_FALSE(a.admissible);
    REQUIRE(a.witness.has_value());

    const Admissibility e = calculus_admissible(scalar, OpenSet{}, Geometry::OY, cfg);
    CHECK_FALSE(e.admissible);
    CHECK(calculus_admissible(n, OpenSet{}, Geometry::Local, cfg).admissible == false);
  }

  TEST_CASE("admissible pairs evaluate") {
    Rng rng(53);
    const ToleranceConfig cfg;
    for (int t = 0; t < 20; ++t) {
      const QParameter q = random_q(rng, 0.2, 0.9);
      const QPair p = random_nilpotent_pair(rng, 2 + t % 5, q);
      OpenSet u;
      u.y = {Axis::Y, false, {{random_complex(rng, 3.0), 0.2}}};
      REQUIRE(calculus_admissible(p, u, Geometry::Local, cfg).admissible);
      CHECK_NOTHROW(evaluate(random_series(rng, q.value(), 3, p.dim()), p));
    }
  }
}
