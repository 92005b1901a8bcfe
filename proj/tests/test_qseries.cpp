#include "helpers.hpp"
#include "qspec/funcalc.hpp"
#include "qspec/qpair.hpp"
#include "qspec/qseries.hpp"
#include "qspec/random_pairs.hpp"

using namespace qspec;
using testing::throws_code;

namespace {

QSeries random_series(Rng& rng, Complex q, std::size_t m, std::size_t k, double density = 1.0) {
  QSeries f(q, m, k);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i)
      if (u(rng) < density) f.set(i, j, random_complex(rng));
  return f;
}

// small integers and halves, so exact and double arithmetic agree
ExactQSeries random_exact_series(Rng& rng, GaussianRational q, std::size_t m, std::size_t k) {
  ExactQSeries f(q, m, k);
  std::uniform_int_distribution<int> d(-4, 4);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) f.set(i, j, GaussianRational(Rational(d(rng), 2), Rational(d(rng), 3)));
  return f;
}

}  // namespace

TEST_SUITE("qseries") {
  TEST_CASE("y times x is q xy") {
    for (Complex q : {Complex(0.5), Complex(0.25, 0.5), Complex(0.9)}) {
      const QSeries y = QSeries::y(q, 2, 2);
      const QSeries x = QSeries::x(q, 2, 2);
      const QSeries yx = q_mul(y, x);
      CHECK(yx.coeff(1, 1) == q);
      CHECK(yx.coeff(0, 0) == Complex(0.0));
      CHECK(q_mul(x, y).coeff(1, 1) == Complex(1.0));
    }
  }

  TEST_CASE("unit") {
    Rng rng(1);
    const QSeries f = random_series(rng, 0.5, 4, 3);
    const QSeries one = QSeries::one(0.5, 4, 3);
    CHECK(q_mul(one, f) == f);
    CHECK(q_mul(f, one) == f);
    CHECK(q_pow(f, 0) == one);
  }

  TEST_CASE("(x + y)^2 at q = 1/2") {
    const QSeries s = add(QSeries::x(0.5, 3, 3), QSeries::y(0.5, 3, 3));
    const QSeries sq = q_mul(s, s);
    CHECK(sq.coeff(2, 0) == Complex(1.0));
    CHECK(sq.coeff(1, 1) == Complex(1.5));
    CHECK(sq.coeff(0, 2) == Complex(1.0));
    CHECK(q_pow(s, 2) == sq);

    // the same coefficient through matrices of a pair
    const QPair p = nilpotent_q_pair(6, QParameter(0.5));
    const Matrix lhs = evaluate(sq, p).value;
    const Matrix sum = p.T() + p.S();
    CHECK(max_norm(lhs - sum * sum) < 1e-14);
  }

  TEST_CASE("add and scale") {
    const QSeries x = QSeries::x(0.5, 2, 2);
    const QSeries y = QSeries::y(0.5, 2, 2);
    CHECK(add(x, QSeries::zero(0.5, 2, 2)) == x);
    const QSeries x2y = add(scale(y, Complex(2.0)), x);
    CHECK(x2y.coeff(1, 0) == Complex(1.0));
    CHECK(x2y.coeff(0, 1) == Complex(2.0));
    Rng rng(2);
    const QSeries f = random_series(rng, 0.5, 3, 3);
    CHECK(add(f, scale(f, Complex(-1.0))).is_zero());
  }

  TEST_CASE("powers of x") {
    const QSeries x = QSeries::x(0.5, 5, 2);
    const QSeries x3 = q_pow(x, 3);
    CHECK(x3 == QSeries::monomial(0.5, 5, 2, 3, 0));
    CHECK(q_pow(x, 5).is_zero());
  }

  TEST_CASE("truncation and q mismatch") {
    CHECK(throws_code([] { q_mul(QSeries::x(0.5, 2, 2), QSeries::x(0.5, 3, 2)); }, ErrorCode::TruncationMismatch));
    CHECK(throws_code([] { add(QSeries::x(0.5, 2, 2), QSeries::x(0.25, 2, 2)); }, ErrorCode::QMismatch));
    CHECK(throws_code([] { QSeries(0.0, 2, 2); }, ErrorCode::ZeroQ));
    CHECK(throws_code([] { QSeries(0.5, 0, 2); }, ErrorCode::InvalidInput));
    CHECK(throws_code([] { QSeries(0.5, 2, 2).coeff(2, 0); }, ErrorCode::InvalidInput));
  }

  TEST_CASE("commutative at q = 1") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
      const QSeries f = random_series(rng, 1.0, 4, 4);
      const QSeries g = random_series(rng, 1.0, 4, 4);
      CHECK(max_coeff_diff(q_mul(f, g), q_mul(g, f)) < 1e-13);
    }
  }

  TEST_CASE("property: exact associativity") {
    Rng rng(4);
    const GaussianRational q(Rational(1, 2), Rational(1, 3));
    for (int t = 0; t < 30; ++t) {
      const ExactQSeries f = random_exact_series(rng, q, 3, 4);
      const ExactQSeries g = random_exact_series(rng, q, 3, 4);
      const ExactQSeries h = random_exact_series(rng, q, 3, 4);
      CHECK(q_mul(q_mul(f, g), h) == q_mul(f, q_mul(g, h)));
    }
  }

  TEST_CASE("property: double associativity") {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
      const Complex q = random_q(rng, 0.1, 1.0).value();
      const QSeries f = random_series(rng, q, 4, 4, 0.6);
      const QSeries g = random_series(rng, q, 4, 4, 0.6);
      const QSeries h = random_series(rng, q, 4, 4, 0.6);
      CHECK(max_coeff_diff(q_mul(q_mul(f, g), h), q_mul(f, q_mul(g, h))) < 1e-12);
    }
  }

  TEST_CASE("exact oracle agrees with double product") {
    Rng rng(6);
    for (int t = 0; t < 30; ++t) {
      const GaussianRational q(Rational(1, 2), Rational(1, 4));
      const ExactQSeries f = random_exact_series(rng, q, 4, 3);
      const ExactQSeries g = random_exact_series(rng, q, 4, 3);
      const QSeries fd = to_double(f);
      const QSeries gd = to_double(g);
      CHECK(max_coeff_diff(q_mul(fd, gd), to_double(q_mul(f, g))) < 1e-13);
      CHECK(to_double(to_exact(fd)) == fd);
    }
  }

  TEST_CASE("resized keeps the overlap") {
    QSeries f(0.5, 3, 3);
    f.set(2, 2, 7.0);
    f.set(1, 0, 3.0);
    const QSeries g = f.resized(2, 4);
    CHECK(g.coeff(1, 0) == Complex(3.0));
    CHECK(g.x_order() == 2);
    CHECK(g.y_order() == 4);
    CHECK(g.coeff(1, 3) == Complex(0.0));
  }
}
