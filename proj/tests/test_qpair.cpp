#include "helpers.hpp"
#include "qspec/qpair.hpp"
#include "qspec/random_pairs.hpp"

using namespace qspec;
using testing::mat;
using testing::throws_code;

TEST_SUITE("qpair") {
  TEST_CASE("q parameter validation") {
    CHECK(throws_code([] { QParameter(0.0); }, ErrorCode::ZeroQ));
    CHECK(throws_code([] { QParameter(Complex(1.5, 0.0)); }, ErrorCode::NonContractiveQ));
    CHECK(throws_code([] { QParameter(Complex(std::nan(""), 0.0)); }, ErrorCode::InvalidInput));
    CHECK(QParameter(0.5).is_contractive());
    const QParameter unimodular(std::polar(1.0, 0.3));
    CHECK(unimodular.is_unimodular());
    CHECK(throws_code([&] { unimodular.require_contractive(); }, ErrorCode::NonContractiveQ));
  }

  TEST_CASE("validate_qpair examples") {
    const QPair a = validate_qpair(mat({{0, 1}, {0, 0}}), Matrix::Zero(2, 2), QParameter(0.5));
    CHECK(a.residual() == 0.0);
    const QPair b = validate_qpair(mat({{1, 0}, {0, 2}}), mat({{0, 0}, {1, 0}}), QParameter(0.5));
    CHECK(b.residual() == 0.0);
    CHECK(throws_code([] { validate_qpair(Matrix::Identity(2, 2), Matrix::Identity(2, 2), QParameter(0.5)); },
                      ErrorCode::RelationViolated));
    CHECK(throws_code([] { validate_qpair(Matrix::Zero(2, 2), Matrix::Zero(3, 3), QParameter(0.5)); },
                      ErrorCode::DimensionMismatch));
    CHECK(throws_code([] { validate_qpair(Matrix::Zero(2, 3), Matrix::Zero(2, 3), QParameter(0.5)); },
                      ErrorCode::DimensionMismatch));
  }

  TEST_CASE("relation residual is scale free") {
    const Matrix T = mat({{1, 0}, {0, 2}});
    const Matrix S = mat({{0, 0}, {1, 0}});
    CHECK(relation_residual(T, S, QParameter(0.5)) == 0.0);
    const double r1 = relation_residual(Matrix::Identity(2, 2), Matrix::Identity(2, 2), QParameter(0.5));
    const double r2 = relation_residual(1e3 * Matrix::Identity(2, 2), 1e3 * Matrix::Identity(2, 2), QParameter(0.5));
    CHECK(r1 > 0.1);
    CHECK(r2 == doctest::Approx(0.5).epsilon(1e-3));
  }

  TEST_CASE("jordan_q_pair") {
    const QPair p = jordan_q_pair(1.0, 2, QParameter(0.5));
    CHECK(p.T() == mat({{1, 0}, {0, 2}}));
    CHECK(p.S() == mat({{0, 0}, {1, 0}}));
    const QPair z = jordan_q_pair(0.0, 3, QParameter(0.7));
    CHECK(z.T().isZero());
    CHECK(z.S() == mat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
    const QPair one = jordan_q_pair(1.0, 1, QParameter(0.5));
    CHECK(one.T() == mat({{1}}));
    CHECK(one.S() == mat({{0}}));
  }

  TEST_CASE("nilpotent_q_pair") {
    const QPair p2 = nilpotent_q_pair(2, QParameter(0.5));
    CHECK(p2.T() == mat({{0, 1}, {0, 0}}));
    CHECK(p2.S().isZero());
    for (std::size_t n = 2; n <= 10; ++n) {
      for (Complex q : {Complex(0.5), Complex(0.9), std::polar(0.3, 1.0)}) {
        const QPair p = nilpotent_q_pair(n, QParameter(q));
        // exact for dyadic q, rounding only otherwise
        if (q == Complex(0.5)) CHECK(p.residual() == 0.0);
        CHECK(p.residual() <= 1e-15);
        CHECK(is_nilpotent(p.T()));
        CHECK(is_nilpotent(p.S()));
        for (Eigen::Index i = 0; i < p.T().rows(); ++i)
          for (Eigen::Index j = 0; j <= i; ++j) {
            CHECK(p.T()(i, j) == Complex(0.0));
            CHECK(p.S()(i, j) == Complex(0.0));
          }
      }
    }
    CHECK(throws_code([] { nilpotent_q_pair(1, QParameter(0.5)); }, ErrorCode::DimensionMismatch));
    const QPair p3 = nilpotent_q_pair(3, QParameter(0.5));
    const Matrix t3 = p3.T() * p3.T() * p3.T();
    CHECK(t3.isZero());
  }

  TEST_CASE("operator_spectrum examples") {
    const auto d = operator_spectrum(mat({{1, 0}, {0, 2}}));
    REQUIRE(d.size() == 2);
    CHECK(std::abs(d[0] - 1.0) < 1e-12);
    CHECK(std::abs(d[1] - 2.0) < 1e-12);
    const auto n = operator_spectrum(mat({{0, 1}, {0, 0}}));
    REQUIRE(n.size() == 1);
    CHECK(std::abs(n[0]) < 1e-12);
    // companion matrix of z^2 - 3z + 2
    const auto c = operator_spectrum(mat({{0, -2}, {1, 3}}));
    REQUIRE(c.size() == 2);
    CHECK(std::abs(c[0] - 1.0) < 1e-12);
    CHECK(std::abs(c[1] - 2.0) < 1e-12);
  }

  TEST_CASE("defective eigenvalues are reported once") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      // Jordan block of size 4 at 1.5 next to a simple eigenvalue at -1, conjugated
      Matrix j = Matrix::Zero(5, 5);
      for (int i = 0; i < 4; ++i) j(i, i) = 1.5;
      for (int i = 0; i < 3; ++i) j(i, i + 1) = 1.0;
      j(4, 4) = -1.0;
      Matrix w = Matrix::Identity(5, 5);
      for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) w(r, c) += 0.2 * random_complex(rng);
      const Matrix m = w * j * w.inverse();
      const auto s = operator_spectrum(m);
      REQUIRE(s.size() == 2);
      CHECK(std::abs(s[0] + 1.0) < 1e-8);
      CHECK(std::abs(s[1] - 1.5) < 1e-3);
    }
  }

  TEST_CASE("nilpotency_index") {
    CHECK(nilpotency_index(mat({{0, 1}, {0, 0}})) == std::optional<std::size_t>(2));
    CHECK(nilpotency_index(Matrix::Zero(3, 3)) == std::optional<std::size_t>(1));
    CHECK_FALSE(nilpotency_index(mat({{1, 0}, {0, 0}})).has_value());
    const QPair p = nilpotent_q_pair(6, QParameter(0.5));
    const auto k = nilpotency_index(p.T());
    REQUIRE(k.has_value());
    CHECK(*k >= 2);
  }

  TEST_CASE("property: TS is nilpotent for random pairs") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const QPair p = random_q_pair(rng, random_q(rng, 0.1, 0.95));
      // (TS)^n = 0; eigenvalues of a nilpotent matrix are too ill-conditioned to test
      const Matrix ts = p.T() * p.S();
      const double norm = std::max(ts.operatorNorm(), 1.0);
      Matrix power = Matrix::Identity(ts.rows(), ts.cols());
      for (std::size_t k = 0; k < p.dim(); ++k) power = power * ts;
      CHECK(power.operatorNorm() <= 1e-9 * std::pow(norm, double(p.dim())));
    }
  }

  TEST_CASE("property: accepted pairs satisfy the relation") {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
      const QPair p = random_q_pair(rng, random_q(rng, 0.1, 1.0));
      CHECK(p.residual() <= p.tolerances().relation_tol);
      CHECK(relation_residual(p.T(), p.S(), p.q()) == doctest::Approx(p.residual()));
    }
  }

  TEST_CASE("random nilpotent pairs are strictly upper triangular") {
    Rng rng(13);
    for (std::size_t n = 2; n <= 8; ++n) {
      const QPair p = random_nilpotent_pair(rng, n, random_q(rng, 0.1, 0.9));
      CHECK(p.dim() == n);
      for (Eigen::Index i = 0; i < p.T().rows(); ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
          CHECK(p.T()(i, j) == Complex(0.0));
          CHECK(p.S()(i, j) == Complex(0.0));
        }
      const auto s = operator_spectrum(p.T());
      REQUIRE(s.size() == 1);
      CHECK(s[0] == Complex(0.0));
    }
  }
}
