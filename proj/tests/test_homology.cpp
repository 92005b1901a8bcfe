#include <Eigen/QR>

#include "helpers.hpp"
#include "qspec/exact.hpp"
#include "qspec/homology.hpp"
#include "qspec/random_pairs.hpp"

using namespace qspec;
using testing::mat;
using testing::throws_code;

namespace {

CochainComplex two_term(const Matrix& m) { return {{std::size_t(m.cols()), std::size_t(m.rows())}, {m}}; }

Matrix random_unitary(Rng& rng, Eigen::Index n) {
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = random_complex(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(n, n);
}

// d_{p+1} d_p = 0 by construction: M_p = A_{p+1} E_p A_p^{-1}
CochainComplex random_complex_with_ranks(Rng& rng, const std::vector<std::size_t>& dims,
                                         const std::vector<std::size_t>& ranks) {
  std::vector<Matrix> a;
  for (std::size_t d : dims) a.push_back(random_unitary(rng, Eigen::Index(d)));
  CochainComplex c{dims, {}};
  for (std::size_t p = 0; p + 1 < dims.size(); ++p) {
    Matrix e = Matrix::Zero(Eigen::Index(dims[p + 1]), Eigen::Index(dims[p]));
    const std::size_t from = p == 0 ? 0 : ranks[p - 1];
    for (std::size_t i = 0; i < ranks[p]; ++i) e(Eigen::Index(i), Eigen::Index(from + i)) = 1.0;
    c.maps.push_back(a[p + 1] * e * a[p].adjoint());
  }
  return c;
}

}  // namespace

TEST_SUITE("homology") {
  TEST_CASE("check_complex examples") {
    const CochainComplex single{{1}, {}};
    CHECK(check_complex(single).residuals.empty());
    CHECK(check_complex(single).ok);
    const ComplexCheck id = check_complex(two_term(mat({{1}})));
    CHECK(id.residuals.empty());
    CHECK(id.ok);
    const CochainComplex bad{{1, 1, 1}, {mat({{1}}), mat({{1}})}};
    CHECK_FALSE(check_complex(bad).ok);
    CHECK(throws_code([&] { homology_dims(bad); }, ErrorCode::NotAComplex));
    const CochainComplex shape{{1, 2}, {mat({{1}})}};
    CHECK(throws_code([&] { check_complex(shape); }, ErrorCode::ShapeMismatch));
  }

  TEST_CASE("homology_dims examples") {
    CHECK(homology_dims(two_term(mat({{1}}))).dims == std::vector<std::size_t>{0, 0});
    CHECK(homology_dims(two_term(mat({{0}}))).dims == std::vector<std::size_t>{1, 1});
    CHECK(homology_dims(two_term(mat({{1, 0}, {0, 0}}))).dims == std::vector<std::size_t>{1, 1});
    CHECK(is_exact(two_term(mat({{1}}))));
    CHECK_FALSE(is_exact(two_term(mat({{0}}))));
    const CochainComplex empty_maps{{0, 3, 0}, {Matrix(3, 0), Matrix(0, 3)}};
    CHECK(homology_dims(empty_maps).dims == std::vector<std::size_t>{0, 3, 0});
  }

  TEST_CASE("rank ambiguity is surfaced") {
    // singular value 1e-9 against sigma_max 1 sits on the threshold
    const Matrix m = mat({{1, 0}, {0, 1e-9}});
    CHECK(numerical_rank(m, 1e-9).ambiguous);
    CHECK(throws_code([&] { homology_dims(two_term(m)); }, ErrorCode::RankAmbiguous));
    CHECK(analyze_homology(two_term(m)).ambiguous);
    // well separated values are not ambiguous
    CHECK_FALSE(numerical_rank(mat({{1, 0}, {0, 1e-13}}), 1e-9).ambiguous);
    CHECK(numerical_rank(mat({{1, 0}, {0, 1e-13}}), 1e-9).rank == 1);
    CHECK(numerical_rank(mat({{1, 0}, {0, 1e-6}}), 1e-9).rank == 2);
  }

  TEST_CASE("rank threshold follows the largest map of the complex") {
    // a map of pure rounding noise next to a unit map has rank zero
    const CochainComplex c{{1, 2, 1}, {mat({{1e-17}, {0}}), mat({{0, 1}})}};
    const HomologyReport r = analyze_homology(c);
    CHECK(r.ranks == std::vector<std::size_t>{0, 1});
    CHECK(r.dims == std::vector<std::size_t>{1, 1, 0});
    // on its own the same map counts as rank one
    CHECK(numerical_rank(mat({{1e-17}, {0}}), 1e-9).rank == 1);
    CHECK(numerical_rank(mat({{1e-17}, {0}}), 1e-9, 1.0).rank == 0);
  }

  TEST_CASE("property: basis independence") {
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
      std::vector<std::size_t> dims;
      const std::size_t degrees = 2 + t % 4;
      for (std::size_t p = 0; p < degrees; ++p) dims.push_back(1 + (t * 7 + p * 3) % 5);
      std::vector<std::size_t> ranks(degrees - 1);
      for (std::size_t p = 0; p + 1 < degrees; ++p) {
        const std::size_t in = p == 0 ? 0 : ranks[p - 1];
        ranks[p] = std::min(dims[p] - in, dims[p + 1]) / 2 + (t % 2 == 0 ? 0 : std::min(dims[p] - in, dims[p + 1]) % 2);
      }
      const CochainComplex c = random_complex_with_ranks(rng, dims, ranks);
      const HomologyReport base = homology_dims(c);
      CochainComplex changed = c;
      std::vector<Matrix> u;
      for (std::size_t d : dims) u.push_back(random_unitary(rng, Eigen::Index(d)));
      for (std::size_t p = 0; p + 1 < degrees; ++p) changed.maps[p] = u[p + 1] * c.maps[p] * u[p].adjoint();
      ToleranceConfig cfg;
      cfg.rank_tol = 1e-8;
      CHECK(homology_dims(changed, cfg).dims == base.dims);
      CHECK(homology_dims(changed, cfg).ranks == ranks);
    }
  }

  TEST_CASE("property: float dims equal exact dims on small rational complexes") {
    Rng rng(22);
    std::uniform_int_distribution<int> entry(-3, 3);
    int checked = 0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t d0 = 1 + t % 3, d1 = 2 + t % 4, d2 = 1 + t % 3;
      ExactMatrix b(d1, d0);
      for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d0; ++j) b(i, j) = GaussianRational(entry(rng));
      ExactMatrix a(d2, d1);
      for (std::size_t i = 0; i < d2; ++i)
        for (std::size_t j = 0; j < d1; ++j) a(i, j) = GaussianRational(entry(rng));
      // m2 = a (I - b (b^T b)^{-1} b^T) kills the columns of b
      ExactMatrix bt(d0, d1);
      for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d0; ++j) bt(j, i) = b(i, j);
      const auto inv = exact_inverse(bt * b);
      if (!inv) continue;
      ExactMatrix proj = exact_identity(d1);
      const ExactMatrix pb = b * *inv * bt;
      for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j) proj(i, j) -= pb(i, j);
      const ExactMatrix m2 = a * proj;
      const ExactCochainComplex ex{{d0, d1, d2}, {b, m2}};
      const auto exact = exact_homology_dims(ex);
      const CochainComplex fl{{d0, d1, d2}, {b.to_matrix(), m2.to_matrix()}};
      const HomologyReport r = analyze_homology(fl);
      CHECK_FALSE(r.ambiguous);
      CHECK(r.dims == exact);
      ++checked;
    }
    CHECK(checked > 150);
  }

  TEST_CASE("exact homology rejects non-complexes") {
    const ExactCochainComplex bad{{1, 1, 1}, {ExactMatrix::from_matrix(mat({{1}})), ExactMatrix::from_matrix(mat({{1}}))}};
    CHECK(throws_code([&] { exact_homology_dims(bad); }, ErrorCode::NotAComplex));
    const CochainComplex c{{2, 2}, {mat({{1, 2}, {2, 4}})}};
    CHECK(exact_homology_dims(to_exact(c)) == std::vector<std::size_t>{1, 1});
  }
}

TEST_SUITE("exact") {
  TEST_CASE("doubles convert exactly") {
    for (double v : {0.1, -3.75, 1e-300, 123456789.125, 0.0}) {
      const GaussianRational g = GaussianRational::from_complex({v, -v});
      CHECK(g.to_complex() == Complex(v, -v));
    }
    CHECK(GaussianRational::from_complex({0.5, 0.0}) == GaussianRational(Rational(1, 2)));
    CHECK(throws_code([] { GaussianRational::from_complex({std::nan(""), 0.0}); }, ErrorCode::InvalidInput));
  }

  TEST_CASE("gaussian rational arithmetic") {
    const GaussianRational i(0, 1);
    CHECK(i * i == GaussianRational(-1));
    const GaussianRational z(Rational(1, 2), Rational(3, 4));
    CHECK((z / z) == GaussianRational(1));
    CHECK(throws_code([&] { (void)(z / GaussianRational()); }, ErrorCode::InvalidInput));
  }

  TEST_CASE("rank and inverse") {
    const ExactMatrix m = ExactMatrix::from_matrix(mat({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}));
    CHECK(exact_rank(m) == 2);
    CHECK_FALSE(exact_inverse(m).has_value());
    const ExactMatrix a = ExactMatrix::from_matrix(mat({{2, 1}, {Complex(0, 1), 3}}));
    const auto inv = exact_inverse(a);
    REQUIRE(inv.has_value());
    const ExactMatrix id = a * *inv;
    CHECK(id.to_matrix() == Matrix::Identity(2, 2));
    CHECK(throws_code([] { exact_inverse(ExactMatrix(2, 3)); }, ErrorCode::ShapeMismatch));
  }
}
