#include "qspec/homology.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qspec/error.hpp"

namespace qspec {

namespace {

// Gram eigenvalue ratio above which the rank is certified without an SVD.
constexpr double kGramCertify = 1e-10;

void check_shapes(const std::vector<std::size_t>& dims, std::size_t n_maps,
                  const auto& rows_of, const auto& cols_of) {
  if (dims.empty()) throw Error(ErrorCode::ShapeMismatch, "complex has no degrees");
  if (n_maps + 1 != dims.size()) {
    std::ostringstream msg;
    msg << dims.size() << " degrees need " << dims.size() - 1 << " maps, got " << n_maps;
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  for (std::size_t p = 0; p < n_maps; ++p) {
    if (rows_of(p) != dims[p + 1] || cols_of(p) != dims[p]) {
      std::ostringstream msg;
      msg << "map " << p << " is " << rows_of(p) << "x" << cols_of(p) << ", expected " << dims[p + 1]
          << "x" << dims[p];
      throw Error(ErrorCode::ShapeMismatch, msg.str());
    }
  }
}

std::vector<std::size_t> dims_from_ranks(const std::vector<std::size_t>& dims,
                                         const std::vector<std::size_t>& ranks) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t p = 0; p < dims.size(); ++p) {
    const std::size_t out_rank = p < ranks.size() ? ranks[p] : 0;
    const std::size_t in_rank = p > 0 ? ranks[p - 1] : 0;
    if (out_rank + in_rank > dims[p]) {
      throw Error(ErrorCode::NotAComplex, "ranks exceed the dimension; composite map is not zero");
    }
    out[p] = dims[p] - out_rank - in_rank;
  }
  return out;
}

}  // namespace

ComplexCheck check_complex(const CochainComplex& c, const ToleranceConfig& cfg) {
  check_shapes(
      c.dims, c.maps.size(), [&](std::size_t p) { return std::size_t(c.maps[p].rows()); },
      [&](std::size_t p) { return std::size_t(c.maps[p].cols()); });
  ComplexCheck out;
  for (std::size_t p = 0; p + 1 < c.maps.size(); ++p) {
    const double r = max_norm(c.maps[p + 1] * c.maps[p]);
    const double s = r / (1.0 + c.maps[p + 1].norm() * c.maps[p].norm());
    out.residuals.push_back(r);
    out.scaled.push_back(s);
    if (!(s <= cfg.rank_tol)) out.ok = false;
  }
  return out;
}

namespace {

struct GramSpectrum {
  bool ok = false;
  double lmin = 0.0;
  double lmax = 0.0;
};

GramSpectrum gram_spectrum(const Matrix& m) {
  GramSpectrum g;
  if (m.size() == 0) return g;
  const Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) return g;
  g.ok = true;
  g.lmin = eig.eigenvalues().minCoeff();
  g.lmax = eig.eigenvalues().maxCoeff();
  return g;
}

RankInfo rank_with(const Matrix& m, double rank_tol, double reference_sigma, const GramSpectrum& g) {
  RankInfo info;
  const Eigen::Index small = std::min(m.rows(), m.cols());
  if (small == 0) return info;
  if (max_norm(m) == 0.0) return info;

  if (g.ok) {
    const double ref2 = std::max(g.lmax, reference_sigma * reference_sigma);
    const double guard = std::max(kGramCertify, 400.0 * rank_tol * rank_tol);
    if (g.lmax > 0.0 && g.lmin > guard * ref2) {
      info.rank = static_cast<std::size_t>(small);
      info.sigma_max = std::sqrt(g.lmax);
      return info;
    }
  }

  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  info.sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double tau = rank_tol * std::max(info.sigma_max, reference_sigma);
  if (tau == 0.0) return info;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tau) ++info.rank;
    if (sv(i) > tau / 10.0 && sv(i) <= tau * 10.0) info.ambiguous = true;
  }
  return info;
}

}  // namespace

RankInfo numerical_rank(const Matrix& m, double rank_tol, double reference_sigma) {
  return rank_with(m, rank_tol, reference_sigma, gram_spectrum(m));
}

HomologyReport analyze_homology(const CochainComplex& c, const ToleranceConfig& cfg) {
  cfg.validate();
  check_shapes(
      c.dims, c.maps.size(), [&](std::size_t p) { return std::size_t(c.maps[p].rows()); },
      [&](std::size_t p) { return std::size_t(c.maps[p].cols()); });
  HomologyReport report;
  report.tol_used = cfg.rank_tol;
  std::vector<GramSpectrum> grams;
  double reference = 0.0;
  for (const Matrix& m : c.maps) {
    grams.push_back(gram_spectrum(m));
    // operator norm; the Frobenius norm stands in if the eigensolver failed
    const double sigma = grams.back().ok ? std::sqrt(std::max(grams.back().lmax, 0.0)) : m.norm();
    reference = std::max(reference, sigma);
  }
  for (std::size_t p = 0; p < c.maps.size(); ++p) {
    const RankInfo info = rank_with(c.maps[p], cfg.rank_tol, reference, grams[p]);
    report.ranks.push_back(info.rank);
    report.ambiguous = report.ambiguous || info.ambiguous;
  }
  report.dims = dims_from_ranks(c.dims, report.ranks);
  return report;
}

HomologyReport homology_dims(const CochainComplex& c, const ToleranceConfig& cfg) {
  const ComplexCheck check = check_complex(c, cfg);
  if (!check.ok) throw Error(ErrorCode::NotAComplex, "composite of consecutive maps is not zero");
  HomologyReport report = analyze_homology(c, cfg);
  if (report.ambiguous) {
    throw Error(ErrorCode::RankAmbiguous, "a singular value lies within the guard band of the rank threshold");
  }
  return report;
}

bool is_exact(const CochainComplex& c, const ToleranceConfig& cfg) {
  const HomologyReport r = homology_dims(c, cfg);
  return std::all_of(r.dims.begin(), r.dims.end(), [](std::size_t d) { return d == 0; });
}

std::vector<std::size_t> exact_homology_dims(const ExactCochainComplex& c) {
  check_shapes(
      c.dims, c.maps.size(), [&](std::size_t p) { return c.maps[p].rows(); },
      [&](std::size_t p) { return c.maps[p].cols(); });
  for (std::size_t p = 0; p + 1 < c.maps.size(); ++p) {
    if (!(c.maps[p + 1] * c.maps[p]).is_zero()) {
      throw Error(ErrorCode::NotAComplex, "composite of consecutive maps is not exactly zero");
    }
  }
  std::vector<std::size_t> ranks;
  for (const ExactMatrix& m : c.maps) ranks.push_back(exact_rank(m));
  return dims_from_ranks(c.dims, ranks);
}

ExactCochainComplex to_exact(const CochainComplex& c) {
  ExactCochainComplex out;
  out.dims = c.dims;
  for (const Matrix& m : c.maps) out.maps.push_back(ExactMatrix::from_matrix(m));
  return out;
}

}  // namespace qspec
