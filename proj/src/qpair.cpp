#include "qspec/qpair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qspec/error.hpp"

namespace qspec {

namespace {

// Modulus slack that still counts as |q| = 1.
constexpr double kUnitSlack = 1e-14;

bool complex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}


// A defective eigenvalue of multiplicity k comes back from the eigensolver as
// k points spread over a radius of order ||M|| eps^{1/k}. Such a group is
// replaced by its mean once (M - mean)^k is numerically rank deficient by k.
std::vector<Complex> cluster_eigenvalues(const Matrix& m, const std::vector<Complex>& raw) {
  const std::size_t n = raw.size();
  const double scale = m.norm();
  if (n < 2 || scale == 0.0) return raw;
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<bool> used(n, false);
  std::vector<Complex> out;
  for (std::size_t k = n; k >= 2; --k) {
    const double radius = 100.0 * scale * std::pow(eps, 1.0 / double(k));
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      std::vector<std::pair<double, std::size_t>> near;
      for (std::size_t j = 0; j < n; ++j) {
        if (!used[j] && std::abs(raw[j] - raw[i]) <= radius) near.emplace_back(std::abs(raw[j] - raw[i]), j);
      }
      if (near.size() < k) continue;
      std::sort(near.begin(), near.end());
      Complex mean = 0.0;
      for (std::size_t t = 0; t < k; ++t) mean += raw[near[t].second];
      mean /= double(k);
      const Matrix shifted = m - mean * Matrix::Identity(m.rows(), m.cols());
      Matrix power = shifted;
      for (std::size_t t = 1; t < k; ++t) power = power * shifted;
      const auto sv = Eigen::JacobiSVD<Matrix>(power).singularValues();
      const double bound = 1e4 * eps * std::pow(scale + std::abs(mean), double(k));
      if (sv(Eigen::Index(n - k)) > bound) continue;
      for (std::size_t t = 0; t < k; ++t) used[near[t].second] = true;
      out.push_back(mean);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!used[i]) out.push_back(raw[i]);
  return out;
}

}  // namespace

QParameter::QParameter(Complex value) : value_(value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw Error(ErrorCode::InvalidInput, "q must be finite");
  }
  if (value == Complex(0.0, 0.0)) {
    throw Error(ErrorCode::ZeroQ, "q must be nonzero");
  }
  if (std::abs(value) > 1.0 + kUnitSlack) {
    throw Error(ErrorCode::NonContractiveQ, "|q| must not exceed 1");
  }
}

bool QParameter::is_contractive() const { return std::abs(value_) < 1.0 - kUnitSlack; }

void QParameter::require_contractive() const {
  if (!is_contractive()) {
    throw Error(ErrorCode::NonContractiveQ, "operation requires |q| < 1");
  }
}

double relation_residual(const Matrix& T, const Matrix& S, QParameter q) {
  const Matrix diff = T * S - q.inverse() * (S * T);
  return max_norm(diff) / (1.0 + T.norm() * S.norm());
}

QPair validate_qpair(Matrix T, Matrix S, QParameter q, const ToleranceConfig& cfg) {
  cfg.validate();
  if (T.rows() != T.cols() || S.rows() != S.cols() || T.rows() != S.rows() || T.rows() == 0) {
    std::ostringstream msg;
    msg << "T is " << T.rows() << "x" << T.cols() << ", S is " << S.rows() << "x" << S.cols();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  const double residual = relation_residual(T, S, q);
  if (!(residual <= cfg.relation_tol)) {
    std::ostringstream msg;
    msg << "scaled residual " << residual << " exceeds " << cfg.relation_tol;
    throw Error(ErrorCode::RelationViolated, msg.str());
  }
  return QPair(std::move(T), std::move(S), q, cfg, residual);
}

QPair jordan_q_pair(Complex t0, std::size_t n, QParameter q) {
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "jordan_q_pair needs n >= 1");
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix T = Matrix::Zero(dim, dim);
  Matrix S = Matrix::Zero(dim, dim);
  Complex t = t0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    T(i, i) = t;
    t = t * q.inverse();
    if (i + 1 < dim) S(i + 1, i) = 1.0;
  }
  return validate_qpair(std::move(T), std::move(S), q);
}

QPair nilpotent_q_pair(std::size_t n, QParameter q) {
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "nilpotent_q_pair needs n >= 2");
  // Graded monomial order; within a degree, higher x-power first.
  std::vector<std::pair<int, int>> monomials;
  for (int degree = 0; monomials.size() < n; ++degree) {
    for (int a = degree; a >= 0 && monomials.size() < n; --a) {
      monomials.emplace_back(a, degree - a);
    }
  }
  // Highest degree gets the smallest index so that raising operators are upper triangular.
  auto index_of = [&](int a, int b) -> std::optional<Eigen::Index> {
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      if (monomials[i].first == a && monomials[i].second == b) {
        return static_cast<Eigen::Index>(n - 1 - i);
      }
    }
    return std::nullopt;
  };
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix T = Matrix::Zero(dim, dim);
  Matrix S = Matrix::Zero(dim, dim);
  for (const auto& [a, b] : monomials) {
    const Eigen::Index col = *index_of(a, b);
    if (auto row = index_of(a + 1, b)) T(*row, col) = 1.0;
    // y x^a = q^a x^a y in the quantum plane.
    if (auto row = index_of(a, b + 1)) S(*row, col) = std::pow(q.value(), a);
  }
  return validate_qpair(std::move(T), std::move(S), q);
}

std::vector<Complex> operator_spectrum(const Matrix& m, const ToleranceConfig& cfg) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "spectrum of a non-square matrix");
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigensolverFailure, "complex Schur iteration did not converge");
  }
  const std::vector<Complex> raw(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::vector<Complex> values;
  for (const Complex& c : cluster_eigenvalues(m, raw)) {
    const bool seen = std::any_of(values.begin(), values.end(),
                                  [&](Complex u) { return points_match(u, c, cfg.point_match_tol); });
    if (!seen) values.push_back(c);
  }
  std::sort(values.begin(), values.end(), complex_less);
  return values;
}

std::optional<std::size_t> nilpotency_index(const Matrix& m, const ToleranceConfig& cfg) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "nilpotency of a non-square matrix");
  const double scale = std::max(1.0, m.norm());
  Matrix power = m;
  double bound = scale;
  for (Eigen::Index k = 1; k <= m.rows(); ++k) {
    if (max_norm(power) <= cfg.rank_tol * bound) return static_cast<std::size_t>(k);
    power = power * m;
    bound *= scale;
  }
  return std::nullopt;
}

}  // namespace qspec
