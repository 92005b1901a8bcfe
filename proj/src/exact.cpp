#include "qspec/exact.hpp"

#include <cmath>
#include <utility>

#include "qspec/error.hpp"

namespace qspec {

namespace {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::InvalidInput, "non-finite value cannot be made exact");
  }
  // frexp splits x = mant * 2^exp with |mant| in [0.5, 1); scaling by 2^53 makes it integral.
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(scaled);
  const int shift = exp - 53;
  boost::multiprecision::cpp_int pow2 = 1;
  pow2 <<= std::abs(shift);
  if (shift >= 0) {
    r *= Rational(pow2);
  } else {
    r /= Rational(pow2);
  }
  return r;
}

}  // namespace

GaussianRational GaussianRational::from_complex(Complex z) {
  return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

Complex GaussianRational::to_complex() const {
  return {re_.convert_to<double>(), im_.convert_to<double>()};
}

std::string GaussianRational::to_string() const {
  return "(" + re_.str() + ", " + im_.str() + ")";
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const Rational den = o.re_ * o.re_ + o.im_ * o.im_;
  if (den == 0) {
    throw Error(ErrorCode::InvalidInput, "division by exact zero");
  }
  Rational re = (re_ * o.re_ + im_ * o.im_) / den;
  Rational im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactMatrix ExactMatrix::from_matrix(const Matrix& m) {
  ExactMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out(r, c) = GaussianRational::from_complex(m(r, c));
    }
  }
  return out;
}

Matrix ExactMatrix::to_matrix() const {
  Matrix out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(r, c) = (*this)(r, c).to_complex();
    }
  }
  return out;
}

bool ExactMatrix::is_zero() const {
  for (const auto& v : data_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "exact matrix product shape mismatch");
  }
  ExactMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j).is_zero()) continue;
        out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

std::size_t exact_rank(ExactMatrix m) {
  std::size_t rank = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m(pivot, col).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t c = col; c < cols; ++c) std::swap(m(pivot, c), m(rank, c));
    }
    const GaussianRational inv = GaussianRational(1) / m(rank, col);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m(r, col).is_zero()) continue;
      const GaussianRational factor = m(r, col) * inv;
      for (std::size_t c = col; c < cols; ++c) {
        if (!m(rank, c).is_zero()) m(r, c) -= factor * m(rank, c);
      }
    }
    ++rank;
  }
  return rank;
}

ExactMatrix exact_identity(std::size_t n) {
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = GaussianRational(1);
  return out;
}

std::optional<ExactMatrix> exact_inverse(ExactMatrix m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "only square matrices have inverses");
  }
  const std::size_t n = m.rows();
  ExactMatrix inv = exact_identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(m(pivot, c), m(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const GaussianRational scale = GaussianRational(1) / m(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      m(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      const GaussianRational factor = m(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        if (!m(col, c).is_zero()) m(r, c) -= factor * m(col, c);
        if (!inv(col, c).is_zero()) inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

}  // namespace qspec
