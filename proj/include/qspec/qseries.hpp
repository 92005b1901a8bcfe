#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qspec/error.hpp"
#include "qspec/exact.hpp"
#include "qspec/types.hpp"

namespace qspec {

namespace detail {

inline bool is_zero_scalar(const Complex& c) { return c == Complex(0.0, 0.0); }
inline bool is_zero_scalar(const GaussianRational& c) { return c.is_zero(); }

inline void check_series_q(const Complex& q) {
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
    throw Error(ErrorCode::InvalidInput, "q must be finite");
  if (is_zero_scalar(q)) throw Error(ErrorCode::ZeroQ, "q must be nonzero");
}
inline void check_series_q(const GaussianRational& q) {
  if (q.is_zero()) throw Error(ErrorCode::ZeroQ, "q must be nonzero");
}

}  // namespace detail

/// Element of C_q[[x,y]] truncated to x^i y^j with i < x_order, j < y_order.
///
/// The series f = sum_j f_j(z) y^j is stored by coefficient c(i, j) of z^i y^j.
/// Multiplication follows y^a g(z) = g(q^a z) y^a.
template <class Scalar>
class BasicQSeries {
 public:
  BasicQSeries(Scalar q, std::size_t x_order, std::size_t y_order)
      : q_(std::move(q)), m_(x_order), k_(y_order), c_(x_order * y_order) {
    detail::check_series_q(q_);
    if (m_ == 0 || k_ == 0) throw Error(ErrorCode::InvalidInput, "truncation orders must be positive");
  }

  static BasicQSeries zero(Scalar q, std::size_t m, std::size_t k) { return BasicQSeries(q, m, k); }
  static BasicQSeries one(Scalar q, std::size_t m, std::size_t k) {
    BasicQSeries s(q, m, k);
    s.set(0, 0, Scalar(1));
    return s;
  }
  /// c * z^i y^j; zero if (i, j) lies outside the box.
  static BasicQSeries monomial(Scalar q, std::size_t m, std::size_t k, std::size_t i, std::size_t j,
                               Scalar c = Scalar(1)) {
    BasicQSeries s(q, m, k);
    if (i < m && j < k) s.set(i, j, c);
    return s;
  }
  static BasicQSeries x(Scalar q, std::size_t m, std::size_t k) { return monomial(q, m, k, 1, 0); }
  static BasicQSeries y(Scalar q, std::size_t m, std::size_t k) { return monomial(q, m, k, 0, 1); }

  const Scalar& q() const { return q_; }
  std::size_t x_order() const { return m_; }
  std::size_t y_order() const { return k_; }

  const Scalar& coeff(std::size_t i, std::size_t j) const { return c_.at(index(i, j)); }
  void set(std::size_t i, std::size_t j, Scalar value) { c_.at(index(i, j)) = std::move(value); }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!detail::is_zero_scalar(c)) return false;
    return true;
  }

  /// Same coefficients in a box of different size; coefficients outside the new box are dropped.
  BasicQSeries resized(std::size_t m, std::size_t k) const {
    BasicQSeries out(q_, m, k);
    for (std::size_t j = 0; j < std::min(k, k_); ++j)
      for (std::size_t i = 0; i < std::min(m, m_); ++i) out.set(i, j, coeff(i, j));
    return out;
  }

  friend bool operator==(const BasicQSeries& a, const BasicQSeries& b) {
    return a.m_ == b.m_ && a.k_ == b.k_ && a.q_ == b.q_ && a.c_ == b.c_;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i >= m_ || j >= k_) throw Error(ErrorCode::InvalidInput, "coefficient index outside the truncation box");
    return j * m_ + i;
  }

  Scalar q_;
  std::size_t m_;
  std::size_t k_;
  std::vector<Scalar> c_;
};

using QSeries = BasicQSeries<Complex>;
using ExactQSeries = BasicQSeries<GaussianRational>;

namespace detail {

template <class Scalar>
void require_compatible(const BasicQSeries<Scalar>& f, const BasicQSeries<Scalar>& g) {
  if (f.x_order() != g.x_order() || f.y_order() != g.y_order())
    throw Error(ErrorCode::TruncationMismatch, "series have different truncation boxes");
  if (!(f.q() == g.q())) throw Error(ErrorCode::QMismatch, "series have different q");
}

}  // namespace detail

template <class Scalar>
BasicQSeries<Scalar> add(const BasicQSeries<Scalar>& f, const BasicQSeries<Scalar>& g) {
  detail::require_compatible(f, g);
  BasicQSeries<Scalar> out = f;
  for (std::size_t j = 0; j < f.y_order(); ++j)
    for (std::size_t i = 0; i < f.x_order(); ++i) out.set(i, j, f.coeff(i, j) + g.coeff(i, j));
  return out;
}

template <class Scalar>
BasicQSeries<Scalar> scale(const BasicQSeries<Scalar>& f, const Scalar& c) {
  BasicQSeries<Scalar> out = f;
  for (std::size_t j = 0; j < f.y_order(); ++j)
    for (std::size_t i = 0; i < f.x_order(); ++i) out.set(i, j, f.coeff(i, j) * c);
  return out;
}

/// sum_n (sum_{a+b=n} f_a(z) g_b(q^a z)) y^n, truncated to the shared box.
template <class Scalar>
BasicQSeries<Scalar> q_mul(const BasicQSeries<Scalar>& f, const BasicQSeries<Scalar>& g) {
  detail::require_compatible(f, g);
  const std::size_t m = f.x_order();
  const std::size_t k = f.y_order();
  // q^e for e up to (k-1)(m-1)
  std::vector<Scalar> qpow((k - 1) * (m - 1) + 1, Scalar(1));
  for (std::size_t e = 1; e < qpow.size(); ++e) qpow[e] = qpow[e - 1] * f.q();

  BasicQSeries<Scalar> out(f.q(), m, k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t i = 0; i < m; ++i) {
      const Scalar& fc = f.coeff(i, a);
      if (detail::is_zero_scalar(fc)) continue;
      for (std::size_t b = 0; a + b < k; ++b) {
        for (std::size_t d = 0; i + d < m; ++d) {
          const Scalar& gc = g.coeff(d, b);
          if (detail::is_zero_scalar(gc)) continue;
          out.set(i + d, a + b, out.coeff(i + d, a + b) + fc * gc * qpow[a * d]);
        }
      }
    }
  }
  return out;
}

template <class Scalar>
BasicQSeries<Scalar> q_pow(const BasicQSeries<Scalar>& f, std::size_t p) {
  BasicQSeries<Scalar> out = BasicQSeries<Scalar>::one(f.q(), f.x_order(), f.y_order());
  for (std::size_t n = 0; n < p; ++n) out = q_mul(out, f);
  return out;
}

/// Largest coefficient modulus of f - g.
double max_coeff_diff(const QSeries& f, const QSeries& g);

ExactQSeries to_exact(const QSeries& f);
QSeries to_double(const ExactQSeries& f);

}  // namespace qspec
