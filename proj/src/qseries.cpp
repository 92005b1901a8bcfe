#include "qspec/qseries.hpp"

namespace qspec {

double max_coeff_diff(const QSeries& f, const QSeries& g) {
  detail::require_compatible(f, g);
  double out = 0.0;
  for (std::size_t j = 0; j < f.y_order(); ++j)
    for (std::size_t i = 0; i < f.x_order(); ++i)
      out = std::max(out, std::abs(f.coeff(i, j) - g.coeff(i, j)));
  return out;
}

ExactQSeries to_exact(const QSeries& f) {
  ExactQSeries out(GaussianRational::from_complex(f.q()), f.x_order(), f.y_order());
  for (std::size_t j = 0; j < f.y_order(); ++j)
    for (std::size_t i = 0; i < f.x_order(); ++i)
      out.set(i, j, GaussianRational::from_complex(f.coeff(i, j)));
  return out;
}

QSeries to_double(const ExactQSeries& f) {
  QSeries out(f.q().to_complex(), f.x_order(), f.y_order());
  for (std::size_t j = 0; j < f.y_order(); ++j)
    for (std::size_t i = 0; i < f.x_order(); ++i) out.set(i, j, f.coeff(i, j).to_complex());
  return out;
}

}  // namespace qspec
