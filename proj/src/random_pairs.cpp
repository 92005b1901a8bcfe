#include "qspec/random_pairs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "qspec/error.hpp"

namespace qspec {

namespace {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Complex random_unit_scaled(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> mod(lo, hi);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  return std::polar(mod(rng), arg(rng));
}

Matrix random_matrix(Rng& rng, Eigen::Index n, double scale) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = random_complex(rng, scale);
  return m;
}

struct Block {
  Matrix T;
  Matrix S;
};

// T = diag(T0, q^{-1} T0, ...), S(k+1, k) = c_k I.
Block x_block(Rng& rng, QParameter q, Eigen::Index chain, Eigen::Index inner) {
  const Matrix t0 = random_matrix(rng, inner, 1.0);
  const Eigen::Index n = chain * inner;
  Block b{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  Complex factor = 1.0;
  for (Eigen::Index k = 0; k < chain; ++k) {
    b.T.block(k * inner, k * inner, inner, inner) = factor * t0;
    factor *= q.inverse();
    if (k + 1 < chain) {
      b.S.block((k + 1) * inner, k * inner, inner, inner) =
          random_unit_scaled(rng, 0.5, 1.5) * Matrix::Identity(inner, inner);
    }
  }
  return b;
}

// S = diag(S0, q S0, ...), T(k+1, k) = c_k I.
Block y_block(Rng& rng, QParameter q, Eigen::Index chain, Eigen::Index inner) {
  const Matrix s0 = random_matrix(rng, inner, 1.0);
  const Eigen::Index n = chain * inner;
  Block b{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  Complex factor = 1.0;
  for (Eigen::Index k = 0; k < chain; ++k) {
    b.S.block(k * inner, k * inner, inner, inner) = factor * s0;
    factor *= q.value();
    if (k + 1 < chain) {
      b.T.block((k + 1) * inner, k * inner, inner, inner) =
          random_unit_scaled(rng, 0.5, 1.5) * Matrix::Identity(inner, inner);
    }
  }
  return b;
}

}  // namespace

QParameter random_q(Rng& rng, double min_abs, double max_abs, bool real_only) {
  std::uniform_real_distribution<double> mod(min_abs, max_abs);
  if (real_only) return QParameter(Complex(mod(rng), 0.0));
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  return QParameter(std::polar(mod(rng), arg(rng)));
}

Complex random_complex(Rng& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double re = u(rng);
  const double im = u(rng);
  return {re, im};
}

QPair random_nilpotent_pair(Rng& rng, std::size_t n, QParameter q) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "random_nilpotent_pair needs n >= 1");
  std::set<std::pair<int, int>> staircase{{0, 0}};
  while (staircase.size() < n) {
    std::vector<std::pair<int, int>> corners;
    for (const auto& [a, b] : staircase) {
      for (const auto& cand : {std::pair{a + 1, b}, std::pair{a, b + 1}}) {
        const auto [ca, cb] = cand;
        if (staircase.count(cand)) continue;
        const bool left_ok = ca == 0 || staircase.count({ca - 1, cb});
        const bool below_ok = cb == 0 || staircase.count({ca, cb - 1});
        if (left_ok && below_ok) corners.push_back(cand);
      }
    }
    std::sort(corners.begin(), corners.end());
    corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
    staircase.insert(corners[uniform_index(rng, 0, corners.size() - 1)]);
  }
  std::vector<std::pair<int, int>> basis(staircase.begin(), staircase.end());
  std::stable_sort(basis.begin(), basis.end(), [](const auto& l, const auto& r) {
    return l.first + l.second > r.first + r.second;
  });
  auto index_of = [&](int a, int b) -> Eigen::Index {
    const auto it = std::find(basis.begin(), basis.end(), std::pair{a, b});
    return it == basis.end() ? -1 : static_cast<Eigen::Index>(it - basis.begin());
  };
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix T = Matrix::Zero(dim, dim);
  Matrix S = Matrix::Zero(dim, dim);
  for (const auto& [a, b] : basis) {
    const Eigen::Index col = index_of(a, b);
    if (const auto row = index_of(a + 1, b); row >= 0) T(row, col) = 1.0;
    if (const auto row = index_of(a, b + 1); row >= 0) S(row, col) = std::pow(q.value(), a);
  }
  Matrix change = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    change(i, i) = random_unit_scaled(rng, 0.5, 2.0);
    for (Eigen::Index j = i + 1; j < dim; ++j) change(i, j) = random_complex(rng, 0.3);
  }
  const Matrix inverse =
      change.triangularView<Eigen::Upper>().solve(Matrix::Identity(dim, dim));
  Matrix t = inverse * T * change;
  Matrix s = inverse * S * change;
  return validate_qpair(std::move(t), std::move(s), q);
}

QPair random_q_pair(Rng& rng, QParameter q, const RandomPairOptions& opts) {
  if (opts.max_dim < 1) throw Error(ErrorCode::DimensionMismatch, "max_dim must be >= 1");
  std::vector<int> kinds;
  if (opts.allow_x_blocks) kinds.push_back(0);
  if (opts.allow_y_blocks) kinds.push_back(1);
  if (opts.allow_nilpotent_blocks) kinds.push_back(2);
  if (kinds.empty()) throw Error(ErrorCode::InvalidInput, "no block kinds allowed");

  const std::size_t target = uniform_index(rng, std::min<std::size_t>(2, opts.max_dim), opts.max_dim);
  std::vector<Block> blocks;
  std::size_t used = 0;
  while (used < target) {
    const std::size_t remaining = target - used;
    int kind = kinds[uniform_index(rng, 0, kinds.size() - 1)];
    if (kind == 2 && remaining < 2) {
      if (kinds.size() == 1) {
        // only nilpotent blocks allowed; a 1x1 zero block is the degenerate case
        blocks.push_back({Matrix::Zero(1, 1), Matrix::Zero(1, 1)});
        used += 1;
        continue;
      }
      kind = kinds[0] == 2 ? kinds[1] : kinds[0];
    }
    if (kind == 2) {
      const std::size_t size = uniform_index(rng, 2, std::min<std::size_t>(3, remaining));
      const QPair nil = nilpotent_q_pair(size, q);
      blocks.push_back({nil.T(), nil.S()});
      used += size;
      continue;
    }
    const auto chain = static_cast<Eigen::Index>(
        uniform_index(rng, 1, std::min(opts.max_chain, remaining)));
    const auto inner = static_cast<Eigen::Index>(
        uniform_index(rng, 1, std::min<std::size_t>(2, remaining / static_cast<std::size_t>(chain))));
    blocks.push_back(kind == 0 ? x_block(rng, q, chain, inner) : y_block(rng, q, chain, inner));
    used += static_cast<std::size_t>(chain * inner);
  }

  const auto dim = static_cast<Eigen::Index>(used);
  Matrix T = Matrix::Zero(dim, dim);
  Matrix S = Matrix::Zero(dim, dim);
  Eigen::Index offset = 0;
  for (const Block& b : blocks) {
    const Eigen::Index n = b.T.rows();
    T.block(offset, offset, n, n) = b.T;
    S.block(offset, offset, n, n) = b.S;
    offset += n;
  }
  if (opts.conjugate) {
    const Matrix w = Matrix::Identity(dim, dim) + random_matrix(rng, dim, 0.25 / std::sqrt(double(dim)));
    const Matrix w_inv = w.partialPivLu().inverse();
    T = w_inv * T * w;
    S = w_inv * S * w;
  }
  return validate_qpair(std::move(T), std::move(S), q);
}

}  // namespace qspec
