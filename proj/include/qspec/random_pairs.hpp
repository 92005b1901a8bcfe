#pragma once

#include <cstddef>
#include <random>

#include "qspec/qpair.hpp"

namespace qspec {

using Rng = std::mt19937_64;

/// Uniform |q| in [min_abs, max_abs] with a uniform phase, or real positive q.
QParameter random_q(Rng& rng, double min_abs, double max_abs, bool real_only = false);

Complex random_complex(Rng& rng, double scale = 1.0);

/// Monomial module on a random staircase of n exponents, conjugated by a random
/// diagonal and a random unit upper-triangular matrix. T and S stay exactly
/// strictly upper triangular, so their computed spectra are exactly {0}.
QPair random_nilpotent_pair(Rng& rng, std::size_t n, QParameter q);

/// Options for random_q_pair.
struct RandomPairOptions {
  std::size_t max_dim = 6;
  /// Longest q-chain inside a block; bounds the nilpotency index of the shift.
  std::size_t max_chain = 3;
  bool allow_x_blocks = true;
  bool allow_y_blocks = true;
  bool allow_nilpotent_blocks = true;
  /// Conjugate by a random well-conditioned matrix at the end.
  bool conjugate = true;
};

/// Direct sum of x-type blocks (T = diag(T0, q^{-1}T0, ...), S a block shift),
/// y-type blocks (S = diag(S0, qS0, ...), T a block shift) and small nilpotent
/// blocks, optionally conjugated. Dimension lands in [1, max_dim].
QPair random_q_pair(Rng& rng, QParameter q, const RandomPairOptions& opts = {});

}  // namespace qspec
