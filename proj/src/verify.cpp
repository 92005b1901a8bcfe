#include "qspec/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "qspec/cechcat.hpp"
#include "qspec/error.hpp"
#include "qspec/exact.hpp"
#include "qspec/funcalc.hpp"
#include "qspec/homology.hpp"
#include "qspec/koszul.hpp"
#include "qspec/qpair.hpp"
#include "qspec/qseries.hpp"
#include "qspec/qtopology.hpp"
#include "qspec/random_pairs.hpp"

namespace qspec {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

long long uniform_int(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

const AxisPoint kOrigin{};

// ---------------------------------------------------------------------------

SuiteResult nilpotent_suite(std::uint64_t seed) {
  SuiteResult r;
  const auto start = Clock::now();
  Rng rng(seed);
  ToleranceConfig cfg;
  std::size_t taylor_ok = 0;
  std::size_t local_ok = 0;
  const std::size_t trials = 50;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t n = uniform_size(rng, 2, 8);
    const QParameter q = random_q(rng, 0.1, 0.9);
    const QPair pair = random_nilpotent_pair(rng, n, q);
    const SpectrumResult s = taylor_spectrum(pair, cfg);
    if (s.undecided.empty() && s.taylor.size() == 1 && s.taylor[0] == kOrigin) ++taylor_ok;
    const PutinarResult p = putinar_spectrum(pair, Geometry::Local, cfg);
    const auto& gens = p.set.generators();
    if (p.undecided.empty() && gens.size() == 1 && gens[0] == kOrigin && p.set.contains(kOrigin) &&
        !p.set.contains(AxisPoint{{1.0, 0.0}, {0.0, 0.0}})) {
      ++local_ok;
    }
  }
  r.seconds = seconds_since(start);
  r.details.push_back(fmt("taylor = {(0,0)} for %zu/%zu nilpotent pairs (dims 2-8)", taylor_ok, trials));
  r.details.push_back(fmt("local putinar = {(0,0)} for %zu/%zu", local_ok, trials));
  r.details.push_back(fmt("runtime %.3f s (limit 5 s)", r.seconds));
  r.pass = taylor_ok == trials && local_ok == trials && r.seconds < 5.0;
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult qprojection_suite(std::uint64_t seed) {
  SuiteResult r;
  const auto start = Clock::now();
  Rng rng(seed);
  ToleranceConfig cfg;
  const std::size_t trials = 50;
  std::size_t tested = 0;
  std::size_t outside = 0;
  std::size_t ambiguous = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const QParameter q = random_q(rng, 0.2, 0.9);
    const QPair pair = random_q_pair(rng, q);
    const GridScanReport g = grid_scan(pair, 101, cfg);
    tested += g.points_tested;
    outside += g.outside.size();
    ambiguous += g.ambiguous;
  }
  r.seconds = seconds_since(start);
  r.details.push_back(fmt("%zu pairs, %zu grid points tested", trials, tested));
  r.details.push_back(fmt("non-transversal outside candidates: %zu, rank guard violations: %zu", outside, ambiguous));
  r.details.push_back(fmt("runtime %.3f s (limit 60 s)", r.seconds));
  r.pass = outside == 0 && ambiguous == 0 && r.seconds < 60.0;
  return r;
}

// ---------------------------------------------------------------------------

AxisPoint random_axis_point(Rng& rng, const QPair& pair, const ToleranceConfig& cfg) {
  switch (uniform_size(rng, 0, 3)) {
    case 0:
      return kOrigin;
    case 1: {
      const auto cands = candidate_points(pair, cfg);
      return cands[uniform_size(rng, 0, cands.size() - 1)];
    }
    case 2:
      return {random_complex(rng, 2.0), {0.0, 0.0}};
    default:
      return {{0.0, 0.0}, random_complex(rng, 2.0)};
  }
}

SuiteResult koszul_suite(std::uint64_t seed) {
  SuiteResult r;
  const auto start = Clock::now();
  Rng rng(seed);
  ToleranceConfig cfg;

  const std::size_t samples = 1000;
  double worst = 0.0;
  std::size_t residual_ok = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const QPair pair = random_q_pair(rng, random_q(rng, 0.1, 0.95));
    const AxisPoint z = random_axis_point(rng, pair, cfg);
    const double res = koszul_residual(build_koszul(pair, z));
    worst = std::max(worst, res);
    if (res <= 1e-10) ++residual_ok;
  }
  r.details.push_back(fmt("delta1*delta2 scaled residual <= 1e-10 in %zu/%zu samples (max %.2e)", residual_ok,
                          samples, worst));

  const std::size_t instances = 20;
  std::size_t verdicts = 0;
  std::size_t agree = 0;
  std::size_t spectra_ok = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    const QParameter q = random_q(rng, 0.2, 0.9);
    const std::size_t n = uniform_size(rng, 1, 4);
    std::vector<Complex> t(n);
    for (auto& v : t) v = random_complex(rng, 2.0);
    if (i % 5 == 0) t[0] = 0.0;
    if (i % 7 == 3 && n > 1) t[1] = t[0];
    Matrix T = Matrix::Zero(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t k = 0; k < n; ++k) T(Eigen::Index(k), Eigen::Index(k)) = t[k];
    const QPair pair = validate_qpair(T, Matrix::Zero(Eigen::Index(n), Eigen::Index(n)), q, cfg);

    // analytic spectrum on C_x: sigma(T) u q^{-1} sigma(T)
    std::vector<AxisPoint> analytic;
    for (Complex v : t) {
      for (Complex w : {v, v * q.inverse()}) {
        const AxisPoint p{w, {0.0, 0.0}};
        const bool seen = std::any_of(analytic.begin(), analytic.end(),
                                      [&](const AxisPoint& a) { return points_match(a, p, cfg.point_match_tol); });
        if (!seen) analytic.push_back(p);
      }
    }
    auto oracle = [&](const AxisPoint& z) {
      return !std::any_of(analytic.begin(), analytic.end(),
                          [&](const AxisPoint& a) { return points_match(a, z, cfg.point_match_tol); });
    };

    std::vector<AxisPoint> probes = candidate_points(pair, cfg);
    for (Complex v : t) {
      probes.push_back({v * q.value(), {0.0, 0.0}});
      probes.push_back({v * q.inverse() * q.inverse(), {0.0, 0.0}});
      probes.push_back({{0.0, 0.0}, v});
    }
    for (int k = 0; k < 10; ++k) probes.push_back({random_complex(rng, 3.0), {0.0, 0.0}});
    for (int k = 0; k < 5; ++k) probes.push_back({{0.0, 0.0}, random_complex(rng, 3.0)});
    probes.push_back(kOrigin);
    for (const AxisPoint& z : probes) {
      ++verdicts;
      try {
        if (is_transversal(pair, z, cfg) == oracle(z)) ++agree;
      } catch (const Error&) {
        // an undecided verdict is a disagreement
      }
    }

    const SpectrumResult s = taylor_spectrum(pair, cfg);
    bool same = s.undecided.empty() && s.taylor.size() == analytic.size();
    for (const AxisPoint& a : analytic) {
      same = same && std::any_of(s.taylor.begin(), s.taylor.end(),
                                 [&](const AxisPoint& b) { return points_match(a, b, cfg.point_match_tol); });
    }
    if (same) ++spectra_ok;
  }
  r.details.push_back(fmt("S = 0 oracle: %zu/%zu verdicts agree over %zu diagonal-T instances", agree, verdicts,
                          instances));
  r.details.push_back(fmt("taylor spectrum equals sigma(T) u q^-1 sigma(T) in %zu/%zu", spectra_ok, instances));
  r.seconds = seconds_since(start);
  r.pass = residual_ok == samples && agree == verdicts && spectra_ok == instances;
  return r;
}

// ---------------------------------------------------------------------------

QSeries random_series(Rng& rng, QParameter q, std::size_t m, std::size_t k) {
  QSeries f(q.value(), m, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) f.set(i, j, random_complex(rng, 1.0));
  return f;
}

SuiteResult homomorphism_suite(std::uint64_t seed) {
  SuiteResult r;
  const auto start = Clock::now();
  Rng rng(seed);
  ToleranceConfig cfg;
  RandomPairOptions opts;
  opts.max_dim = 6;
  opts.allow_y_blocks = false;
  const std::size_t trials = 500;
  std::size_t ok = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const QParameter q = random_q(rng, 0.2, 0.95);
    const QPair pair = random_q_pair(rng, q, opts);
    const QSeries f = random_series(rng, q, 4, 4);
    const QSeries g = random_series(rng, q, 4, 4);
    const HomomorphismReport h = homomorphism_check(f, g, pair, cfg);
    const double rel = h.residual / h.scale;
    worst = std::max(worst, rel);
    if (h.residual <= 1e-9 * h.scale) ++ok;
  }
  r.seconds = seconds_since(start);
  r.details.push_back(fmt("residual <= 1e-9 scale in %zu/%zu triples (max residual/scale %.2e)", ok, trials, worst));
  r.details.push_back(fmt("runtime %.3f s (limit 10 s)", r.seconds));
  r.pass = ok == trials && r.seconds < 10.0;
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult putinar_suite(std::uint64_t seed) {
  SuiteResult r;
  const auto start = Clock::now();
  Rng rng(seed);
  ToleranceConfig cfg;
  Matrix T(1, 1);
  T(0, 0) = 1.0;
  const QPair pair = validate_qpair(T, Matrix::Zero(1, 1), QParameter(0.5), cfg);
  const PutinarResult p = putinar_spectrum(pair, Geometry::OY, cfg);

  std::size_t orbit_in = 0;
  for (int k = 0; k <= 20; ++k) {
    if (p.set.contains({{std::ldexp(1.0, k), 0.0}, {0.0, 0.0}})) ++orbit_in;
  }
  // half of the probes sit on the positive real axis between orbit points
  std::size_t off_out = 0;
  const std::size_t probes = 20;
  for (std::size_t i = 0; i < probes; ++i) {
    const double e = std::floor(uniform_real(rng, -4.0, 22.0)) + uniform_real(rng, 0.1, 0.9);
    const double phase = i % 2 == 0 ? 0.0 : uniform_real(rng, 0.1, 2.0 * std::numbers::pi - 0.1);
    const Complex z = std::polar(std::exp2(e), phase);
    if (!p.set.contains({z, {0.0, 0.0}})) ++off_out;
  }
  const bool forward_out = !p.set.contains({{0.5, 0.0}, {0.0, 0.0}});
  const bool y_out = !p.set.contains({{0.0, 0.0}, {1.0, 0.0}});
  r.seconds = seconds_since(start);
  r.details.push_back(fmt("members at 2^k, k = 0..20: %zu/21", orbit_in));
  r.details.push_back(fmt("non-members at random off-orbit points: %zu/%zu", off_out, probes));
  r.details.push_back(fmt("forward orbit point 1/2 excluded: %s, y-axis excluded: %s", forward_out ? "yes" : "no",
                          y_out ? "yes" : "no"));
  r.pass = orbit_in == 21 && off_out == probes && forward_out && y_out;
  return r;
}

// ---------------------------------------------------------------------------

// Unit lower bidiagonal times unit upper bidiagonal with entries in {-1, 0, 1},
// behind a row permutation; the inverse has small integer entries.
ExactMatrix unimodular(Rng& rng, std::size_t n) {
  ExactMatrix l = exact_identity(n);
  ExactMatrix u = exact_identity(n);
  for (std::size_t i = 1; i < n; ++i) {
    l(i, i - 1) = GaussianRational(uniform_int(rng, -1, 1));
    u(i - 1, i) = GaussianRational(uniform_int(rng, -1, 1));
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  ExactMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = GaussianRational(1);
  return p * l * u;
}

Matrix to_double_matrix(const ExactMatrix& m) { return m.to_matrix(); }

// Function presheaf in a random integral basis per open.
Presheaf twisted_function_presheaf(const FiniteSpace& space, Rng& rng) {
  const Presheaf base = function_presheaf(space);
  std::vector<ExactMatrix> g;
  std::vector<ExactMatrix> g_inv;
  for (std::size_t i = 0; i < space.open_count(); ++i) {
    g.push_back(unimodular(rng, base.dim(i)));
    g_inv.push_back(*exact_inverse(g.back()));
  }
  std::map<Presheaf::Key, Matrix> maps;
  for (const auto& [key, m] : base.restrictions()) {
    if (base.dim(key.first) == 0 || base.dim(key.second) == 0) continue;
    maps[key] = to_double_matrix(g[key.second] * ExactMatrix::from_matrix(m) * g_inv[key.first]);
  }
  return Presheaf::create(space, base.dims(), maps);
}

bool integral(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (z.real() != std::round(z.real()) || z.imag() != std::round(z.imag())) return false;
    }
  return true;
}

ExactMatrix random_rank_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::size_t rank) {
  for (;;) {
    ExactMatrix a(rows, rank);
    ExactMatrix b(rank, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < rank; ++j) a(i, j) = GaussianRational(uniform_int(rng, -2, 2));
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < cols; ++j) b(i, j) = GaussianRational(uniform_int(rng, -2, 2));
    ExactMatrix m = a * b;
    if (exact_rank(m) == rank) return m;
  }
}

SuiteResult cech_suite(std::uint64_t seed) {
  SuiteResult r;
  const auto start = Clock::now();
  Rng rng(seed);
  ToleranceConfig cfg;

  // d o d = 0 on integral data, where double arithmetic is exact
  std::size_t complexes = 0;
  std::size_t dd_ok = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const FiniteSpace& space : enumerate_topologies(n)) {
      const Presheaf p = twisted_function_presheaf(space, rng);
      std::vector<std::size_t> nonempty;
      for (std::size_t i = 1; i < space.open_count(); ++i) nonempty.push_back(i);
      std::vector<std::vector<std::size_t>> bases;
      for (std::size_t a = 0; a < nonempty.size(); ++a) {
        bases.push_back({nonempty[a]});
        for (std::size_t b = a + 1; b < nonempty.size(); ++b) bases.push_back({nonempty[a], nonempty[b]});
      }
      for (std::size_t k = 0; k < 3 && nonempty.size() >= 3; ++k) {
        std::vector<std::size_t> pick = nonempty;
        std::shuffle(pick.begin(), pick.end(), rng);
        pick.resize(3);
        bases.push_back(pick);
      }
      CechOptions opts;
      opts.require_covering = false;
      for (const auto& basis : bases) {
        for (std::size_t u = 1; u < space.open_count(); ++u) {
          const CechComplex c = cech_complex(p, basis, u, opts);
          ++complexes;
          bool ok = true;
          for (const Matrix& m : c.complex.maps) ok = ok && integral(m);
          for (std::size_t k = 0; ok && k + 1 < c.complex.maps.size(); ++k) {
            const Matrix& a = c.complex.maps[k];
            const Matrix& b = c.complex.maps[k + 1];
            if (a.size() == 0 || b.size() == 0) continue;
            ok = max_norm(b * a) == 0.0;
          }
          if (ok) ++dd_ok;
        }
      }
    }
  }
  r.details.push_back(fmt("d o d = 0 exactly in %zu/%zu generated complexes", dd_ok, complexes));

  // one-element basis {a} over {a,b} on the Sierpinski space: exact iff eps is invertible
  const FiniteSpace sierpinski = FiniteSpace::from_opens({"a", "b"}, {0b00, 0b01, 0b11});
  const std::size_t b_open = sierpinski.open_index(0b01);
  const std::size_t u_open = sierpinski.open_index(0b11);
  std::size_t cases = 0;
  std::size_t iff_ok = 0;
  for (std::size_t m = 0; m <= 4; ++m) {
    for (std::size_t k = 0; k <= 4; ++k) {
      for (std::size_t rank = 0; rank <= std::min(m, k); ++rank) {
        const ExactMatrix eps = random_rank_matrix(rng, k, m, rank);
        std::vector<std::size_t> dims(sierpinski.open_count(), 0);
        dims[b_open] = k;
        dims[u_open] = m;
        std::map<Presheaf::Key, Matrix> maps;
        if (m > 0 && k > 0) maps[{u_open, b_open}] = eps.to_matrix();
        const Presheaf p = Presheaf::create(sierpinski, dims, maps);
        CechOptions opts;
        opts.require_covering = false;
        const CechReport rep = cech_exactness(p, {b_open}, u_open, opts, cfg);
        const bool iso = m == k && rank == m;
        const auto exact_dims = exact_homology_dims(to_exact(rep.cech.complex));
        bool exact_says = true;
        for (std::size_t d = 0; d + 1 < exact_dims.size(); ++d) exact_says = exact_says && exact_dims[d] == 0;
        ++cases;
        if (!rep.homology.ambiguous && rep.exact == iso && exact_says == iso) ++iff_ok;
      }
    }
  }
  r.details.push_back(fmt("one-element basis: exact iff eps iso in %zu/%zu cases (dims 0..4, all ranks)", iff_ok,
                          cases));

  // points a, b, c; opens {}, {a}, {a,b}, {a,c}, {a,b,c}; basis {a,b}, {a,c}
  const FiniteSpace three = FiniteSpace::from_opens({"a", "b", "c"}, {0b000, 0b001, 0b011, 0b101, 0b111});
  const Presheaf fp = function_presheaf(three);
  const CechReport rep =
      cech_exactness(fp, {three.open_index(0b011), three.open_index(0b101)}, three.whole_index(), {}, cfg);
  const std::vector<std::size_t> want_dims{3, 4, 6, 10, 18, 34};
  const std::vector<std::size_t> want_ranks{3, 1, 5, 5, 13};
  std::vector<std::size_t> exact_ranks;
  const ExactCochainComplex ex = to_exact(rep.cech.complex);
  for (const ExactMatrix& m : ex.maps) exact_ranks.push_back(exact_rank(m));
  const bool table_ok = rep.cech.complex.dims == want_dims && rep.homology.ranks == want_ranks &&
                        exact_ranks == want_ranks && rep.exact && !rep.homology.ambiguous;
  std::string ranks_str;
  for (std::size_t v : rep.homology.ranks) ranks_str += (ranks_str.empty() ? "" : ",") + std::to_string(v);
  r.details.push_back(fmt("3-point instance: ranks (%s), exact %s, frozen table %s", ranks_str.c_str(),
                          rep.exact ? "yes" : "no", table_ok ? "matches" : "differs"));

  r.seconds = seconds_since(start);
  r.pass = dd_ok == complexes && iff_ok == cases && table_ok;
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult catspec_suite(std::uint64_t) {
  SuiteResult r;
  const auto start = Clock::now();

  std::size_t posets = 0;
  std::size_t oracles = 0;
  std::size_t up_closed_ok = 0;
  std::size_t least_cases = 0;
  std::size_t least_ok = 0;
  std::size_t smt_checks = 0;
  std::size_t smt_ok = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const FiniteCategory& cat : enumerate_posets(n)) {
      ++posets;
      const auto least = cat.least();
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        TransversalityOracle oracle;
        for (std::size_t i = 0; i < n; ++i) {
          oracle.objects[cat.name(i)] = (mask >> i & 1U) != 0;
          oracle.points[cat.spec(i).front()] = (mask >> i & 1U) != 0;
        }
        ++oracles;
        const CategorySpectrumResult s = category_spectrum(cat, oracle);
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        std::vector<std::size_t> complement;
        std::set_difference(all.begin(), all.end(), s.res.begin(), s.res.end(), std::back_inserter(complement));
        if (cat.is_up_closed(s.res) && complement == s.sigma) ++up_closed_ok;
        if (least && !oracle.objects[cat.name(*least)]) {
          ++least_cases;
          if (std::binary_search(s.sigma.begin(), s.sigma.end(), *least)) ++least_ok;
        }
        for (std::size_t a = 0; a < n; ++a) {
          const SpectralMappingReport rep = spectral_mapping_check(cat, oracle, a);
          ++smt_checks;
          if (rep.sigma_equal && rep.taylor_equal) ++smt_ok;
        }
      }
    }
  }
  r.details.push_back(fmt("%zu posets (<= 5 objects), %zu oracles: res up-closed with complement sigma in %zu", posets,
                          oracles, up_closed_ok));
  r.details.push_back(fmt("least element in sigma for nontrivial modules: %zu/%zu", least_ok, least_cases));
  r.details.push_back(fmt("sigma and taylor restriction equalities: %zu/%zu", smt_ok, smt_checks));

  std::size_t instances = 0;
  std::size_t full_ok = 0;
  std::size_t full_checks = 0;
  std::size_t put_ok = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const FiniteSpace& space : enumerate_topologies(n)) {
      const Presheaf p = function_presheaf(space);
      const std::size_t opens = space.open_count();
      for (PointMask spec = 0; spec <= space.full(); ++spec) {
        const FiniteCategory cat = presheaf_category(p, spec);
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << opens); ++mask) {
          TransversalityOracle oracle;
          std::map<std::string, bool> verdicts;
          for (std::size_t i = 0; i < opens; ++i) {
            verdicts[space.open_name(i)] = (mask >> i & 1U) != 0;
          }
          oracle.objects = verdicts;
          // point verdicts vary with the object mask so that every pattern shows up
          for (std::size_t i = 0; i < n; ++i) oracle.points[space.points()[i]] = ((mask + spec) >> i & 1U) != 0;
          ++instances;
          for (std::size_t a = 0; a < cat.size(); ++a) {
            const SpectralMappingReport rep = spectral_mapping_check(cat, oracle, a);
            ++full_checks;
            if (rep.sigma_equal && rep.sigma_p_equal && rep.taylor_equal) ++full_ok;
          }
          if (presheaf_spectrum_check(p, verdicts, spec).equal) ++put_ok;
        }
      }
    }
  }
  r.details.push_back(fmt("presheaf instances (<= 3 points, all spec subsets, all oracles): %zu", instances));
  r.details.push_back(fmt("all three restriction equalities: %zu/%zu", full_ok, full_checks));
  r.details.push_back(fmt("sigma_P = sigma restricted to Spec: %zu/%zu", put_ok, instances));
  r.seconds = seconds_since(start);
  r.details.push_back(fmt("runtime %.3f s (limit 30 s)", r.seconds));
  r.pass = up_closed_ok == oracles && least_ok == least_cases && smt_ok == smt_checks && full_ok == full_checks &&
           put_ok == instances && r.seconds < 30.0;
  return r;
}

// ---------------------------------------------------------------------------

GaussianRational random_unit_rational(Rng& rng) {
  const Rational v(uniform_int(rng, 1, 5), uniform_int(rng, 1, 5));
  switch (uniform_size(rng, 0, 3)) {
    case 0:
      return {v, 0};
    case 1:
      return {-v, 0};
    case 2:
      return {0, v};
    default:
      return {v, v};
  }
}

SuiteResult homology_suite(std::uint64_t seed) {
  SuiteResult r;
  const auto start = Clock::now();
  Rng rng(seed);
  ToleranceConfig cfg;
  const std::size_t trials = 200;
  std::size_t ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t degrees = uniform_size(rng, 2, 6);
    const std::size_t total = uniform_size(rng, degrees, 24);
    // split total into degrees parts, each possibly zero
    std::vector<std::size_t> dims(degrees, 0);
    for (std::size_t i = 0; i < total; ++i) ++dims[uniform_size(rng, 0, degrees - 1)];
    // ranks with r[p-1] + r[p] <= dims[p]
    std::vector<std::size_t> ranks(degrees - 1, 0);
    for (std::size_t p = 0; p + 1 < degrees; ++p) {
      const std::size_t incoming = p == 0 ? 0 : ranks[p - 1];
      const std::size_t room = std::min(dims[p] - incoming, dims[p + 1]);
      ranks[p] = uniform_size(rng, 0, room);
    }
    std::vector<ExactMatrix> g;
    std::vector<ExactMatrix> g_inv;
    for (std::size_t p = 0; p < degrees; ++p) {
      ExactMatrix d = exact_identity(dims[p]);
      for (std::size_t i = 0; i < dims[p]; ++i) d(i, i) = random_unit_rational(rng);
      g.push_back(d * unimodular(rng, dims[p]));
      g_inv.push_back(*exact_inverse(g.back()));
    }
    ExactCochainComplex ex;
    ex.dims = dims;
    for (std::size_t p = 0; p + 1 < degrees; ++p) {
      ExactMatrix e(dims[p + 1], dims[p]);
      const std::size_t from = p == 0 ? 0 : ranks[p - 1];
      for (std::size_t i = 0; i < ranks[p]; ++i) e(i, from + i) = GaussianRational(1);
      ex.maps.push_back(g[p + 1] * e * g_inv[p]);
    }
    std::vector<std::size_t> expected(degrees);
    for (std::size_t p = 0; p < degrees; ++p) {
      expected[p] = dims[p] - (p == 0 ? 0 : ranks[p - 1]) - (p + 1 < degrees ? ranks[p] : 0);
    }
    CochainComplex fl;
    fl.dims = dims;
    for (const ExactMatrix& m : ex.maps) fl.maps.push_back(m.to_matrix());
    try {
      const auto exact_dims = exact_homology_dims(ex);
      const HomologyReport h = homology_dims(fl, cfg);
      if (h.dims == exact_dims && exact_dims == expected) ++ok;
    } catch (const Error&) {
      // RankAmbiguous or NotAComplex counts as a mismatch
    }
  }
  r.seconds = seconds_since(start);
  r.details.push_back(fmt("floating dims equal exact dims in %zu/%zu rational complexes (total dim <= 24)", ok,
                          trials));
  r.pass = ok == trials;
  return r;
}

using SuiteFn = std::function<SuiteResult(std::uint64_t)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites{
      {"nilpotent", nilpotent_suite}, {"qprojection", qprojection_suite}, {"koszul", koszul_suite},
      {"homomorphism", homomorphism_suite}, {"putinar", putinar_suite}, {"cech", cech_suite},
      {"catspec", catspec_suite}, {"homology", homology_suite},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"nilpotent", "qprojection", "koszul",  "homomorphism",
                                              "putinar",   "cech",        "catspec", "homology"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  const auto& suites = registry();
  const auto it = suites.find(name);
  if (it == suites.end()) throw Error(ErrorCode::InvalidInput, "unknown suite '" + name + "'");
  SuiteResult r = it->second(seed);
  r.name = name;
  return r;
}

}  // namespace qspec
