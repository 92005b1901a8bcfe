#include "qspec/cechcat.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "qspec/error.hpp"

namespace qspec {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<std::string> intersect(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> difference(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset_of(PointMask a, PointMask b) { return (a & ~b) == 0; }

}  // namespace

// ---------------------------------------------------------------- categories

FiniteCategory FiniteCategory::create(std::vector<std::string> names,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& leq,
                                      std::vector<std::vector<std::string>> spec) {
  const std::size_t n = names.size();
  if (std::set<std::string>(names.begin(), names.end()).size() != n) {
    throw Error(ErrorCode::InvalidInput, "object names must be distinct");
  }
  if (spec.empty()) spec.resize(n);
  if (spec.size() != n) throw Error(ErrorCode::InvalidInput, "spec must list one point set per object");

  FiniteCategory cat;
  cat.names_ = std::move(names);
  cat.leq_.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) cat.leq_[i * n + i] = true;
  for (const auto& [a, b] : leq) {
    if (a >= n || b >= n) throw Error(ErrorCode::InvalidInput, "order pair refers to a missing object");
    cat.leq_[a * n + b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (cat.leq_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (cat.leq_[k * n + j]) cat.leq_[i * n + j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (cat.leq_[i * n + j] && cat.leq_[j * n + i]) {
        throw Error(ErrorCode::InvalidInput, "order is not antisymmetric: " + cat.names_[i] + " and " +
                                                 cat.names_[j] + " lie below each other");
      }
  cat.spec_.reserve(n);
  for (auto& s : spec) cat.spec_.push_back(sorted_unique(std::move(s)));
  return cat;
}

std::size_t FiniteCategory::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error(ErrorCode::UnknownObject, "no object named '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<std::string> FiniteCategory::all_points() const {
  ObjectSet all(size());
  for (std::size_t i = 0; i < size(); ++i) all[i] = i;
  return points_of(all);
}

std::vector<std::string> FiniteCategory::points_of(const ObjectSet& objects) const {
  std::vector<std::string> out;
  for (std::size_t i : objects) out.insert(out.end(), spec_.at(i).begin(), spec_.at(i).end());
  return sorted_unique(std::move(out));
}

ObjectSet FiniteCategory::min_neighborhood(std::size_t a) const {
  if (a >= size()) throw Error(ErrorCode::UnknownObject, "object index out of range");
  ObjectSet out;
  for (std::size_t b = 0; b < size(); ++b)
    if (leq(a, b)) out.push_back(b);
  return out;
}

bool FiniteCategory::is_up_closed(const ObjectSet& s) const {
  std::vector<bool> in(size(), false);
  for (std::size_t i : s) in.at(i) = true;
  for (std::size_t a : s)
    for (std::size_t b = 0; b < size(); ++b)
      if (leq(a, b) && !in[b]) return false;
  return true;
}

std::optional<std::size_t> FiniteCategory::least() const {
  for (std::size_t a = 0; a < size(); ++a) {
    bool below_all = true;
    for (std::size_t b = 0; b < size() && below_all; ++b) below_all = leq(a, b);
    if (below_all) return a;
  }
  return std::nullopt;
}

std::optional<std::size_t> FiniteCategory::meet(const ObjectSet& s) const {
  std::vector<std::size_t> lower;
  for (std::size_t c = 0; c < size(); ++c)
    if (std::all_of(s.begin(), s.end(), [&](std::size_t a) { return leq(c, a); })) lower.push_back(c);
  for (std::size_t c : lower)
    if (std::all_of(lower.begin(), lower.end(), [&](std::size_t d) { return leq(d, c); })) return c;
  return std::nullopt;
}

std::optional<std::size_t> FiniteCategory::join(const ObjectSet& s) const {
  std::vector<std::size_t> upper;
  for (std::size_t c = 0; c < size(); ++c)
    if (std::all_of(s.begin(), s.end(), [&](std::size_t a) { return leq(a, c); })) upper.push_back(c);
  for (std::size_t c : upper)
    if (std::all_of(upper.begin(), upper.end(), [&](std::size_t d) { return leq(c, d); })) return c;
  return std::nullopt;
}

std::size_t FiniteCategory::lattice_meet(const ObjectSet& s) const {
  if (auto m = meet(s)) return *m;
  throw Error(ErrorCode::NotALattice, "the subset has no meet");
}

std::size_t FiniteCategory::lattice_join(const ObjectSet& s) const {
  if (auto j = join(s)) return *j;
  throw Error(ErrorCode::NotALattice, "the subset has no join");
}

bool FiniteCategory::is_complete_lattice() const {
  // A finite poset is a complete lattice iff it is nonempty, has a top and all pairwise meets.
  if (size() == 0 || !meet({})) return false;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b)
      if (!meet({a, b})) return false;
  return true;
}

FiniteCategory FiniteCategory::subcategory(const ObjectSet& s) const {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> spec;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < s.size(); ++i) {
    names.push_back(name(s[i]));
    spec.push_back(spec_.at(s[i]));
    for (std::size_t j = 0; j < s.size(); ++j)
      if (i != j && leq(s[i], s[j])) order.emplace_back(i, j);
  }
  return create(std::move(names), order, std::move(spec));
}

std::vector<FiniteCategory> enumerate_posets(std::size_t n) {
  if (n > 6) throw Error(ErrorCode::InvalidInput, "poset enumeration is limited to 6 elements");
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> spec;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    spec.push_back({std::to_string(i)});
  }
  std::vector<FiniteCategory> out;
  const std::size_t total = std::size_t(1) << slots.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<bool> rel(n * n, false);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1) rel[slots[s].first * n + slots[s].second] = true;
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = i + 1; j < n && transitive; ++j)
        if (rel[i * n + j])
          for (std::size_t k = j + 1; k < n && transitive; ++k)
            if (rel[j * n + k] && !rel[i * n + k]) transitive = false;
    if (!transitive) continue;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1) pairs.push_back(slots[s]);
    out.push_back(FiniteCategory::create(names, pairs, spec));
  }
  return out;
}

// ---------------------------------------------------------------- spaces

FiniteSpace FiniteSpace::from_opens(std::vector<std::string> points, std::vector<PointMask> opens) {
  if (points.size() > 63) throw Error(ErrorCode::InvalidInput, "at most 63 points are supported");
  if (std::set<std::string>(points.begin(), points.end()).size() != points.size()) {
    throw Error(ErrorCode::InvalidInput, "point names must be distinct");
  }
  FiniteSpace s;
  s.points_ = std::move(points);
  const PointMask full = s.full();
  for (PointMask m : opens)
    if (!subset_of(m, full)) throw Error(ErrorCode::InvalidInput, "open set refers to a missing point");
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  const std::set<PointMask> family(opens.begin(), opens.end());
  if (!family.count(0) || !family.count(full)) {
    throw Error(ErrorCode::InvalidInput, "opens must contain the empty set and the whole space");
  }
  for (PointMask a : opens)
    for (PointMask b : opens)
      if (!family.count(a | b) || !family.count(a & b)) {
        throw Error(ErrorCode::InvalidInput, "opens are not closed under union and intersection");
      }
  std::sort(opens.begin(), opens.end(), [](PointMask a, PointMask b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  s.opens_ = std::move(opens);
  return s;
}

FiniteSpace FiniteSpace::from_order(std::vector<std::string> points,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& order) {
  const std::size_t n = points.size();
  if (n > 20) throw Error(ErrorCode::InvalidInput, "order-defined spaces are limited to 20 points");
  std::vector<PointMask> up(n);
  for (std::size_t i = 0; i < n; ++i) up[i] = PointMask(1) << i;
  for (const auto& [a, b] : order) {
    if (a >= n || b >= n) throw Error(ErrorCode::InvalidInput, "order pair refers to a missing point");
    up[a] |= PointMask(1) << b;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      PointMask next = up[i];
      for (std::size_t j = 0; j < n; ++j)
        if (up[i] >> j & 1) next |= up[j];
      if (next != up[i]) {
        up[i] = next;
        changed = true;
      }
    }
  }
  std::vector<PointMask> opens;
  for (PointMask m = 0; m < (PointMask(1) << n); ++m) {
    bool is_up = true;
    for (std::size_t i = 0; i < n && is_up; ++i)
      if ((m >> i & 1) && !subset_of(up[i], m)) is_up = false;
    if (is_up) opens.push_back(m);
  }
  return from_opens(std::move(points), std::move(opens));
}

std::optional<std::size_t> FiniteSpace::find_open(PointMask mask) const {
  const auto it = std::find(opens_.begin(), opens_.end(), mask);
  if (it == opens_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - opens_.begin());
}

std::size_t FiniteSpace::open_index(PointMask mask) const {
  if (auto i = find_open(mask)) return *i;
  throw Error(ErrorCode::InvalidInput, "set is not open");
}

PointMask FiniteSpace::mask_of(const std::vector<std::string>& names) const {
  PointMask m = 0;
  for (const std::string& name : names) {
    const auto it = std::find(points_.begin(), points_.end(), name);
    if (it == points_.end()) throw Error(ErrorCode::InvalidInput, "unknown point '" + name + "'");
    m |= PointMask(1) << (it - points_.begin());
  }
  return m;
}

std::string FiniteSpace::open_name(std::size_t i) const {
  const PointMask m = open(i);
  std::string out = "{";
  bool first = true;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!(m >> k & 1)) continue;
    if (!first) out += ",";
    out += points_[k];
    first = false;
  }
  return out + "}";
}

std::vector<FiniteSpace> enumerate_topologies(std::size_t n) {
  if (n > 4) throw Error(ErrorCode::InvalidInput, "topology enumeration is limited to 4 points");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  const PointMask full = (PointMask(1) << n) - 1;
  // proper nonempty subsets are free to choose
  std::vector<PointMask> middle;
  for (PointMask m = 1; m < full; ++m) middle.push_back(m);
  std::vector<FiniteSpace> out;
  const std::uint64_t total = std::uint64_t(1) << middle.size();
  for (std::uint64_t choice = 0; choice < total; ++choice) {
    std::vector<PointMask> family{0, full};
    for (std::size_t k = 0; k < middle.size(); ++k)
      if (choice >> k & 1) family.push_back(middle[k]);
    const std::set<PointMask> fam(family.begin(), family.end());
    bool closed = true;
    for (PointMask a : family) {
      for (PointMask b : family)
        if (!fam.count(a | b) || !fam.count(a & b)) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) out.push_back(FiniteSpace::from_opens(names, family));
  }
  return out;
}

// ---------------------------------------------------------------- presheaves

Presheaf Presheaf::create(FiniteSpace space, std::vector<std::size_t> dims, std::map<Key, Matrix> restrictions,
                          const ToleranceConfig& cfg) {
  const std::size_t n = space.open_count();
  if (dims.size() != n) throw Error(ErrorCode::DimensionMismatch, "one dimension per open is required");
  auto contains = [&](std::size_t from, std::size_t to) { return subset_of(space.open(to), space.open(from)); };
  for (const auto& [key, m] : restrictions) {
    const auto [from, to] = key;
    if (from >= n || to >= n) throw Error(ErrorCode::InvalidInput, "restriction refers to a missing open");
    if (!contains(from, to)) {
      throw Error(ErrorCode::InvalidInput,
                  "restriction from " + space.open_name(from) + " to " + space.open_name(to) + " is not an inclusion");
    }
    if (std::size_t(m.rows()) != dims[to] || std::size_t(m.cols()) != dims[from]) {
      throw Error(ErrorCode::DimensionMismatch,
                  "restriction " + space.open_name(from) + " -> " + space.open_name(to) + " has the wrong shape");
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    const Key key{u, u};
    const Matrix id = Matrix::Identity(Eigen::Index(dims[u]), Eigen::Index(dims[u]));
    if (auto it = restrictions.find(key); it != restrictions.end()) {
      if (max_norm(it->second - id) > cfg.relation_tol) {
        throw Error(ErrorCode::FunctorialityViolated, "restriction of " + space.open_name(u) + " to itself is not the identity");
      }
    }
    restrictions[key] = id;
  }
  // Opens are sorted by cardinality, so pairs are filled by increasing size gap.
  for (std::size_t gap = 1; gap <= space.points().size(); ++gap) {
    for (std::size_t from = 0; from < n; ++from) {
      for (std::size_t to = 0; to < n; ++to) {
        if (from == to || !contains(from, to)) continue;
        if (std::popcount(space.open(from)) - std::popcount(space.open(to)) != int(gap)) continue;
        const Key key{from, to};
        if (restrictions.count(key)) continue;
        if (dims[from] == 0 || dims[to] == 0) {
          restrictions[key] = Matrix::Zero(Eigen::Index(dims[to]), Eigen::Index(dims[from]));
          continue;
        }
        bool found = false;
        for (std::size_t mid = 0; mid < n && !found; ++mid) {
          if (mid == from || mid == to || !contains(from, mid) || !contains(mid, to)) continue;
          const auto a = restrictions.find({from, mid});
          const auto b = restrictions.find({mid, to});
          if (a == restrictions.end() || b == restrictions.end()) continue;
          restrictions[key] = b->second * a->second;
          found = true;
        }
        if (!found) {
          throw Error(ErrorCode::InvalidInput,
                      "missing restriction " + space.open_name(from) + " -> " + space.open_name(to));
        }
      }
    }
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (!contains(u, v)) continue;
      for (std::size_t w = 0; w < n; ++w) {
        if (!contains(v, w)) continue;
        const Matrix& ruv = restrictions.at({u, v});
        const Matrix& rvw = restrictions.at({v, w});
        const Matrix& ruw = restrictions.at({u, w});
        const double scale = 1.0 + ruv.norm() * rvw.norm();
        if (max_norm(rvw * ruv - ruw) > cfg.relation_tol * scale) {
          throw Error(ErrorCode::FunctorialityViolated, "restrictions " + space.open_name(u) + " -> " +
                                                            space.open_name(v) + " -> " + space.open_name(w) +
                                                            " do not compose");
        }
      }
    }
  Presheaf p;
  p.space_ = std::move(space);
  p.dims_ = std::move(dims);
  p.maps_ = std::move(restrictions);
  return p;
}

const Matrix& Presheaf::restriction(std::size_t from, std::size_t to) const {
  const auto it = maps_.find({from, to});
  if (it == maps_.end()) throw Error(ErrorCode::InvalidInput, "no restriction between these opens");
  return it->second;
}

Presheaf function_presheaf(const FiniteSpace& space) {
  const std::size_t n = space.open_count();
  std::vector<std::size_t> dims(n);
  for (std::size_t u = 0; u < n; ++u) dims[u] = std::size_t(std::popcount(space.open(u)));
  std::map<Presheaf::Key, Matrix> maps;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const PointMask mu = space.open(u), mv = space.open(v);
      if (!subset_of(mv, mu)) continue;
      Matrix r = Matrix::Zero(Eigen::Index(dims[v]), Eigen::Index(dims[u]));
      Eigen::Index row = 0, col = 0;
      for (std::size_t k = 0; k < space.points().size(); ++k) {
        if (!(mu >> k & 1)) continue;
        if (mv >> k & 1) r(row++, col) = 1.0;
        ++col;
      }
      maps[{u, v}] = std::move(r);
    }
  return Presheaf::create(space, std::move(dims), std::move(maps));
}

FiniteCategory presheaf_category(const Presheaf& p, std::optional<PointMask> spec_points) {
  const FiniteSpace& s = p.space();
  const PointMask spec_mask = spec_points.value_or(s.full());
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> spec;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t v = 0; v < s.open_count(); ++v) {
    names.push_back(s.open_name(v));
    std::vector<std::string> pts;
    for (std::size_t k = 0; k < s.points().size(); ++k)
      if ((s.open(v) & spec_mask) >> k & 1) pts.push_back(s.points()[k]);
    spec.push_back(std::move(pts));
    for (std::size_t w = 0; w < s.open_count(); ++w)
      if (v != w && subset_of(s.open(w), s.open(v))) order.emplace_back(v, w);
  }
  return FiniteCategory::create(std::move(names), order, std::move(spec));
}

RoundtripReport presheaf_roundtrip(const Presheaf& p) {
  RoundtripReport report;
  report.category = presheaf_category(p);
  const FiniteCategory& cat = report.category;
  // Object i of the category is open i of the input space.
  const std::vector<std::string> points = cat.all_points();
  std::vector<PointMask> masks;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    PointMask m = 0;
    for (const std::string& pt : cat.spec(i))
      m |= PointMask(1) << (std::lower_bound(points.begin(), points.end(), pt) - points.begin());
    masks.push_back(m);
  }
  FiniteSpace space = FiniteSpace::from_opens(points, masks);

  std::vector<std::size_t> dims(space.open_count());
  report.open_map.resize(space.open_count());
  for (std::size_t v = 0; v < space.open_count(); ++v) {
    ObjectSet inside;
    for (std::size_t i = 0; i < cat.size(); ++i)
      if (subset_of(masks[i], space.open(v))) inside.push_back(i);
    const std::size_t obj = cat.lattice_meet(inside);
    report.open_map[v] = obj;
    dims[v] = p.dim(obj);
  }
  std::map<Presheaf::Key, Matrix> maps;
  for (std::size_t v = 0; v < space.open_count(); ++v)
    for (std::size_t w = 0; w < space.open_count(); ++w)
      if (subset_of(space.open(w), space.open(v)))
        maps[{v, w}] = p.restriction(report.open_map[v], report.open_map[w]);
  report.rebuilt = Presheaf::create(std::move(space), std::move(dims), std::move(maps));

  // Compare: the open map must be a bijection preserving inclusion both ways,
  // and values and restrictions must agree along it.
  const FiniteSpace& orig = p.space();
  const FiniteSpace& back = report.rebuilt.space();
  bool ok = back.open_count() == orig.open_count() && points.size() == orig.points().size();
  std::vector<bool> hit(orig.open_count(), false);
  for (std::size_t v = 0; ok && v < back.open_count(); ++v) {
    const std::size_t ov = report.open_map[v];
    ok = !hit[ov];
    hit[ov] = true;
    ok = ok && report.rebuilt.dim(v) == p.dim(ov);
    // point names are preserved, so the open masks must agree after renaming
    std::vector<std::string> names_back, names_orig;
    for (std::size_t k = 0; k < back.points().size(); ++k)
      if (back.open(v) >> k & 1) names_back.push_back(back.points()[k]);
    for (std::size_t k = 0; k < orig.points().size(); ++k)
      if (orig.open(ov) >> k & 1) names_orig.push_back(orig.points()[k]);
    ok = ok && sorted_unique(names_back) == sorted_unique(names_orig);
    for (std::size_t w = 0; ok && w < back.open_count(); ++w) {
      const std::size_t ow = report.open_map[w];
      const bool inc_back = subset_of(back.open(w), back.open(v));
      const bool inc_orig = subset_of(orig.open(ow), orig.open(ov));
      ok = inc_back == inc_orig;
      if (ok && inc_back) ok = report.rebuilt.restriction(v, w) == p.restriction(ov, ow);
    }
  }
  report.identical = ok;
  return report;
}

// ---------------------------------------------------------------- Cech complexes

std::optional<std::size_t> basis_failure(const Presheaf& p, const std::vector<std::size_t>& basis) {
  const FiniteSpace& s = p.space();
  for (std::size_t b : basis)
    if (b >= s.open_count()) throw Error(ErrorCode::InvalidInput, "basis refers to a missing open");
  for (std::size_t u = 0; u < s.open_count(); ++u) {
    PointMask cover = 0;
    for (std::size_t b : basis)
      if (subset_of(s.open(b), s.open(u))) cover |= s.open(b);
    if (cover != s.open(u)) return u;
  }
  return std::nullopt;
}

CechComplex cech_complex(const Presheaf& p, const std::vector<std::size_t>& basis, std::size_t open,
                         const CechOptions& opts) {
  const FiniteSpace& s = p.space();
  if (open >= s.open_count()) throw Error(ErrorCode::InvalidInput, "open index out of range");
  CechComplex out;
  out.open = open;
  PointMask cover = 0;
  for (std::size_t b : basis) {
    if (b >= s.open_count()) throw Error(ErrorCode::InvalidInput, "basis refers to a missing open");
    if (subset_of(s.open(b), s.open(open))) {
      out.basis_u.push_back(b);
      cover |= s.open(b);
    }
  }
  if (opts.require_covering && cover != s.open(open)) {
    throw Error(ErrorCode::BasisNotCovering, "basis elements inside " + s.open_name(open) + " do not cover it");
  }
  const std::size_t nb = out.basis_u.size();
  out.p_max = opts.p_max.value_or(nb + 1);

  // tuples of degree p are base-nb numbers with p+1 digits, first entry most significant
  struct Degree {
    std::vector<std::size_t> open_of;  // intersection open per tuple
    std::vector<std::size_t> offset;
    std::size_t dim = 0;
  };
  auto build_degree = [&](std::size_t len) {
    Degree d;
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) {
      if (nb != 0 && count > opts.max_entries / nb) throw Error(ErrorCode::InvalidInput, "Cech complex too large");
      count *= nb;
    }
    if (nb == 0) count = 0;
    d.open_of.resize(count);
    d.offset.resize(count);
    for (std::size_t t = 0; t < count; ++t) {
      PointMask m = s.full();
      std::size_t rest = t;
      for (std::size_t i = 0; i < len; ++i) {
        m &= s.open(out.basis_u[rest % nb]);
        rest /= nb;
      }
      d.open_of[t] = s.open_index(m);
      d.offset[t] = d.dim;
      d.dim += p.dim(d.open_of[t]);
    }
    return d;
  };

  std::vector<Degree> degrees;
  for (std::size_t deg = 0; deg <= out.p_max + 1; ++deg) degrees.push_back(build_degree(deg + 1));

  auto check_size = [&](std::size_t rows, std::size_t cols) {
    if (rows != 0 && cols > opts.max_entries / rows) throw Error(ErrorCode::InvalidInput, "Cech complex too large");
  };

  CochainComplex& c = out.complex;
  c.dims.push_back(p.dim(open));
  for (const Degree& d : degrees) c.dims.push_back(d.dim);

  // augmentation
  {
    const Degree& e0 = degrees[0];
    check_size(e0.dim, p.dim(open));
    Matrix eps = Matrix::Zero(Eigen::Index(e0.dim), Eigen::Index(p.dim(open)));
    for (std::size_t t = 0; t < e0.open_of.size(); ++t) {
      const Matrix& r = p.restriction(open, e0.open_of[t]);
      eps.block(Eigen::Index(e0.offset[t]), 0, r.rows(), r.cols()) = r;
    }
    c.maps.push_back(std::move(eps));
  }
  // d^deg : E^deg -> E^{deg+1}; a target tuple of length deg+2 drops entry j to reach its source.
  for (std::size_t deg = 0; deg + 1 < degrees.size(); ++deg) {
    const Degree& src = degrees[deg];
    const Degree& dst = degrees[deg + 1];
    check_size(dst.dim, src.dim);
    Matrix d = Matrix::Zero(Eigen::Index(dst.dim), Eigen::Index(src.dim));
    const std::size_t len = deg + 2;
    std::vector<std::size_t> digits(len);
    for (std::size_t t = 0; t < dst.open_of.size(); ++t) {
      std::size_t rest = t;
      for (std::size_t i = len; i-- > 0;) {
        digits[i] = rest % nb;
        rest /= nb;
      }
      for (std::size_t j = 0; j < len; ++j) {
        std::size_t s_index = 0;
        for (std::size_t i = 0; i < len; ++i)
          if (i != j) s_index = s_index * nb + digits[i];
        const Matrix& r = p.restriction(src.open_of[s_index], dst.open_of[t]);
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        d.block(Eigen::Index(dst.offset[t]), Eigen::Index(src.offset[s_index]), r.rows(), r.cols()) += sign * r;
      }
    }
    c.maps.push_back(std::move(d));
  }
  return out;
}

CechReport cech_exactness(const Presheaf& p, const std::vector<std::size_t>& basis, std::size_t open,
                          const CechOptions& opts, const ToleranceConfig& cfg) {
  CechReport r{cech_complex(p, basis, open, opts), {}, false};
  r.homology = homology_dims(r.cech.complex, cfg);
  // the last degree has no outgoing map and is not checked
  r.exact = std::all_of(r.homology.dims.begin(), r.homology.dims.end() - 1, [](std::size_t d) { return d == 0; });
  return r;
}

bool is_cech_category(const Presheaf& p, const std::vector<std::size_t>& basis, const CechOptions& opts,
                      const ToleranceConfig& cfg) {
  return cech_exactness(p, basis, p.space().whole_index(), opts, cfg).exact;
}

// ---------------------------------------------------------------- spectra

CategorySpectrumResult category_spectrum(const FiniteCategory& cat, const TransversalityOracle& oracle) {
  std::vector<bool> ok(cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const auto it = oracle.objects.find(cat.name(i));
    if (it == oracle.objects.end()) throw Error(ErrorCode::OracleIncomplete, "no verdict for object " + cat.name(i));
    ok[i] = it->second;
  }
  CategorySpectrumResult out;
  for (std::size_t a = 0; a < cat.size(); ++a) {
    bool resolvent = true;
    for (std::size_t b = 0; b < cat.size() && resolvent; ++b)
      if (cat.leq(a, b) && !ok[b]) resolvent = false;
    (resolvent ? out.res : out.sigma).push_back(a);
  }
  const std::vector<std::string> all = cat.all_points();
  out.res_p = cat.points_of(out.res);
  out.sigma_p = difference(all, out.res_p);
  for (const std::string& pt : all) {
    const auto it = oracle.points.find(pt);
    if (it == oracle.points.end()) throw Error(ErrorCode::OracleIncomplete, "no verdict for point " + pt);
    if (!it->second) out.taylor.push_back(pt);
  }
  return out;
}

SpectralMappingReport spectral_mapping_check(const FiniteCategory& cat, const TransversalityOracle& oracle,
                                             std::size_t a) {
  const ObjectSet ua = cat.min_neighborhood(a);
  const FiniteCategory sub = cat.subcategory(ua);
  const CategorySpectrumResult whole = category_spectrum(cat, oracle);
  const CategorySpectrumResult local = category_spectrum(sub, oracle);
  const std::vector<std::string> ua_points = cat.points_of(ua);

  SpectralMappingReport r;
  std::vector<std::string> lhs, rhs;
  for (std::size_t i : whole.sigma)
    if (std::binary_search(ua.begin(), ua.end(), i)) lhs.push_back(cat.name(i));
  for (std::size_t i : local.sigma) rhs.push_back(sub.name(i));
  r.sigma_equal = sorted_unique(lhs) == sorted_unique(rhs);

  r.sigma_p_equal = intersect(whole.sigma_p, ua_points) == local.sigma_p;

  std::vector<std::vector<std::string>> spec;
  for (const std::string& pt : ua_points) spec.push_back({pt});
  const FiniteCategory discrete = FiniteCategory::create(ua_points, {}, spec);
  TransversalityOracle point_oracle;
  point_oracle.points = oracle.points;
  for (const std::string& pt : ua_points) {
    const auto it = oracle.points.find(pt);
    if (it == oracle.points.end()) throw Error(ErrorCode::OracleIncomplete, "no verdict for point " + pt);
    point_oracle.objects[pt] = it->second;
  }
  const CategorySpectrumResult pts = category_spectrum(discrete, point_oracle);
  std::vector<std::string> discrete_sigma;
  for (std::size_t i : pts.sigma) discrete_sigma.push_back(discrete.name(i));
  r.taylor_equal = intersect(whole.taylor, ua_points) == sorted_unique(discrete_sigma);
  return r;
}

PresheafSpectrumReport presheaf_spectrum_check(const Presheaf& p, const std::map<std::string, bool>& open_verdicts,
                                               PointMask spec_points) {
  const FiniteSpace& s = p.space();
  const FiniteCategory cat = presheaf_category(p, spec_points);
  TransversalityOracle oracle;
  oracle.objects = open_verdicts;
  // point verdicts do not enter sigma_P
  for (const std::string& pt : cat.all_points()) oracle.points[pt] = true;
  PresheafSpectrumReport r;
  r.sigma_p = category_spectrum(cat, oracle).sigma_p;

  auto verdict = [&](std::size_t w) {
    const auto it = open_verdicts.find(s.open_name(w));
    if (it == open_verdicts.end()) throw Error(ErrorCode::OracleIncomplete, "no verdict for " + s.open_name(w));
    return it->second;
  };
  for (std::size_t k = 0; k < s.points().size(); ++k) {
    if (!(spec_points >> k & 1)) continue;
    bool resolvent = false;
    for (std::size_t v = 0; v < s.open_count() && !resolvent; ++v) {
      if (!(s.open(v) >> k & 1)) continue;
      bool all_ok = true;
      for (std::size_t w = 0; w < s.open_count() && all_ok; ++w)
        if (subset_of(s.open(w), s.open(v))) all_ok = verdict(w);
      resolvent = all_ok;
    }
    if (!resolvent) r.sigma_on_spec.push_back(s.points()[k]);
  }
  r.sigma_on_spec = sorted_unique(std::move(r.sigma_on_spec));
  r.equal = r.sigma_p == r.sigma_on_spec;
  return r;
}

TransversalityOracle koszul_oracle(const FiniteCategory& cat, const QPair& pair,
                                   const std::map<std::string, AxisPoint>& points, const ToleranceConfig& cfg) {
  TransversalityOracle oracle;
  for (const std::string& pt : cat.all_points()) {
    const auto it = points.find(pt);
    if (it == points.end()) throw Error(ErrorCode::OracleIncomplete, "no axis point for " + pt);
    oracle.points[pt] = is_transversal(pair, it->second, cfg);
  }
  const std::optional<std::size_t> least = cat.least();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    bool ok = !(least && *least == i);
    for (const std::string& pt : cat.spec(i)) ok = ok && oracle.points[pt];
    oracle.objects[cat.name(i)] = ok;
  }
  return oracle;
}

}  // namespace qspec
