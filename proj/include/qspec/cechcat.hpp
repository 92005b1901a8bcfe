#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qspec/homology.hpp"
#include "qspec/koszul.hpp"
#include "qspec/qpair.hpp"

namespace qspec {

/// Sorted object indices.
using ObjectSet = std::vector<std::size_t>;

/// Finite poset of objects; A <= B means a morphism A -> B exists. Each object
/// carries a finite set of point ids (its Spec).
class FiniteCategory {
 public:
  /// leq lists generating pairs (a, b) meaning a <= b; the reflexive transitive
  /// closure is taken. Throws InvalidInput on cycles or bad indices.
  static FiniteCategory create(std::vector<std::string> names,
                               const std::vector<std::pair<std::size_t, std::size_t>>& leq,
                               std::vector<std::vector<std::string>> spec = {});

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  /// Throws UnknownObject.
  std::size_t index_of(const std::string& name) const;
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
  const std::vector<std::string>& spec(std::size_t i) const { return spec_.at(i); }
  /// Union of all object spectra, sorted.
  std::vector<std::string> all_points() const;
  /// Union of spectra over a set of objects, sorted.
  std::vector<std::string> points_of(const ObjectSet& objects) const;

  /// U_A = {B : A <= B}. Throws UnknownObject.
  ObjectSet min_neighborhood(std::size_t a) const;
  bool is_up_closed(const ObjectSet& s) const;
  std::optional<std::size_t> least() const;

  /// Greatest lower bound; nullopt when it does not exist. The meet of the empty set is the top.
  std::optional<std::size_t> meet(const ObjectSet& s) const;
  std::optional<std::size_t> join(const ObjectSet& s) const;
  /// Throw NotALattice when the bound does not exist.
  std::size_t lattice_meet(const ObjectSet& s) const;
  std::size_t lattice_join(const ObjectSet& s) const;
  bool is_complete_lattice() const;

  /// Induced full subcategory on the given objects, names and spectra kept.
  FiniteCategory subcategory(const ObjectSet& s) const;

 private:
  std::vector<std::string> names_;
  std::vector<bool> leq_;
  std::vector<std::vector<std::string>> spec_;
};

/// Every partial order on {0, ..., n-1} contained in the natural order (n <= 6).
/// Each finite poset of size n is isomorphic to at least one of them.
/// Object i is named "i" and has Spec {"i"}.
std::vector<FiniteCategory> enumerate_posets(std::size_t n);

using PointMask = std::uint64_t;

/// Finite topological space given by its lattice of open sets.
class FiniteSpace {
 public:
  /// Throws InvalidInput unless the family contains the empty set and the
  /// whole space and is closed under union and intersection.
  static FiniteSpace from_opens(std::vector<std::string> points, std::vector<PointMask> opens);
  /// Opens are the up-sets of the preorder generated by pairs (a, b), a <= b.
  static FiniteSpace from_order(std::vector<std::string> points,
                                const std::vector<std::pair<std::size_t, std::size_t>>& order);

  const std::vector<std::string>& points() const { return points_; }
  PointMask full() const { return points_.size() == 64 ? ~PointMask(0) : (PointMask(1) << points_.size()) - 1; }
  /// Opens sorted by cardinality, then by mask.
  const std::vector<PointMask>& opens() const { return opens_; }
  std::size_t open_count() const { return opens_.size(); }
  /// Throws InvalidInput if mask is not open.
  std::size_t open_index(PointMask mask) const;
  std::optional<std::size_t> find_open(PointMask mask) const;
  PointMask open(std::size_t i) const { return opens_.at(i); }
  std::size_t whole_index() const { return opens_.size() - 1; }
  PointMask mask_of(const std::vector<std::string>& names) const;
  /// "{a,b}"
  std::string open_name(std::size_t i) const;

 private:
  std::vector<std::string> points_;
  std::vector<PointMask> opens_;
};

/// All topologies on n points (n <= 4).
std::vector<FiniteSpace> enumerate_topologies(std::size_t n);

/// Presheaf of finite-dimensional spaces on a finite space.
class Presheaf {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  /// restrictions maps (from, to) with open(to) a subset of open(from) to a
  /// dim(to) x dim(from) matrix. Identities and maps to or from zero spaces are
  /// filled in; other missing pairs are composed through intermediate opens.
  /// Throws InvalidInput when a pair cannot be obtained, DimensionMismatch on
  /// bad shapes and FunctorialityViolated when composition fails.
  static Presheaf create(FiniteSpace space, std::vector<std::size_t> dims, std::map<Key, Matrix> restrictions,
                         const ToleranceConfig& cfg = {});

  const FiniteSpace& space() const { return space_; }
  std::size_t dim(std::size_t open) const { return dims_.at(open); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const Matrix& restriction(std::size_t from, std::size_t to) const;
  const std::map<Key, Matrix>& restrictions() const { return maps_; }

 private:
  FiniteSpace space_;
  std::vector<std::size_t> dims_;
  std::map<Key, Matrix> maps_;
};

/// P(U) = C^{|U|} with coordinate projections as restrictions.
Presheaf function_presheaf(const FiniteSpace& space);

/// Objects P(V), one per open V and named by open_name; P(V) <= P(W) iff W is
/// a subset of V; Spec(P(V)) = V intersected with spec_points.
FiniteCategory presheaf_category(const Presheaf& p, std::optional<PointMask> spec_points = std::nullopt);

struct RoundtripReport {
  FiniteCategory category;
  /// Rebuilt presheaf on the space whose opens are the object spectra.
  Presheaf rebuilt;
  /// Rebuilt open index -> original open index.
  std::vector<std::size_t> open_map;
  bool identical = false;
};

/// Category of the presheaf, then back: every open V of the space spanned by
/// the object spectra gets the meet of the objects with Spec inside V.
RoundtripReport presheaf_roundtrip(const Presheaf& p);

/// First open U whose basis elements inside U do not cover U, if any.
std::optional<std::size_t> basis_failure(const Presheaf& p, const std::vector<std::size_t>& basis);

struct CechOptions {
  /// Defaults to N + 1 where N is the number of basis elements inside U.
  std::optional<std::size_t> p_max;
  bool require_covering = true;
  /// Largest allowed map size in entries.
  std::size_t max_entries = 4'000'000;
};

struct CechComplex {
  std::size_t open = 0;
  /// Basis elements contained in the open, in input order.
  std::vector<std::size_t> basis_u;
  std::size_t p_max = 0;
  /// Degree 0 is P(U), degree p + 1 is E^p; maps[0] is the augmentation.
  CochainComplex complex;
};

/// Augmented tuple-indexed Cech complex
///   0 -> P(U) -> E^0 -> ... -> E^{p_max+1},  E^p = sum over (p+1)-tuples of P(B_0 n ... n B_p),
/// with (d f)(B) = sum_{j=0}^{p+1} (-1)^j r f(B without entry j).
/// Throws BasisNotCovering when the basis elements inside U do not cover U.
CechComplex cech_complex(const Presheaf& p, const std::vector<std::size_t>& basis, std::size_t open,
                         const CechOptions& opts = {});

struct CechReport {
  CechComplex cech;
  HomologyReport homology;
  /// Homology vanishes at P(U) and E^0..E^{p_max}.
  bool exact = false;
};

CechReport cech_exactness(const Presheaf& p, const std::vector<std::size_t>& basis, std::size_t open,
                          const CechOptions& opts = {}, const ToleranceConfig& cfg = {});

/// Exactness of the augmented complex over the whole space through p_max.
bool is_cech_category(const Presheaf& p, const std::vector<std::size_t>& basis, const CechOptions& opts = {},
                      const ToleranceConfig& cfg = {});

/// Verdict tables; true means transversal.
struct TransversalityOracle {
  std::map<std::string, bool> objects;
  std::map<std::string, bool> points;
};

struct CategorySpectrumResult {
  ObjectSet res;
  ObjectSet sigma;
  std::vector<std::string> res_p;
  std::vector<std::string> sigma_p;
  std::vector<std::string> taylor;
};

/// res = {A : every B >= A is transversal}, res_P = union of Spec over res,
/// sigma_P = all points minus res_P, taylor = points with a negative verdict.
/// Throws OracleIncomplete when an object or point has no verdict.
CategorySpectrumResult category_spectrum(const FiniteCategory& cat, const TransversalityOracle& oracle);

struct SpectralMappingReport {
  /// sigma(S) restricted to U_A equals sigma(U_A).
  bool sigma_equal = false;
  /// sigma_P(S) restricted to the points of U_A equals sigma_P(U_A).
  bool sigma_p_equal = false;
  /// Taylor points of S inside the points of U_A equal the spectrum of the
  /// discrete category on those points.
  bool taylor_equal = false;
};

SpectralMappingReport spectral_mapping_check(const FiniteCategory& cat, const TransversalityOracle& oracle,
                                             std::size_t a);

struct PresheafSpectrumReport {
  /// Putinar spectrum from the category of the presheaf.
  std::vector<std::string> sigma_p;
  /// Points with no neighborhood V such that every open W inside V is
  /// transversal, intersected with spec_points.
  std::vector<std::string> sigma_on_spec;
  bool equal = false;
};

/// Object verdicts are looked up by open_name.
PresheafSpectrumReport presheaf_spectrum_check(const Presheaf& p, const std::map<std::string, bool>& open_verdicts,
                                               PointMask spec_points);

/// Point verdicts from the Koszul complex of the pair. An object is
/// transversal iff it is not the least element and all its points are.
/// Throws OracleIncomplete for points missing from the map and RankAmbiguous.
TransversalityOracle koszul_oracle(const FiniteCategory& cat, const QPair& pair,
                                   const std::map<std::string, AxisPoint>& points, const ToleranceConfig& cfg = {});

}  // namespace qspec
