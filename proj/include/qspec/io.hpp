#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qspec/cechcat.hpp"
#include "qspec/funcalc.hpp"
#include "qspec/koszul.hpp"
#include "qspec/qpair.hpp"
#include "qspec/qseries.hpp"
#include "qspec/qtopology.hpp"

namespace qspec::io {

using Json = nlohmann::json;

/// Parses a file; throws Error(InvalidInput) on I/O or syntax errors.
Json read_json_file(const std::string& path);

/// [re, im] or a bare number.
Complex complex_from_json(const Json& j);
Json to_json(Complex z);

Matrix matrix_from_json(const Json& j, std::optional<std::size_t> rows = std::nullopt,
                        std::optional<std::size_t> cols = std::nullopt);
Json to_json(const Matrix& m);

/// {"dim", "q", "T", "S", optional "tolerances": {"relation_tol", "rank_tol", "point_match_tol"}}.
/// A non-null `overrides` replaces the tolerances given in the file.
QPair pair_from_json(const Json& j, const ToleranceConfig* overrides = nullptr);
Json to_json(const QPair& p);
ToleranceConfig tolerances_from_json(const Json& j, ToleranceConfig base = {});
Json to_json(const ToleranceConfig& cfg);

/// {"q", "x_order", "y_order", "coeffs": [{"i", "j", "c"}]}; zero coefficients are omitted on output.
QSeries series_from_json(const Json& j);
Json to_json(const QSeries& f);

Json to_json(const AxisPoint& p);
AxisPoint point_from_json(const Json& j);
/// {"taylor": [...], "undecided": [...]}
Json to_json(const SpectrumResult& s);
Json to_json(const QClosedSet& s);

/// A single part {"axis", "disks", "whole"} or an array of parts.
OpenSet open_set_from_json(const Json& j);

/// {"objects": [...], "leq": [[a, b], ...], "spec": {object: [points]}}; entries of leq are names or indices.
FiniteCategory category_from_json(const Json& j);
/// {"objects": {name: bool}, "points": {id: bool}}
TransversalityOracle oracle_from_json(const Json& j);
Json to_json(const CategorySpectrumResult& r, const FiniteCategory& cat);

/// {"points", "opens": [[names]] or "order": [[a, b]], "values": [{"open", "dim"}],
///  "restrictions": [{"from", "to", "matrix"}]}
Presheaf presheaf_from_json(const Json& j, const ToleranceConfig& cfg = {});

struct BasisSpec {
  std::vector<std::size_t> basis;
  std::size_t open = 0;
  std::optional<std::size_t> p_max;
};

/// {"basis": [[names], ...], optional "open": [names], optional "p_max"}
BasisSpec basis_from_json(const Json& j, const Presheaf& p);

Json to_json(const CalculusResult& r);
Json to_json(const Admissibility& a);

}  // namespace qspec::io
