#include "qspec/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qspec/error.hpp"

namespace qspec::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<std::string> names_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of names");
  std::vector<std::string> out;
  for (const Json& e : j) {
    if (!e.is_string()) bad("expected an array of names");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad(path + ": " + e.what());
  }
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad("expected a complex number [re, im]");
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Matrix matrix_from_json(const Json& j, std::optional<std::size_t> rows, std::optional<std::size_t> cols) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  const std::size_t r = j.size();
  const std::size_t c = r == 0 ? cols.value_or(0) : (j[0].is_array() ? j[0].size() : 0);
  if (rows && *rows != r) bad("matrix has the wrong number of rows");
  if (cols && *cols != c) bad("matrix has the wrong number of columns");
  Matrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) bad("matrix rows must have equal length");
    for (std::size_t k = 0; k < c; ++k) m(Eigen::Index(i), Eigen::Index(k)) = complex_from_json(j[i][k]);
  }
  return m;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

ToleranceConfig tolerances_from_json(const Json& j, ToleranceConfig base) {
  if (!j.is_object()) bad("tolerances must be an object");
  auto read = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) bad(std::string(key) + " must be a number");
    slot = j[key].get<double>();
  };
  read("relation_tol", base.relation_tol);
  read("rank_tol", base.rank_tol);
  read("point_match_tol", base.point_match_tol);
  base.validate();
  return base;
}

Json to_json(const ToleranceConfig& cfg) {
  return Json{{"relation_tol", cfg.relation_tol}, {"rank_tol", cfg.rank_tol}, {"point_match_tol", cfg.point_match_tol}};
}

QPair pair_from_json(const Json& j, const ToleranceConfig* overrides) {
  const std::size_t n = size_from_json(field(j, "dim"), "dim");
  const QParameter q(complex_from_json(field(j, "q")));
  ToleranceConfig cfg;
  if (j.contains("tolerances")) cfg = tolerances_from_json(j["tolerances"]);
  if (overrides) cfg = *overrides;
  return validate_qpair(matrix_from_json(field(j, "T"), n, n), matrix_from_json(field(j, "S"), n, n), q, cfg);
}

Json to_json(const QPair& p) {
  return Json{{"dim", p.dim()},
              {"q", to_json(p.q().value())},
              {"T", to_json(p.T())},
              {"S", to_json(p.S())},
              {"tolerances", to_json(p.tolerances())}};
}

QSeries series_from_json(const Json& j) {
  QSeries f(complex_from_json(field(j, "q")), size_from_json(field(j, "x_order"), "x_order"),
            size_from_json(field(j, "y_order"), "y_order"));
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) bad("coeffs must be an array");
  for (const Json& c : coeffs) {
    const std::size_t i = size_from_json(field(c, "i"), "i");
    const std::size_t k = size_from_json(field(c, "j"), "j");
    if (i >= f.x_order() || k >= f.y_order()) {
      throw Error(ErrorCode::TruncationMismatch, "coefficient outside the truncation box");
    }
    f.set(i, k, f.coeff(i, k) + complex_from_json(field(c, "c")));
  }
  return f;
}

Json to_json(const QSeries& f) {
  Json coeffs = Json::array();
  for (std::size_t j = 0; j < f.y_order(); ++j)
    for (std::size_t i = 0; i < f.x_order(); ++i)
      if (f.coeff(i, j) != Complex(0.0, 0.0)) coeffs.push_back(Json{{"i", i}, {"j", j}, {"c", to_json(f.coeff(i, j))}});
  return Json{{"q", to_json(f.q())}, {"x_order", f.x_order()}, {"y_order", f.y_order()}, {"coeffs", coeffs}};
}

Json to_json(const AxisPoint& p) { return Json{{"l1", to_json(p.l1)}, {"l2", to_json(p.l2)}}; }

AxisPoint point_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) return {complex_from_json(j[0]), complex_from_json(j[1])};
  return {complex_from_json(field(j, "l1")), complex_from_json(field(j, "l2"))};
}

Json to_json(const SpectrumResult& s) {
  Json taylor = Json::array(), undecided = Json::array();
  for (const AxisPoint& p : s.taylor) taylor.push_back(to_json(p));
  for (const AxisPoint& p : s.undecided) undecided.push_back(to_json(p));
  return Json{{"taylor", taylor}, {"undecided", undecided}};
}

Json to_json(const QClosedSet& s) {
  Json gens = Json::array();
  for (const AxisPoint& p : s.generators()) gens.push_back(to_json(p));
  auto kind = [](Topology t) { return t == Topology::Q ? "q" : "disk"; };
  return Json{{"generators", gens},
              {"topology", Json{{"x", kind(s.x_topology())}, {"y", kind(s.y_topology())}}},
              {"geometry", to_string(s.geometry())}};
}

OpenSet open_set_from_json(const Json& j) {
  OpenSet out;
  auto read_part = [&](const Json& part) {
    const std::string axis = field(part, "axis").is_string() ? part["axis"].get<std::string>() : "";
    QOpenSet* target = nullptr;
    if (axis == "x") target = &out.x;
    else if (axis == "y") target = &out.y;
    else bad("axis must be \"x\" or \"y\"");
    if (part.contains("whole")) {
      if (!part["whole"].is_boolean()) bad("whole must be a boolean");
      target->whole = target->whole || part["whole"].get<bool>();
    }
    if (part.contains("disks")) {
      if (!part["disks"].is_array()) bad("disks must be an array");
      for (const Json& d : part["disks"]) {
        const Json& r = field(d, "r");
        if (!r.is_number() || r.get<double>() < 0) bad("disk radius must be a nonnegative number");
        target->disks.push_back({complex_from_json(field(d, "c")), r.get<double>()});
      }
    }
  };
  if (j.is_array()) {
    for (const Json& part : j) read_part(part);
  } else {
    read_part(j);
  }
  return out;
}

FiniteCategory category_from_json(const Json& j) {
  std::vector<std::string> names = names_from_json(field(j, "objects"));
  auto index = [&](const Json& e) -> std::size_t {
    if (e.is_number_integer()) {
      const auto i = e.get<long long>();
      if (i < 0 || std::size_t(i) >= names.size()) bad("order entry out of range");
      return std::size_t(i);
    }
    if (e.is_string()) {
      const auto it = std::find(names.begin(), names.end(), e.get<std::string>());
      if (it == names.end()) throw Error(ErrorCode::UnknownObject, "no object named '" + e.get<std::string>() + "'");
      return std::size_t(it - names.begin());
    }
    bad("order entries must be names or indices");
  };
  std::vector<std::pair<std::size_t, std::size_t>> leq;
  if (j.contains("leq")) {
    if (!j["leq"].is_array()) bad("leq must be an array of pairs");
    for (const Json& pr : j["leq"]) {
      if (!pr.is_array() || pr.size() != 2) bad("leq must be an array of pairs");
      leq.emplace_back(index(pr[0]), index(pr[1]));
    }
  }
  std::vector<std::vector<std::string>> spec(names.size());
  if (j.contains("spec")) {
    if (!j["spec"].is_object()) bad("spec must map objects to point lists");
    for (const auto& [obj, pts] : j["spec"].items()) spec[index(Json(obj))] = names_from_json(pts);
  }
  return FiniteCategory::create(std::move(names), leq, std::move(spec));
}

TransversalityOracle oracle_from_json(const Json& j) {
  TransversalityOracle o;
  auto read = [&](const char* key, std::map<std::string, bool>& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_object()) bad(std::string(key) + " must map names to booleans");
    for (const auto& [name, v] : j[key].items()) {
      if (!v.is_boolean()) bad(std::string(key) + " must map names to booleans");
      dst[name] = v.get<bool>();
    }
  };
  read("objects", o.objects);
  read("points", o.points);
  return o;
}

Json to_json(const CategorySpectrumResult& r, const FiniteCategory& cat) {
  auto names = [&](const ObjectSet& s) {
    Json out = Json::array();
    for (std::size_t i : s) out.push_back(cat.name(i));
    return out;
  };
  return Json{{"res", names(r.res)},      {"sigma", names(r.sigma)}, {"res_P", r.res_p},
              {"sigma_P", r.sigma_p},     {"taylor", r.taylor}};
}

Presheaf presheaf_from_json(const Json& j, const ToleranceConfig& cfg) {
  std::vector<std::string> points = names_from_json(field(j, "points"));
  auto point_index = [&](const std::string& name) {
    const auto it = std::find(points.begin(), points.end(), name);
    if (it == points.end()) bad("unknown point '" + name + "'");
    return std::size_t(it - points.begin());
  };
  FiniteSpace space;
  if (j.contains("opens")) {
    std::vector<PointMask> opens;
    if (!j["opens"].is_array()) bad("opens must be an array of point lists");
    for (const Json& o : j["opens"]) {
      PointMask m = 0;
      for (const std::string& name : names_from_json(o)) m |= PointMask(1) << point_index(name);
      opens.push_back(m);
    }
    space = FiniteSpace::from_opens(points, std::move(opens));
  } else if (j.contains("order")) {
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (const Json& pr : j["order"]) {
      if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string()) {
        bad("order must be an array of point-name pairs");
      }
      order.emplace_back(point_index(pr[0].get<std::string>()), point_index(pr[1].get<std::string>()));
    }
    space = FiniteSpace::from_order(points, order);
  } else {
    bad("presheaf needs \"opens\" or \"order\"");
  }

  std::vector<std::optional<std::size_t>> dims(space.open_count());
  for (const Json& v : field(j, "values")) {
    const std::size_t u = space.open_index(space.mask_of(names_from_json(field(v, "open"))));
    dims[u] = size_from_json(field(v, "dim"), "dim");
  }
  std::vector<std::size_t> flat;
  for (std::size_t u = 0; u < dims.size(); ++u) {
    if (!dims[u] && space.open(u) != 0) bad("no value given for open " + space.open_name(u));
    flat.push_back(dims[u].value_or(0));
  }
  std::map<Presheaf::Key, Matrix> maps;
  if (j.contains("restrictions")) {
    for (const Json& r : j["restrictions"]) {
      const std::size_t from = space.open_index(space.mask_of(names_from_json(field(r, "from"))));
      const std::size_t to = space.open_index(space.mask_of(names_from_json(field(r, "to"))));
      maps[{from, to}] = matrix_from_json(field(r, "matrix"), flat[to], flat[from]);
    }
  }
  return Presheaf::create(std::move(space), std::move(flat), std::move(maps), cfg);
}

BasisSpec basis_from_json(const Json& j, const Presheaf& p) {
  const FiniteSpace& s = p.space();
  BasisSpec out;
  const Json& basis = field(j, "basis");
  if (!basis.is_array()) bad("basis must be an array of opens");
  for (const Json& b : basis) out.basis.push_back(s.open_index(s.mask_of(names_from_json(b))));
  out.open = j.contains("open") ? s.open_index(s.mask_of(names_from_json(j["open"]))) : s.whole_index();
  if (j.contains("p_max")) out.p_max = size_from_json(j["p_max"], "p_max");
  return out;
}

Json to_json(const Admissibility& a) {
  Json out{{"admissible", a.admissible}};
  if (a.witness) out["witness"] = to_json(*a.witness);
  if (!a.diagnostic.empty()) out["diagnostic"] = a.diagnostic;
  return out;
}

Json to_json(const CalculusResult& r) {
  Json out{{"value", to_json(r.value)}, {"nilpotency_residual", r.nilpotency_residual}};
  if (r.admissibility) out["admissibility"] = to_json(*r.admissibility);
  return out;
}

}  // namespace qspec::io
