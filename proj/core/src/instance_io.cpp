#include "shapesep/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "shapesep/errors.hpp"

namespace shapesep {

json rational_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p())
    return json(static_cast<long>(q.get_num().get_si()));
  return json(rat_to_string(q));
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<int64_t>()));
  if (j.is_number_float()) return rat_from_double(j.get<double>());
  throw InvalidParameterError("expected a number or a 'p/q' string");
}

json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return rational_to_json(s.rational());
  return json(s.to_double());
}

json shape_to_json(const Shape& s) {
  json j;
  if (const Box* box = std::get_if<Box>(&s)) {
    j["kind"] = "box";
    for (int i = 0; i < box->dim(); ++i) {
      j["lo"].push_back(rational_to_json(box->lo[i]));
      j["hi"].push_back(rational_to_json(box->hi[i]));
    }
    return j;
  }
  if (const ConvexPolytope* p = std::get_if<ConvexPolytope>(&s)) {
    j["kind"] = "polytope";
    j["vertices"] = json::array();
    for (const auto& v : p->vertices) j["vertices"].push_back(v);
    return j;
  }
  const auto& u = std::get<UnionShape>(s);
  j["kind"] = "box-union";
  j["parts"] = json::array();
  for (const auto& part : u.parts) j["parts"].push_back(shape_to_json(Shape(part)));
  return j;
}

Shape shape_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "box") {
    std::vector<Rational> lo, hi;
    for (const auto& x : j.at("lo")) lo.push_back(rational_from_json(x));
    for (const auto& x : j.at("hi")) hi.push_back(rational_from_json(x));
    return Box(std::move(lo), std::move(hi));
  }
  if (kind == "polytope") {
    std::vector<Point> pts;
    for (const auto& v : j.at("vertices")) pts.push_back(v.get<Point>());
    if (pts.empty()) throw InvalidParameterError("polytope with no vertices");
    return ConvexPolytope::from_points(static_cast<int>(pts.front().size()), pts);
  }
  if (kind == "box-union") {
    UnionShape u;
    for (const auto& part : j.at("parts")) u.parts.push_back(std::get<Box>(shape_from_json(part)));
    return u;
  }
  throw InvalidParameterError("unknown shape kind '" + kind + "'");
}

json representation_to_json(const Representation& r) {
  json j;
  j["dimension"] = r.dimension;
  j["shapes"] = json::array();
  for (const auto& s : r.shapes) j["shapes"].push_back(shape_to_json(s));
  j["placements"] = json::array();
  for (int v = 0; v < r.n(); ++v) {
    json p;
    p["vertex"] = v;
    p["shape"] = r.shape_of[v];
    for (const auto& t : r.translations[v]) p["translation"].push_back(rational_to_json(t));
    j["placements"].push_back(std::move(p));
  }
  return j;
}

Representation representation_from_json(const json& j) {
  Representation r;
  r.dimension = j.at("dimension").get<int>();
  for (const auto& s : j.at("shapes")) r.shapes.push_back(shape_from_json(s));
  const auto& placements = j.at("placements");
  r.shape_of.assign(placements.size(), 0);
  r.translations.assign(placements.size(), {});
  for (const auto& p : placements) {
    const int v = p.at("vertex").get<int>();
    if (v < 0 || v >= static_cast<int>(placements.size()))
      throw InvalidParameterError("placement vertex id out of range");
    r.shape_of[v] = p.at("shape").get<int>();
    RPoint t;
    for (const auto& x : p.at("translation")) t.push_back(rational_from_json(x));
    r.translations[v] = std::move(t);
  }
  r.validate();
  return r;
}

json graph_to_json(const Graph& g) {
  json j;
  j["n"] = g.n();
  j["edges"] = json::array();
  for (const auto& [u, v] : g.edge_list()) j["edges"].push_back(json::array({u, v}));
  return j;
}

Graph graph_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return Graph::from_edges(n, edges);
}

json bundle_to_json(const InstanceBundle& b) {
  json j = representation_to_json(b.representation);
  json prov;
  prov["family"] = b.provenance.family;
  prov["seed"] = b.provenance.seed;
  prov["params"] = b.provenance.params;
  j["provenance"] = std::move(prov);
  if (b.expected_graph) j["expected"]["graph"] = graph_to_json(*b.expected_graph);
  if (b.expected_thinness) j["expected"]["thinness"] = *b.expected_thinness;
  if (b.expected_comparability_s)
    j["expected"]["comparability_s"] = scalar_to_json(*b.expected_comparability_s);
  if (b.ordering) j["ordering"] = b.ordering->order;
  json measured;
  measured["thinness"] = b.measured_thinness;
  measured["thinness_status"] = b.thinness_status == CertStatus::Exact ? "exact" : "sampled";
  if (b.measured_s_star) {
    measured["s_star"] = scalar_is_infinite(*b.measured_s_star)
                             ? json("inf")
                             : scalar_to_json(*b.measured_s_star);
    measured["s_star_exact"] = b.s_star_exact;
  }
  j["measured"] = std::move(measured);
  return j;
}

InstanceBundle bundle_from_json(const json& j) {
  InstanceBundle b;
  b.representation = representation_from_json(j);
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    b.provenance.family = p.value("family", "");
    b.provenance.seed = p.value("seed", uint64_t(0));
    if (p.contains("params"))
      for (const auto& [k, v] : p.at("params").items())
        b.provenance.params[k] = v.get<std::string>();
  }
  if (j.contains("expected")) {
    const auto& e = j.at("expected");
    if (e.contains("graph")) b.expected_graph = graph_from_json(e.at("graph"));
    if (e.contains("thinness")) b.expected_thinness = e.at("thinness").get<int>();
    if (e.contains("comparability_s"))
      b.expected_comparability_s = Scalar(rational_from_json(e.at("comparability_s")));
  }
  if (j.contains("ordering"))
    b.ordering = Ordering::from_order(j.at("ordering").get<std::vector<int>>());
  if (j.contains("measured")) {
    const auto& m = j.at("measured");
    b.measured_thinness = m.value("thinness", 0);
    b.thinness_status =
        m.value("thinness_status", std::string("sampled")) == "exact" ? CertStatus::Exact
                                                                      : CertStatus::SampledOnly;
    if (m.contains("s_star")) {
      if (m.at("s_star").is_string() && m.at("s_star").get<std::string>() == "inf")
        b.measured_s_star = scalar_infinity();
      else
        b.measured_s_star = Scalar(rational_from_json(m.at("s_star")));
    }
    b.s_star_exact = m.value("s_star_exact", false);
  }
  return b;
}

json separator_result_to_json(const SeparatorResult& r) {
  json j;
  j["n"] = r.n;
  j["separator"] = r.separator;
  j["size"] = r.size();
  j["component_sizes"] = r.component_sizes;
  j["balanced"] = r.balanced;
  j["balance_ratio"] = r.balance_ratio();
  j["method"] = r.method;
  return j;
}

json tameness_to_json(const TamenessCertificate& c) {
  json j;
  j["c"] = c.c;
  j["s"] = scalar_to_json(c.s);
  j["certified"] = c.certified();
  j["thinness_ok"] = c.thinness_ok;
  j["convexity_ok"] = c.convexity_ok;
  j["comparability_ok"] = c.comparability_ok;
  j["status"] = c.status == CertStatus::Exact ? "exact" : "sampled";
  j["measured_thinness"] = c.measured_thinness;
  j["measured_s_star"] =
      scalar_is_infinite(c.measured_s_star) ? json("inf") : scalar_to_json(c.measured_s_star);
  if (c.thinness_witness) j["thinness_witness"] = *c.thinness_witness;
  if (c.nonconvex_vertex) j["nonconvex_vertex"] = *c.nonconvex_vertex;
  if (c.incomparable_pair)
    j["incomparable_pair"] = json::array({c.incomparable_pair->first, c.incomparable_pair->second});
  return j;
}

json comparability_report_to_json(const ComparabilityReport& r) {
  json j;
  j["pair"] = json::array({r.i, r.j});
  j["relation"] = r.relation;
  j["s"] = scalar_to_json(r.s);
  switch (r.direction) {
    case ComparabilityReport::Direction::Forward: j["verdict"] = "forward"; break;
    case ComparabilityReport::Direction::Backward: j["verdict"] = "backward"; break;
    case ComparabilityReport::Direction::Both: j["verdict"] = "both"; break;
    case ComparabilityReport::Direction::Neither: j["verdict"] = "neither"; break;
  }
  j["min_s_forward"] =
      scalar_is_infinite(r.min_s_forward) ? json("inf") : scalar_to_json(r.min_s_forward);
  j["min_s_backward"] =
      scalar_is_infinite(r.min_s_backward) ? json("inf") : scalar_to_json(r.min_s_backward);
  j["exact"] = r.exact;
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

json scaling_fit_to_json(const ScalingFit& f) {
  json j;
  j["family"] = f.family;
  j["method"] = f.method;
  j["dimension"] = f.dimension;
  j["sizes"] = f.sizes;
  j["separator_sizes"] = f.separator_sizes;
  j["exponent_fit"] = f.exponent_fit;
  j["beta_fit"] = f.coeff_fit;
  j["exponent_target"] = f.exponent_target;
  j["conclusive"] = f.conclusive;
  return j;
}

json dichotomy_to_json(const DichotomyResult& r) {
  json j;
  j["branch"] = r.disjoint_branch ? "disjoint-projections" : "common-point";
  j["indices"] = r.indices;
  if (r.disjoint_branch) {
    j["axis"] = r.axis;
  } else {
    j["common_point"] = json::array();
    for (const auto& x : r.common_point) j["common_point"].push_back(rational_to_json(x));
  }
  return j;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << contents;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json(const std::string& path) { return json::parse(read_file(path)); }

void save_json(const std::string& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

std::string col_profile_csv(const ColoringProfile& p, const ComposedBound& bound) {
  std::ostringstream out;
  out << "# c=" << bound.c << " s=" << bound.s << " d=" << bound.d << " k_prime=" << bound.k_prime
      << " s_prime=" << bound.s_prime << " delta=" << bound.delta << "\n";
  out << "r,col,argmax,bound\n";
  out.precision(12);
  for (const auto& row : p.rows)
    out << row.r << "," << row.value << "," << row.argmax << "," << bound.bound(row.r) << "\n";
  return out.str();
}

std::string scaling_csv(const ScalingFit& f) {
  std::ostringstream out;
  out << "n,size,bound,method\n";
  out.precision(12);
  for (size_t i = 0; i < f.sizes.size(); ++i) {
    const double bound =
        f.coeff_fit * std::pow(static_cast<double>(f.sizes[i]), f.exponent_target);
    out << f.sizes[i] << "," << f.separator_sizes[i] << "," << bound << "," << f.method << "\n";
  }
  return out.str();
}

} // namespace shapesep
