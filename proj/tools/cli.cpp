// Copyright 2026 The wbal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "figures.hpp"
#include "wbal/balance2d.hpp"
#include "wbal/error.hpp"
#include "wbal/geom2d.hpp"
#include "wbal/geom3d.hpp"
#include "wbal/numfmt.hpp"
#include "wbal/polytope.hpp"
#include "wbal/skeleton_balance.hpp"
#include "wbal/tripodal.hpp"

namespace wbal::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchema = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string polygon, off, hrep, weights, target, grid, svg, obj, json, partition, plane, out;
  double eps_geom = std::numeric_limits<double>::quiet_NaN();
  double eps_bal = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  int k = -1;
  int dim = 0;
  bool trace = false;
};

struct Outcome {
  Json doc;
  int exit_code = kOk;
  std::string figure;  // path written, if any
};

// ---- files and parsing ------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : tokens(s)) out.push_back(parse_real(t));
  return out;
}

VecX parse_vec(const std::string& s, int d, const char* flag) {
  const std::vector<double> v = parse_reals(s);
  if (static_cast<int>(v.size()) != d) {
    throw UsageError(std::string(flag) + " needs " + std::to_string(d) + " numbers");
  }
  return Eigen::Map<const VecX>(v.data(), d);
}

PartitionInstance parse_partition(const std::string& s) {
  PartitionInstance inst;
  for (const auto& t : tokens(s)) inst.values.push_back(parse_integer(t));
  return inst;
}

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw UsageError("--grid expects NxM");
  const long long n = parse_integer(s.substr(0, x));
  const long long m = parse_integer(s.substr(x + 1));
  if (n < 2 || m < 2 || n > 1 << 14 || m > 1 << 14) throw UsageError("--grid out of range");
  return {static_cast<int>(n), static_cast<int>(m)};
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

double pick(double flag, double fallback) { return std::isnan(flag) ? fallback : flag; }

Json input_block(const char* geometry, const std::string& path, const std::string& bytes) {
  return Json{{"geometry", geometry}, {"file", path}, {"fnv1a64", fnv1a64(bytes)}};
}

Polygon2 polygon_from_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      fail(Errc::ParseError, e.what());
    }
    if (!j.contains("vertices") || !j["vertices"].is_array()) {
      fail(Errc::ParseError, "polygon JSON needs a \"vertices\" array");
    }
    std::vector<Point2> pts;
    for (const auto& v : j["vertices"]) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(Errc::ParseError, "vertex must be [x, y]");
      }
      pts.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return validate_polygon(std::move(pts));
  }
  return validate_polygon(parse_polygon_text(text));
}

Polygon2 load_polygon(const std::string& path, Json& input) {
  const std::string text = read_file(path);
  input = input_block("polygon", path, text);
  return polygon_from_text(text);
}

Polyhedron3 load_mesh(const std::string& path, Json& input) {
  const std::string text = read_file(path);
  input = input_block("off", path, text);
  return load_off(text);
}

HPolytope load_hrep(const std::string& path, Json& input) {
  const std::string text = read_file(path);
  input = input_block("hrep", path, text);
  return validate_hrep(parse_hrep_text(text));
}

// ---- JSON helpers -----------------------------------------------------

Json arr(const Point2& p) { return Json::array({p.x(), p.y()}); }
Json arr(const Point3& p) { return Json::array({p.x(), p.y(), p.z()}); }
Json arr(const VecX& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}
template <class T>
Json arr(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x);
  return a;
}

VecX vec_of(const Json& j) {
  if (!j.is_array()) throw UsageError("certificate: expected a number array");
  VecX v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw UsageError("certificate: expected a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Point2 point2_of(const Json& j) {
  const VecX v = vec_of(j);
  if (v.size() != 2) throw UsageError("certificate: expected [x, y]");
  return {v(0), v(1)};
}

Point3 point3_of(const Json& j) {
  const VecX v = vec_of(j);
  if (v.size() != 3) throw UsageError("certificate: expected [x, y, z]");
  return {v(0), v(1), v(2)};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw UsageError(std::string("certificate: missing \"") + key + "\"");
  }
  return j.at(key);
}

Json document(const char* kind, Json input, Json parameters) {
  Json doc;
  doc["schema"] = kSchema;
  doc["kind"] = kind;
  doc["input"] = std::move(input);
  doc["parameters"] = std::move(parameters);
  return doc;
}

// ---- 2D ---------------------------------------------------------------

Json assignments_json(const Polygon2& poly, const WeightSet& w, const Placement2& pl) {
  Json a = Json::array();
  for (const auto& as : pl.assignments) {
    a.push_back({{"weight_index", as.weight_index},
                 {"weight", w[as.weight_index]},
                 {"edge", as.at.edge},
                 {"s", as.at.s},
                 {"point", arr(eval_boundary(poly, as.at))}});
  }
  return a;
}

Json balance_cert_json(const BalanceCertificate& c) {
  return {{"residual", c.residual},
          {"max_membership_error", c.max_membership_error},
          {"eps_geom", c.eps_geom},
          {"eps_bal", c.eps_bal},
          {"pass", c.pass}};
}

std::vector<figures::WeightMark> marks_of(const Polygon2& poly, const WeightSet& w,
                                          const Placement2& pl) {
  std::vector<figures::WeightMark> marks;
  for (const auto& as : pl.assignments) {
    marks.push_back({eval_boundary(poly, as.at), w[as.weight_index],
                     "w" + std::to_string(as.weight_index) + " = " +
                         format_real(w[as.weight_index])});
  }
  return marks;
}

Outcome cmd_balance(const Options& o, bool fast) {
  require(o.polygon, "--polygon");
  require(o.weights, "--weights");
  Json input;
  const Polygon2 poly = load_polygon(o.polygon, input);
  const WeightSet w(parse_reals(o.weights));
  Point2 target = Point2::Zero();
  if (!o.target.empty()) {
    const VecX t = parse_vec(o.target, 2, "--target");
    target = {t(0), t(1)};
  }
  const Tolerances def = Tolerances::for_scale(poly.diameter(), w.total());
  const double eps_geom = pick(o.eps_geom, def.geom);
  const double eps_bal = pick(o.eps_bal, def.bal);
  const Placement2 pl = fast ? balance_fast(poly, w, target) : balance_iterative(poly, w, target);
  const BalanceCertificate cert = verify_balance(poly, w, pl, eps_geom, eps_bal);

  Outcome r;
  r.doc = document(fast ? "balance2d-fast" : "balance2d", input,
                   {{"weights", arr(w.values())}, {"target", arr(target)}});
  Json res;
  res["assignments"] = assignments_json(poly, w, pl);
  std::set<std::pair<int, double>> distinct;
  for (const auto& as : pl.assignments) distinct.insert({as.at.edge, as.at.s});
  res["distinct_locations"] = distinct.size();
  res["migration_rounds"] = pl.migration_rounds;
  Json trace = Json::array();
  for (const auto& t : pl.trace) {
    trace.push_back({{"mover", t.mover},
                     {"follower", t.follower},
                     {"scale", t.scale},
                     {"offset", arr(t.offset)},
                     {"travel", t.travel}});
  }
  res["trace"] = trace;
  if (fast) {
    const ThreeGroups g = partition_three(w);
    Json groups = Json::array();
    for (std::size_t j = 0; j < 3; ++j) {
      groups.push_back({{"members", arr(g.groups[j])}, {"total", g.totals[j]}});
    }
    res["groups"] = groups;
  }
  r.doc["result"] = res;
  r.doc["certificate"] = balance_cert_json(cert);
  if (!o.svg.empty()) {
    write_file(o.svg, figures::polygon_svg(poly, marks_of(poly, w, pl), target,
                                           o.trace ? pl.trace : std::vector<MigrationRound>{}));
    r.figure = o.svg;
  }
  r.exit_code = cert.pass ? kOk : kVerifyFailed;
  return r;
}

Outcome cmd_antipodal(const Options& o) {
  require(o.polygon, "--polygon");
  Json input;
  const Polygon2 poly = load_polygon(o.polygon, input);
  Point2 center = Point2::Zero();
  if (!o.target.empty()) {
    const VecX t = parse_vec(o.target, 2, "--target");
    center = {t(0), t(1)};
  }
  const Tolerances def = Tolerances::for_scale(poly.diameter(), 2.0);
  const double eps_geom = pick(o.eps_geom, def.geom);
  const double eps_bal = pick(o.eps_bal, def.bal);
  const AntipodalPair pair = antipodal_about(poly, center, Tolerances{eps_geom, eps_bal});
  const std::vector<Point2> pts = {eval_boundary(poly, pair.first), eval_boundary(poly, pair.second)};
  const WeightSet unit({1.0, 1.0});
  const BalanceCertificate cert = verify_balance_points(poly, unit, pts, center, eps_geom, eps_bal);

  Outcome r;
  r.doc = document("antipodal", input, {{"target", arr(center)}});
  Json points = Json::array();
  for (const BoundaryPoint2* bp : {&pair.first, &pair.second}) {
    points.push_back({{"edge", bp->edge}, {"s", bp->s}, {"point", arr(eval_boundary(poly, *bp))}});
  }
  r.doc["result"] = {{"points", points}};
  r.doc["certificate"] = balance_cert_json(cert);
  if (!o.svg.empty()) {
    write_file(o.svg, figures::polygon_svg(poly, {{pts[0], 1.0, "first"}, {pts[1], 1.0, "second"}},
                                           center, {}));
    r.figure = o.svg;
  }
  r.exit_code = cert.pass ? kOk : kVerifyFailed;
  return r;
}

Json gadget_json(const Polygon2& poly, const WeightSet& w) {
  Json verts = Json::array();
  for (const auto& v : poly.vertices()) verts.push_back(arr(v));
  return {{"polygon", verts}, {"weights", arr(w.values())}};
}

Outcome cmd_reduce_partition(const Options& o) {
  require(o.partition, "--partition");
  const PartitionInstance inst = parse_partition(o.partition);
  const auto [poly, w] = gadget_from_partition(inst);
  Outcome r;
  r.doc = document("reduce-partition", Json::object(), {{"partition", arr(inst.values)}});
  r.doc["result"] = gadget_json(poly, w);
  r.doc["certificate"] = {{"pass", true}};
  if (!o.out.empty()) write_file(o.out, format_polygon_text(poly));
  if (!o.svg.empty()) {
    write_file(o.svg, figures::polygon_svg(poly, {}, Point2::Zero(), {}));
    r.figure = o.svg;
  }
  return r;
}

Outcome cmd_solve_partition(const Options& o) {
  require(o.partition, "--partition");
  const PartitionInstance inst = parse_partition(o.partition);
  const auto witness = partition_witness(inst);
  Outcome r;
  r.doc = document("solve-partition", Json::object(), {{"partition", arr(inst.values)}});
  r.doc["result"] = {{"solvable", witness.has_value()},
                     {"subset", witness ? arr(*witness) : Json::array()}};
  r.doc["certificate"] = {{"pass", true}};
  r.exit_code = witness ? kOk : kNotFound;
  return r;
}

Outcome cmd_gadget_decide(const Options& o) {
  require(o.partition, "--partition");
  const PartitionInstance inst = parse_partition(o.partition);
  const GadgetDecision dec = gadget_decide(inst);
  const auto [poly, w] = gadget_from_partition(inst);
  const Tolerances def = Tolerances::for_scale(poly.diameter(), w.total());
  const double eps_geom = pick(o.eps_geom, def.geom);
  const double eps_bal = pick(o.eps_bal, def.bal);
  Outcome r;
  r.doc = document("gadget-decide", Json::object(), {{"partition", arr(inst.values)}});
  Json res = gadget_json(poly, w);
  res["balanceable"] = dec.balanceable;
  if (dec.witness) {
    res["assignments"] = assignments_json(poly, w, *dec.witness);
    const BalanceCertificate cert = verify_balance(poly, w, *dec.witness, eps_geom, eps_bal);
    r.doc["result"] = res;
    r.doc["certificate"] = balance_cert_json(cert);
    r.exit_code = cert.pass ? kOk : kVerifyFailed;
  } else {
    r.doc["result"] = res;
    r.doc["certificate"] = {{"pass", true}};
    r.exit_code = kNotFound;
  }
  if (!o.svg.empty()) {
    write_file(o.svg, figures::polygon_svg(
                          poly, dec.witness ? marks_of(poly, w, *dec.witness)
                                            : std::vector<figures::WeightMark>{},
                          Point2::Zero(), {}));
    r.figure = o.svg;
  }
  return r;
}

// ---- 3D meshes ----------------------------------------------------------

Json tripodal_cert_json(const TripodalCertificate& c) {
  return {{"norm_spread", c.norm_spread},   {"sum_residual", c.sum_residual},
          {"max_membership", c.max_membership}, {"side_spread", c.side_spread},
          {"eps_geom", c.eps_geom},         {"eps_bal", c.eps_bal},
          {"pass", c.pass}};
}

const char* method_name(TripodalMethod m) {
  switch (m) {
    case TripodalMethod::GridSearch: return "grid";
    case TripodalMethod::FaceTriples: return "face-triples";
    case TripodalMethod::Degenerate: return "degenerate";
  }
  return "grid";
}

void write_mesh_obj(const std::string& path, const Polyhedron3& poly,
                    const std::function<void(figures::ObjWriter&)>& extra) {
  figures::ObjWriter w;
  w.group("mesh");
  w.mesh(poly.vertices(), poly.faces());
  extra(w);
  write_file(path, w.str());
}

Outcome cmd_tripodal(const Options& o, bool oracle) {
  require(o.off, "--off");
  Json input;
  const Polyhedron3 poly = load_mesh(o.off, input);
  TripodalSearchOptions opts;
  if (!o.grid.empty()) std::tie(opts.n_t, opts.n_theta) = parse_grid(o.grid);
  opts.max_grid = std::max({opts.max_grid, opts.n_t, opts.n_theta});
  const double eps_geom = pick(o.eps_geom, 1e-9 * poly.diameter());
  const double eps_bal = pick(o.eps_bal, 1e-8 * poly.diameter());

  TripodalResult res;
  if (oracle) {
    res.triple = tripodal_by_face_triples(poly, opts.samples_per_triple);
    res.method = TripodalMethod::FaceTriples;
  } else {
    res = tripodal_search(poly, opts);
  }
  const TripodalTriple& tr = res.triple;
  const TripodalCertificate cert = verify_tripodal(poly, tr, eps_geom, eps_bal);

  Outcome r;
  Json params = Json::object();
  if (!oracle) params["grid"] = Json::array({opts.n_t, opts.n_theta});
  r.doc = document(oracle ? "tripodal-oracle" : "tripodal", input, params);
  Json result;
  result["points"] = {{"a", arr(tr.a)}, {"b", arr(tr.b)}, {"c", arr(tr.c)}};
  result["faces"] = Json::array({tr.at_a.face, tr.at_b.face, tr.at_c.face});
  result["radius"] = tr.radius;
  result["degenerate"] = tr.degenerate;
  result["method"] = method_name(res.method);
  if (res.method == TripodalMethod::GridSearch) {
    result["t"] = res.t;
    result["theta"] = res.theta;
  }
  r.doc["result"] = result;
  r.doc["certificate"] = tripodal_cert_json(cert);
  if (!o.svg.empty()) {
    const TripodMap map(poly);
    std::optional<std::pair<double, double>> marker;
    if (res.method == TripodalMethod::GridSearch) marker = std::pair{res.t, res.theta};
    write_file(o.svg, figures::signature_svg(map, std::min(opts.n_t, 96),
                                             std::min(opts.n_theta, 96), eps_geom, marker));
    r.figure = o.svg;
  }
  if (!o.obj.empty()) {
    write_mesh_obj(o.obj, poly, [&](figures::ObjWriter& w) {
      w.group("triple");
      w.polygon({tr.a, tr.b, tr.c});
      w.points({tr.a, tr.b, tr.c});
    });
  }
  r.exit_code = cert.pass ? kOk : kVerifyFailed;
  return r;
}

Json skeleton_cert_json(const SkeletonCertificate& c) {
  return {{"residual", c.residual},     {"max_membership", c.max_membership},
          {"max_host_dim", c.max_host_dim}, {"eps_geom", c.eps_geom},
          {"eps_bal", c.eps_bal},       {"pass", c.pass}};
}

Outcome cmd_four_on_edges(const Options& o) {
  require(o.off, "--off");
  Json input;
  const Polyhedron3 poly = load_mesh(o.off, input);
  Plane3 plane = Plane3::make(Eigen::Vector3d::UnitZ());
  if (!o.plane.empty()) plane = Plane3::make(parse_vec(o.plane, 3, "--plane"));
  const double eps_geom = pick(o.eps_geom, 1e-9 * poly.diameter());
  const double eps_bal = pick(o.eps_bal, 1e-8 * poly.diameter());
  const MeshPlacement pl = four_on_edges(poly, plane);
  const SkeletonCertificate cert = verify_mesh_placement(poly, pl, eps_geom, eps_bal);
  Outcome r;
  r.doc = document("four-on-edges", input, {{"plane_normal", arr(Point3(plane.normal))}});
  Json pts = Json::array();
  for (const auto& p : pl.points) pts.push_back({{"x", arr(p.x)}, {"edge", Json::array({p.u, p.v})}});
  r.doc["result"] = {{"points", pts}};
  r.doc["certificate"] = skeleton_cert_json(cert);
  if (!o.obj.empty()) {
    write_mesh_obj(o.obj, poly, [&](figures::ObjWriter& w) {
      w.group("points");
      std::vector<Point3> xs;
      for (const auto& p : pl.points) xs.push_back(p.x);
      w.points(xs);
    });
  }
  r.exit_code = cert.pass ? kOk : kVerifyFailed;
  return r;
}

// ---- polytopes ----------------------------------------------------------

double vrep_diameter(const HPolytope& h) { return std::max(enumerate_vertices(h).diameter, 1e-300); }

// Boundary mesh of a 3-polytope: 2-faces with vertices ordered by angle.
void write_polytope_obj(const std::string& path, const HPolytope& h,
                        const std::vector<Point3>& marks) {
  if (h.dim() != 3) throw UsageError("--obj needs a 3-dimensional polytope");
  const VRep v = enumerate_vertices(h);
  std::vector<Point3> verts;
  for (const auto& x : v.vertices) verts.emplace_back(x(0), x(1), x(2));
  std::vector<std::vector<int>> faces;
  for (const FaceD& f : faces_of_dim(h, v, 2)) {
    std::vector<int> ids = f.vertices;
    const VecX& c = f.point;
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      const VecX da = v.vertices[static_cast<std::size_t>(a)] - c;
      const VecX db = v.vertices[static_cast<std::size_t>(b)] - c;
      return std::atan2(da.dot(f.basis.col(1)), da.dot(f.basis.col(0))) <
             std::atan2(db.dot(f.basis.col(1)), db.dot(f.basis.col(0)));
    });
    faces.push_back(ids);
  }
  figures::ObjWriter w;
  w.group("polytope");
  w.mesh(verts, faces);
  w.group("points");
  w.points(marks);
  write_file(path, w.str());
}

Json skeleton_points_json(const SkeletonPlacement& pl) {
  Json pts = Json::array();
  for (const auto& p : pl.points) {
    pts.push_back({{"x", arr(p.x)},
                   {"host_tight", arr(p.host_tight)},
                   {"host_vertices", arr(p.host_vertices)},
                   {"host_dim", p.host_dim}});
  }
  return pts;
}

Outcome finish_skeleton(const char* kind, const Options& o, const HPolytope& h, Json input,
                        Json params, const SkeletonPlacement& pl) {
  const double diam = vrep_diameter(h);
  const double n = static_cast<double>(pl.points.size());
  const double eps_geom = pick(o.eps_geom, 1e-9 * diam);
  const double eps_bal = pick(o.eps_bal, 1e-8 * diam * n);
  const SkeletonCertificate cert = verify_skeleton(h, pl, eps_geom, eps_bal);
  Outcome r;
  r.doc = document(kind, std::move(input), std::move(params));
  r.doc["result"] = {{"points", skeleton_points_json(pl)}, {"target", arr(pl.target)}};
  r.doc["certificate"] = skeleton_cert_json(cert);
  if (!o.obj.empty()) {
    std::vector<Point3> marks;
    for (const auto& p : pl.points) {
      if (p.x.size() == 3) marks.emplace_back(p.x(0), p.x(1), p.x(2));
    }
    write_polytope_obj(o.obj, h, marks);
  }
  r.exit_code = cert.pass ? kOk : kVerifyFailed;
  return r;
}

Outcome cmd_three_on_edges(const Options& o) {
  require(o.hrep, "--hrep");
  Json input;
  const HPolytope h = load_hrep(o.hrep, input);
  if (h.dim() != 3) throw UsageError("three-on-edges needs a 3-dimensional polytope");
  const VecX target = o.target.empty() ? VecX::Zero(3) : parse_vec(o.target, 3, "--target");
  const SkeletonPlacement pl = three_on_edges(h, target);
  return finish_skeleton("three-on-edges", o, h, input, {{"target", arr(target)}}, pl);
}

Outcome cmd_pow2(const Options& o) {
  require(o.hrep, "--hrep");
  Json input;
  const HPolytope h = load_hrep(o.hrep, input);
  int k = o.k;
  if (k < 0) {
    k = 0;
    while ((1 << k) < h.dim()) ++k;
  }
  const SkeletonPlacement pl = pow2_points(h, k, o.seed);
  return finish_skeleton("pow2", o, h, input, {{"k", k}, {"seed", o.seed}}, pl);
}

Outcome cmd_compose(const Options& o) {
  require(o.hrep, "--hrep");
  Json input;
  const HPolytope h = load_hrep(o.hrep, input);
  const SkeletonPlacement pl = compose_balance(h, o.seed);
  return finish_skeleton("compose", o, h, input, {{"seed", o.seed}}, pl);
}

Json halving_cert_json(const HalvingCertificate& c) {
  return {{"membership", c.membership}, {"dim_P", c.dim_P},         {"dim_negP", c.dim_negP},
          {"eps_geom", c.eps_geom},     {"pass", c.pass}};
}

Outcome cmd_halving(const Options& o) {
  require(o.hrep, "--hrep");
  Json input;
  const HPolytope h = load_hrep(o.hrep, input);
  const HalvingWitness w = halving_point(h, o.seed);
  const double eps_geom = pick(o.eps_geom, 1e-9 * vrep_diameter(h));
  const HalvingCertificate cert = verify_halving(h, w.x, w.face_P.tight, w.face_negP.tight, eps_geom);
  Outcome r;
  r.doc = document("halving", input, {{"seed", o.seed}});
  r.doc["result"] = {{"x", arr(w.x)},
                     {"face_P", {{"tight", arr(w.face_P.tight)}, {"dim", w.face_P.dim}}},
                     {"face_negP", {{"tight", arr(w.face_negP.tight)}, {"dim", w.face_negP.dim}}},
                     {"j", w.j},
                     {"retries", w.retries},
                     {"magnitude", w.magnitude}};
  r.doc["certificate"] = halving_cert_json(cert);
  if (!o.obj.empty()) {
    write_polytope_obj(o.obj, h, {Point3(w.x(0), w.x(1), w.x(2)), Point3(-w.x(0), -w.x(1), -w.x(2))});
  }
  r.exit_code = cert.pass ? kOk : kVerifyFailed;
  return r;
}

Outcome cmd_prop9_fixture(const Options& o) {
  if (o.dim < 2) throw UsageError("--dim >= 2 is required");
  const HPolytope h = prop9_fixture(o.dim);
  const std::string text = format_hrep_text(h);
  if (!o.out.empty()) write_file(o.out, text);
  Outcome r;
  r.doc = document("prop9-fixture", Json::object(), {{"dim", o.dim}});
  r.doc["result"] = {{"rows", h.rows()}, {"hrep", text}};
  r.doc["certificate"] = {{"pass", true}};
  return r;
}

Outcome cmd_prop9_check(const Options& o) {
  if (o.k < 0) throw UsageError("--k is required");
  Json input = Json::object();
  std::optional<HPolytope> h;
  Json params = {{"k", o.k}};
  if (!o.hrep.empty()) {
    h = load_hrep(o.hrep, input);
  } else if (o.dim >= 2) {
    h = prop9_fixture(o.dim);
    params["dim"] = o.dim;
  } else {
    throw UsageError("prop9-check needs --hrep or --dim");
  }
  const bool holds = prop9_check(*h, o.k);
  Outcome r;
  r.doc = document("prop9-check", input, params);
  r.doc["result"] = {{"holds", holds}};
  r.doc["certificate"] = {{"pass", true}};
  return r;
}

// ---- check --------------------------------------------------------------

struct CheckReport {
  bool pass = false;
  Json detail;
};

void match_input(const Json& cert, const Json& fresh) {
  const Json& in = field(cert, "input");
  if (in.contains("fnv1a64") && in["fnv1a64"] != fresh["fnv1a64"]) {
    throw Error(Errc::InvalidArgument, "geometry file differs from the certified input");
  }
}

double eps_of(const Json& cert, const char* key, double flag) {
  return pick(flag, field(field(cert, "certificate"), key).get<double>());
}

CheckReport check_balance(const Json& c, const Options& o, bool unit_pair) {
  require(o.polygon, "--polygon");
  Json input;
  const Polygon2 poly = load_polygon(o.polygon, input);
  match_input(c, input);
  const Json& params = field(c, "parameters");
  const Json& result = field(c, "result");
  const Point2 target = point2_of(field(params, "target"));
  std::vector<Point2> pts;
  std::vector<double> weights;
  if (unit_pair) {
    for (const auto& p : field(result, "points")) pts.push_back(point2_of(field(p, "point")));
    weights = {1.0, 1.0};
    if (pts.size() != 2) throw UsageError("certificate: antipodal needs two points");
  } else {
    const VecX wv = vec_of(field(params, "weights"));
    weights.assign(wv.data(), wv.data() + wv.size());
    pts.assign(weights.size(), Point2::Zero());
    std::vector<bool> seen(weights.size(), false);
    for (const auto& a : field(result, "assignments")) {
      const int i = field(a, "weight_index").get<int>();
      if (i < 0 || i >= static_cast<int>(weights.size()) || seen[static_cast<std::size_t>(i)]) {
        throw UsageError("certificate: bad weight_index");
      }
      seen[static_cast<std::size_t>(i)] = true;
      pts[static_cast<std::size_t>(i)] = point2_of(field(a, "point"));
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw UsageError("certificate: missing assignments");
    }
  }
  const BalanceCertificate cert =
      verify_balance_points(poly, WeightSet(weights), pts, target, eps_of(c, "eps_geom", o.eps_geom),
                            eps_of(c, "eps_bal", o.eps_bal));
  return {cert.pass, balance_cert_json(cert)};
}

CheckReport check_gadget(const Json& c, const Options& o) {
  const PartitionInstance inst = parse_partition([&] {
    std::string s;
    for (const auto& v : field(field(c, "parameters"), "partition")) s += std::to_string(v.get<long long>()) + " ";
    return s;
  }());
  const std::string kind = field(c, "kind").get<std::string>();
  const Json& result = field(c, "result");
  const bool oracle = partition_oracle(inst);
  if (kind == "solve-partition") {
    const bool solvable = field(result, "solvable").get<bool>();
    bool ok = solvable == oracle;
    if (ok && solvable) {
      std::int64_t total = 0, half = 0;
      for (auto v : inst.values) total += v;
      std::set<int> used;
      for (const auto& i : field(result, "subset")) {
        const int k = i.get<int>();
        if (k < 0 || k >= static_cast<int>(inst.values.size()) || !used.insert(k).second) ok = false;
        else half += inst.values[static_cast<std::size_t>(k)];
      }
      ok = ok && 2 * half == total;
    }
    return {ok, {{"oracle", oracle}, {"pass", ok}}};
  }
  const auto [poly, w] = gadget_from_partition(inst);
  bool same = gadget_json(poly, w)["polygon"] == result.at("polygon") &&
              gadget_json(poly, w)["weights"] == result.at("weights");
  if (kind == "reduce-partition") return {same, {{"gadget_matches", same}, {"pass", same}}};
  // gadget-decide
  const bool balanceable = field(result, "balanceable").get<bool>();
  bool ok = same && balanceable == oracle;
  Json detail = {{"oracle", oracle}, {"gadget_matches", same}};
  if (ok && balanceable) {
    std::vector<Point2> pts(static_cast<std::size_t>(w.size()), Point2::Zero());
    for (const auto& a : field(result, "assignments")) {
      const int i = field(a, "weight_index").get<int>();
      if (i < 0 || i >= w.size()) throw UsageError("certificate: bad weight_index");
      pts[static_cast<std::size_t>(i)] = point2_of(field(a, "point"));
    }
    const BalanceCertificate cert =
        verify_balance_points(poly, w, pts, Point2::Zero(), eps_of(c, "eps_geom", o.eps_geom),
                              eps_of(c, "eps_bal", o.eps_bal));
    ok = cert.pass;
    detail["balance"] = balance_cert_json(cert);
  }
  detail["pass"] = ok;
  return {ok, detail};
}

CheckReport check_tripodal(const Json& c, const Options& o) {
  require(o.off, "--off");
  Json input;
  const Polyhedron3 poly = load_mesh(o.off, input);
  match_input(c, input);
  const Json& pts = field(field(c, "result"), "points");
  TripodalTriple tr;
  tr.a = point3_of(field(pts, "a"));
  tr.b = point3_of(field(pts, "b"));
  tr.c = point3_of(field(pts, "c"));
  const TripodalCertificate cert =
      verify_tripodal(poly, tr, eps_of(c, "eps_geom", o.eps_geom), eps_of(c, "eps_bal", o.eps_bal));
  return {cert.pass, tripodal_cert_json(cert)};
}

CheckReport check_four(const Json& c, const Options& o) {
  require(o.off, "--off");
  Json input;
  const Polyhedron3 poly = load_mesh(o.off, input);
  match_input(c, input);
  MeshPlacement pl;
  for (const auto& p : field(field(c, "result"), "points")) {
    const Json& e = field(p, "edge");
    if (!e.is_array() || e.size() != 2) throw UsageError("certificate: edge must be [u, v]");
    pl.points.push_back({point3_of(field(p, "x")), e[0].get<int>(), e[1].get<int>()});
  }
  const SkeletonCertificate cert = verify_mesh_placement(
      poly, pl, eps_of(c, "eps_geom", o.eps_geom), eps_of(c, "eps_bal", o.eps_bal));
  return {cert.pass, skeleton_cert_json(cert)};
}

IndexSet index_set_of(const Json& j) {
  IndexSet s;
  for (const auto& v : j) s.push_back(v.get<int>());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

CheckReport check_skeleton(const Json& c, const Options& o) {
  require(o.hrep, "--hrep");
  Json input;
  const HPolytope h = load_hrep(o.hrep, input);
  match_input(c, input);
  const Json& result = field(c, "result");
  SkeletonPlacement pl;
  pl.target = vec_of(field(result, "target"));
  for (const auto& p : field(result, "points")) {
    SkeletonPoint sp;
    sp.x = vec_of(field(p, "x"));
    sp.host_tight = index_set_of(field(p, "host_tight"));
    for (int r : sp.host_tight) {
      if (r < 0 || r >= h.rows()) throw UsageError("certificate: tight row out of range");
    }
    pl.points.push_back(std::move(sp));
  }
  const SkeletonCertificate cert =
      verify_skeleton(h, pl, eps_of(c, "eps_geom", o.eps_geom), eps_of(c, "eps_bal", o.eps_bal));
  // pow2 and compose also promise a point count.
  bool count_ok = true;
  const std::string kind = field(c, "kind").get<std::string>();
  if (kind == "pow2") {
    count_ok = pl.points.size() == std::size_t{1} << field(field(c, "parameters"), "k").get<int>();
  } else if (kind == "compose") {
    count_ok = static_cast<int>(pl.points.size()) == h.dim();
  } else if (kind == "three-on-edges") {
    count_ok = pl.points.size() == 3;
  }
  Json detail = skeleton_cert_json(cert);
  detail["count_ok"] = count_ok;
  return {cert.pass && count_ok, detail};
}

CheckReport check_halving(const Json& c, const Options& o) {
  require(o.hrep, "--hrep");
  Json input;
  const HPolytope h = load_hrep(o.hrep, input);
  match_input(c, input);
  const Json& result = field(c, "result");
  const HalvingCertificate cert =
      verify_halving(h, vec_of(field(result, "x")), index_set_of(field(field(result, "face_P"), "tight")),
                     index_set_of(field(field(result, "face_negP"), "tight")),
                     eps_of(c, "eps_geom", o.eps_geom));
  return {cert.pass, halving_cert_json(cert)};
}

CheckReport check_prop9(const Json& c, const Options& o) {
  const std::string kind = field(c, "kind").get<std::string>();
  const Json& params = field(c, "parameters");
  const Json& result = field(c, "result");
  if (kind == "prop9-fixture") {
    const int d = field(params, "dim").get<int>();
    const bool ok = format_hrep_text(prop9_fixture(d)) == field(result, "hrep").get<std::string>();
    return {ok, {{"fixture_matches", ok}, {"pass", ok}}};
  }
  std::optional<HPolytope> h;
  if (params.contains("dim")) {
    h = prop9_fixture(params["dim"].get<int>());
  } else {
    require(o.hrep, "--hrep");
    Json input;
    h = load_hrep(o.hrep, input);
    match_input(c, input);
  }
  const bool holds = prop9_check(*h, field(params, "k").get<int>());
  const bool ok = holds == field(result, "holds").get<bool>();
  return {ok, {{"holds", holds}, {"pass", ok}}};
}

Outcome cmd_check(const Options& o) {
  require(o.json, "--json");
  Json c;
  try {
    c = Json::parse(read_file(o.json));
  } catch (const Json::exception& e) {
    throw UsageError(std::string("certificate: ") + e.what());
  }
  if (field(c, "schema") != kSchema) throw UsageError("certificate: unsupported schema");
  const std::string kind = field(c, "kind").get<std::string>();
  CheckReport rep;
  if (kind == "balance2d" || kind == "balance2d-fast") {
    rep = check_balance(c, o, false);
  } else if (kind == "antipodal") {
    rep = check_balance(c, o, true);
  } else if (kind == "reduce-partition" || kind == "solve-partition" || kind == "gadget-decide") {
    rep = check_gadget(c, o);
  } else if (kind == "tripodal" || kind == "tripodal-oracle") {
    rep = check_tripodal(c, o);
  } else if (kind == "four-on-edges") {
    rep = check_four(c, o);
  } else if (kind == "three-on-edges" || kind == "pow2" || kind == "compose") {
    rep = check_skeleton(c, o);
  } else if (kind == "halving") {
    rep = check_halving(c, o);
  } else if (kind == "prop9-fixture" || kind == "prop9-check") {
    rep = check_prop9(c, o);
  } else {
    throw UsageError("certificate: unknown kind " + kind);
  }
  Outcome r;
  r.doc["schema"] = kSchema;
  r.doc["kind"] = "check";
  r.doc["checked"] = kind;
  r.doc["detail"] = rep.detail;
  r.doc["pass"] = rep.pass;
  r.exit_code = rep.pass ? kOk : kVerifyFailed;
  return r;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Infeasible:
    case Errc::NotFound:
    case Errc::SearchExhausted:
    case Errc::UnsupportedDimension:
    case Errc::NoCrossing:
    case Errc::NoIntersection:
    case Errc::PerturbationFailed:
    case Errc::WalkFailed:
    case Errc::SubdivisionLimit:
    case Errc::NoLoopContainsOrigin:
      return kNotFound;
    case Errc::DisconnectedSkeleton:
      return kVerifyFailed;
    default:
      return kInputError;
  }
}

enum Flag : unsigned {
  kPolygon = 1u << 0,
  kOff = 1u << 1,
  kHrep = 1u << 2,
  kWeights = 1u << 3,
  kTarget = 1u << 4,
  kEps = 1u << 5,
  kSeed = 1u << 6,
  kGrid = 1u << 7,
  kSvg = 1u << 8,
  kObj = 1u << 9,
  kJsonOut = 1u << 10,
  kPartition = 1u << 11,
  kK = 1u << 12,
  kDim = 1u << 13,
  kPlane = 1u << 14,
  kOut = 1u << 15,
  kTrace = 1u << 16,
};

}  // namespace

CommandResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weight balancing on polygon, polyhedron and polytope boundaries.", "wbal"};
  app.require_subcommand(1, 1);
  Options o;
  std::map<std::string, std::function<Outcome()>> handlers;
  auto add = [&](const char* name, const char* help, unsigned flags, std::function<Outcome()> fn) {
    CLI::App* sc = app.add_subcommand(name, help);
    if (flags & kPolygon) sc->add_option("--polygon", o.polygon, "polygon file: x y lines or {\"vertices\": ...}");
    if (flags & kOff) sc->add_option("--off", o.off, "OFF mesh file");
    if (flags & kHrep) sc->add_option("--hrep", o.hrep, "H-representation file");
    if (flags & kWeights) sc->add_option("--weights", o.weights, "whitespace-separated weights");
    if (flags & kTarget) sc->add_option("--target", o.target, "target point \"x y [z ...]\"");
    if (flags & kEps) {
      sc->add_option("--eps-geom", o.eps_geom, "absolute membership tolerance");
      sc->add_option("--eps-bal", o.eps_bal, "absolute balance tolerance");
    }
    if (flags & kSeed) sc->add_option("--seed", o.seed, "seed for randomized steps (default 0)");
    if (flags & kGrid) sc->add_option("--grid", o.grid, "search grid NxM (t by theta)");
    if (flags & kSvg) sc->add_option("--svg", o.svg, "write an SVG figure");
    if (flags & kObj) sc->add_option("--obj", o.obj, "write an OBJ overlay");
    if (flags & kJsonOut) sc->add_option("--json", o.json, name == std::string("check")
                                                                ? "certificate to verify"
                                                                : "write the certificate here");
    if (flags & kPartition) sc->add_option("--partition", o.partition, "PARTITION integers");
    if (flags & kK) sc->add_option("--k", o.k, "exponent / face dimension bound");
    if (flags & kDim) sc->add_option("--dim", o.dim, "fixture dimension");
    if (flags & kPlane) sc->add_option("--plane", o.plane, "section plane normal \"nx ny nz\"");
    if (flags & kOut) sc->add_option("--out", o.out, "write the generated geometry here");
    if (flags & kTrace) sc->add_flag("--trace", o.trace, "draw migration image curves in the SVG");
    handlers[name] = std::move(fn);
  };
  const unsigned common = kEps | kSeed | kJsonOut;
  add("balance2d", "balance weights on a polygon boundary", common | kPolygon | kWeights | kTarget | kSvg | kTrace,
      [&] { return cmd_balance(o, false); });
  add("balance2d-fast", "three-location variant of balance2d",
      common | kPolygon | kWeights | kTarget | kSvg | kTrace, [&] { return cmd_balance(o, true); });
  add("antipodal", "two boundary points with a given midpoint", common | kPolygon | kTarget | kSvg,
      [&] { return cmd_antipodal(o); });
  add("reduce-partition", "build the gadget polygon and weights for a PARTITION instance",
      common | kPartition | kSvg | kOut, [&] { return cmd_reduce_partition(o); });
  add("solve-partition", "decide PARTITION exactly", common | kPartition,
      [&] { return cmd_solve_partition(o); });
  add("gadget-decide", "decide balanceability of the gadget instance", common | kPartition | kSvg,
      [&] { return cmd_gadget_decide(o); });
  add("tripodal", "equilateral triple centered at the origin (grid search)",
      common | kOff | kGrid | kSvg | kObj, [&] { return cmd_tripodal(o, false); });
  add("tripodal-oracle", "tripodal triple by exhaustive face triples", common | kOff | kObj,
      [&] { return cmd_tripodal(o, true); });
  add("three-on-edges", "three edge points of a 3-polytope with barycenter target",
      common | kHrep | kTarget | kObj, [&] { return cmd_three_on_edges(o); });
  add("four-on-edges", "four edge points of a closed mesh summing to zero", common | kOff | kPlane | kObj,
      [&] { return cmd_four_on_edges(o); });
  add("halving", "halving witness for P and -P", common | kHrep | kObj, [&] { return cmd_halving(o); });
  add("pow2", "2^k points on the 1-skeleton summing to zero", common | kHrep | kK | kObj,
      [&] { return cmd_pow2(o); });
  add("compose", "d points on the 1-skeleton summing to zero", common | kHrep | kObj,
      [&] { return cmd_compose(o); });
  add("prop9-fixture", "triangle-product polytope", common | kDim | kOut,
      [&] { return cmd_prop9_fixture(o); });
  add("prop9-check", "do all faces of dimension <= k miss -P?", common | kHrep | kDim | kK,
      [&] { return cmd_prop9_check(o); });
  add("check", "re-verify a certificate against its geometry file",
      kJsonOut | kEps | kPolygon | kOff | kHrep, [&] { return cmd_check(o); });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? kOk : kInputError, {}, {}};
  }

  CommandResult cr;
  try {
    const std::string name = app.get_subcommands().front()->get_name();
    Outcome r = handlers.at(name)();
    const std::string text = r.doc.dump(2) + "\n";
    if (!o.json.empty() && name != "check") {
      write_file(o.json, text);
      cr.certificate_path = o.json;
    } else {
      out << text;
    }
    cr.exit_code = r.exit_code;
    cr.figure_path = r.figure;
    if (r.exit_code == kVerifyFailed) err << "wbal: certificate did not verify\n";
  } catch (const UsageError& e) {
    err << "wbal: " << e.what() << "\n";
    cr.exit_code = kInputError;
  } catch (const Error& e) {
    err << "wbal: " << e.what() << "\n";
    cr.exit_code = exit_code_for(e.code());
  } catch (const Json::exception& e) {
    err << "wbal: certificate: " << e.what() << "\n";
    cr.exit_code = kInputError;
  }
  return cr;
}

}  // namespace wbal::cli
