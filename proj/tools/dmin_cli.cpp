// Command-line front end: builds patterns, Koebe polyhedra and discrete
// minimal surfaces, exports them and re-validates stored bundles.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmin/bundle.hpp"
#include "dmin/export.hpp"
#include "dmin/kernels.hpp"
#include "dmin/minimal.hpp"
#include "dmin/surfaces.hpp"

using namespace dmin;
using nlohmann::json;

namespace {

struct Output {
  std::string path;
  bool report = false;
  ObjOptions obj;
};

void add_output(CLI::App* app, Output& o) {
  app->add_option("-o,--output", o.path, "output file (.obj or .json)");
  app->add_flag("--report", o.report, "print the residual table");
  app->add_option("--sphere-level", o.obj.sphere_level, "icosphere subdivisions in OBJ output")->check(CLI::NonNegativeNumber);
  app->add_option("--circle-segments", o.obj.circle_segments, "polyline segments per circle")->check(CLI::Range(3, 100000));
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void print_table(const std::map<std::string, double>& rows) {
  std::printf("%-22s %s\n", "residual", "value");
  for (const auto& [k, v] : rows) std::printf("%-22s %.3e\n", k.c_str(), v);
}

void emit(const GeometryBundle& b, const Output& o) {
  if (!o.path.empty()) {
    if (ends_with(o.path, ".obj")) {
      ObjOptions opt = o.obj;
      if (auto it = b.parameters.find("truncation"); it != b.parameters.end()) opt.truncation = it->second;
      write_text_file(o.path, export_obj(b, opt));
    } else {
      write_text_file(o.path, bundle_to_json(b));
    }
  }
  if (o.report) print_table(b.residuals);
}

int emit_model(const SurfaceModel& m, const Output& o) {
  GeometryBundle b = make_bundle(m.minimal.surface, m.kind, m.parameters, m.periods);
  emit(b, o);
  if (o.report) {
    std::map<std::string, double> extra{{"dual_closure", m.minimal.dual.relative_residual()},
                                        {"touching_coins_koebe", m.touching_coins},
                                        {"gauss_alignment", m.minimal.gauss_alignment}};
    if (m.kind == "catenoid") extra["ring_closure"] = m.ring_closure;
    if (m.solve) extra["solver_residual"] = m.solve->residual_max;
    print_table(extra);
    std::printf("interior sphere vertices: %d, periods: %zu, ends: %zu, kernel: %s\n",
                m.minimal.interior_sphere_vertices, m.periods.size(), m.minimal.surface.rays.size(),
                kernels::isa_name(kernels::active_isa()));
  }
  return 0;
}

json planar_json(const PlanarPattern& p) {
  json j;
  json verts = json::array();
  for (int v = 0; v < p.graph->vertex_count(); ++v)
    verts.push_back({{"index", p.index[v]},
                     {"label", label_name(p.graph->label(v))},
                     {"center", {p.center[v].real(), p.center[v].imag()}},
                     {"radius", p.radius[v]}});
  j["vertices"] = verts;
  j["faces"] = p.graph->faces();
  const PlanarResiduals r = planar_residuals(p);
  j["residuals"] = {{"tangency", r.tangency}, {"contact_offset", r.contact_offset}, {"orthogonality", r.orthogonality}};
  return j;
}

SQuadGraph read_graph(const std::string& path) {
  const json j = json::parse(read_text_file(path));
  std::vector<Label> labels;
  for (const json& v : j.at("vertices")) labels.push_back(label_from_name(v.at("label").get<std::string>()));
  std::vector<std::uint8_t> flags(labels.size(), kFlagNone);
  if (j.contains("flags") && j["flags"].contains("branch"))
    for (int v : j["flags"]["branch"].get<std::vector<int>>()) flags.at(v) |= kFlagBranch;
  return SQuadGraph(labels, j.at("faces").get<std::vector<Face>>(), flags);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete S-isothermic minimal surfaces from circle patterns"};
  app.require_subcommand(1);
  Output out;

  // make-pattern
  auto* mp = app.add_subcommand("make-pattern", "planar orthogonal circle pattern as JSON");
  std::string mp_kind = "enneper";
  int mp_n = 4, mp_N = 6, mp_rows = 2;
  double mp_r = 1.0;
  mp->add_option("--kind", mp_kind)->check(CLI::IsMember({"enneper", "sexp"}));
  mp->add_option("--n", mp_n, "Enneper window half-size")->check(CLI::PositiveNumber);
  mp->add_option("--r", mp_r, "Enneper circle radius")->check(CLI::PositiveNumber);
  mp->add_option("--N", mp_N, "S-Exp circles per half turn")->check(CLI::Range(3, 100000));
  mp->add_option("--rows", mp_rows, "S-Exp rows on each side")->check(CLI::PositiveNumber);
  mp->add_option("-o,--output", out.path);
  mp->add_flag("--report", out.report);

  // solve-pattern / koebe
  int cm = 2, cn = 2, ck = 2;
  double tol = 1e-10;
  auto* sp = app.add_subcommand("solve-pattern", "solve the spherical pattern of a refined cube");
  auto* kb = app.add_subcommand("koebe", "Koebe polyhedron of a refined cube");
  for (auto* c : {sp, kb}) {
    c->add_option("--m", cm)->check(CLI::PositiveNumber);
    c->add_option("--n", cn)->check(CLI::PositiveNumber);
    c->add_option("--k", ck)->check(CLI::PositiveNumber);
  }
  std::string graph_file, targets_file;
  sp->add_option("--graph", graph_file, "quad-graph JSON (vertices[].label, faces, optional flags.branch); default: refined cube")
      ->check(CLI::ExistingFile);
  sp->add_option("--targets", targets_file, "JSON object vertex -> nominal angle; missing circles get 2 pi")
      ->check(CLI::ExistingFile);
  sp->add_option("--tol", tol)->check(CLI::PositiveNumber);
  sp->add_option("-o,--output", out.path);
  sp->add_flag("--report", out.report);
  add_output(kb, out);

  // dualize
  auto* du = app.add_subcommand("dualize", "Christoffel dual of a Koebe bundle");
  std::string input;
  du->add_option("--input", input)->required()->check(CLI::ExistingFile);
  add_output(du, out);

  // surfaces
  int en = 4;
  auto* ep = app.add_subcommand("enneper", "discrete Enneper surface");
  ep->add_option("--n", en)->check(CLI::Range(2, 4096));
  add_output(ep, out);
  int cN = 6, crows = 4;
  auto* ca = app.add_subcommand("catenoid", "discrete catenoid");
  ca->add_option("--N", cN)->check(CLI::Range(3, 100000));
  ca->add_option("--rows", crows)->check(CLI::PositiveNumber);
  add_output(ca, out);
  auto* sch = app.add_subcommand("schwarz-p", "fundamental piece of the discrete Schwarz P surface");
  sch->add_option("--m", cm)->check(CLI::PositiveNumber);
  sch->add_option("--n", cn)->check(CLI::PositiveNumber);
  sch->add_option("--k", ck)->check(CLI::PositiveNumber);
  add_output(sch, out);
  double trunc = 1.0;
  auto* sk = app.add_subcommand("scherk", "discrete Scherk tower");
  sk->add_option("--m", cm)->check(CLI::PositiveNumber);
  sk->add_option("--n", cn)->check(CLI::PositiveNumber);
  sk->add_option("--truncation", trunc)->check(CLI::PositiveNumber);
  add_output(sk, out);

  // assoc-family
  auto* af = app.add_subcommand("assoc-family", "associated family of the catenoid");
  int steps = 4;
  af->add_option("--N", cN)->check(CLI::Range(3, 100000));
  af->add_option("--rows", crows)->check(CLI::PositiveNumber);
  af->add_option("--phi-steps", steps, "members over [0, pi]")->check(CLI::Range(1, 10000));
  af->add_option("-o,--output", out.path, "file prefix; members are written as <prefix>_<i>.obj");
  af->add_flag("--report", out.report);

  // converge
  auto* cv = app.add_subcommand("converge", "convergence study against the smooth surface");
  std::string family = "enneper";
  std::vector<int> levels{4, 8, 16, 32};
  double half = 0.5;
  cv->add_option("--family", family)->check(CLI::IsMember({"enneper", "catenoid"}));
  cv->add_option("--levels", levels)->delimiter(',');
  cv->add_option("--half-width", half)->check(CLI::PositiveNumber);

  // validate
  auto* va = app.add_subcommand("validate", "recompute and check the residuals of a JSON bundle");
  double vtol = 1e-7;
  va->add_option("--input", input)->required()->check(CLI::ExistingFile);
  va->add_option("--tol", vtol)->check(CLI::PositiveNumber);
  va->add_flag("--report", out.report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mp->parsed()) {
      const PlanarPattern p = mp_kind == "enneper" ? enneper_grid_pattern(mp_n, mp_n, mp_r)
                                                   : sexp_pattern(mp_N, -mp_rows, mp_rows, 0, 2 * mp_N);
      const json j = planar_json(p);
      if (!out.path.empty()) write_text_file(out.path, j.dump(1) + "\n");
      if (out.report) print_table(j["residuals"].get<std::map<std::string, double>>());
      return 0;
    }
    if (sp->parsed() || kb->parsed()) {
      const SQuadGraph graph = sp->parsed() && !graph_file.empty() ? read_graph(graph_file) : make_refined_cube(cm, cn, ck).graph;
      const CircleAdjacency adj = CircleAdjacency::from_graph(graph);
      Eigen::VectorXd targets = default_targets(graph, adj);
      if (sp->parsed() && !targets_file.empty()) {
        const json tj = json::parse(read_text_file(targets_file));
        for (const auto& [key, value] : tj.items()) {
          const int v = std::stoi(key);
          if (v < 0 || v >= graph.vertex_count() || adj.circle_of_vertex[v] < 0)
            throw GraphError("target for vertex " + key + ", which is not a white vertex");
          targets[adj.circle_of_vertex[v]] = value.get<double>();
        }
      }
      const SphericalFunctional fn(adj, targets);
      SolveOptions so;
      so.tol = tol;
      const SolveResult res = solve_pattern(fn, Eigen::VectorXd::Zero(fn.size()), so);
      const SphericalPattern pat = normalize_pattern(layout_pattern(graph, res.rho));
      if (sp->parsed()) {
        json j;
        json rho = json::object();
        for (int c = 0; c < adj.size(); ++c) rho[std::to_string(adj.vertex_of_circle[c])] = res.rho[c];
        j["rho"] = rho;
        j["residual_max"] = res.residual_max;
        j["iterations"] = res.iterations;
        j["newton_steps"] = res.newton_steps;
        json pts = json::array();
        for (int v = 0; v < graph.vertex_count(); ++v)
          pts.push_back({{"label", label_name(graph.label(v))},
                         {"point", {pat.point[v].x(), pat.point[v].y(), pat.point[v].z()}},
                         {"radius", pat.radius[v]}});
        j["vertices"] = pts;
        if (!out.path.empty()) write_text_file(out.path, j.dump(1) + "\n");
        if (out.report)
          std::printf("closure residual %.3e after %d quasi-Newton and %d Newton steps\n", res.residual_max,
                      res.iterations, res.newton_steps);
        return res.residual_max <= tol ? 0 : 1;
      }
      const KoebePolyhedron k = build_koebe(pat);
      emit(make_bundle(k.surface, "koebe", {{"m", cm}, {"n", cn}, {"k", ck}}), out);
      return 0;
    }
    if (du->parsed()) {
      const GeometryBundle in = bundle_from_json(read_text_file(input));
      const KoebePolyhedron k{surface_from_bundle(in)};
      const MinimalSurface m = dualize_koebe_to_minimal(k, assign_edge_signs(*k.surface.graph));
      emit(make_bundle(m.surface, "dual", in.parameters), out);
      return 0;
    }
    if (ep->parsed()) return emit_model(make_enneper(en), out);
    if (ca->parsed()) return emit_model(make_catenoid(cN, crows), out);
    if (sch->parsed()) return emit_model(make_schwarz_p(cm, cn, ck), out);
    if (sk->parsed()) return emit_model(make_scherk(cm, cn, trunc), out);
    if (af->parsed()) {
      const SurfaceModel base = make_catenoid(cN, crows);
      for (int i = 0; i < steps; ++i) {
        const double phi = steps == 1 ? 0.0 : std::numbers::pi * i / (steps - 1);
        const AssociatedFamilyMember mem = associated_family_geometric(base.koebe, base.signs, phi, 0, false);
        GeometryBundle b = make_bundle(mem.surface, "assoc", {{"N", cN}, {"rows", crows}, {"phi", phi}});
        if (!out.path.empty()) {
          const std::string stem = out.path + "_" + std::to_string(i);
          write_text_file(stem + ".obj", export_obj(b, out.obj));
        }
        if (out.report) std::printf("phi %.6f closure %.3e circles %d\n", phi, mem.closure_residual, mem.circles);
      }
      return 0;
    }
    if (cv->parsed()) {
      const ConvergenceReport rep =
          convergence_report(family == "enneper" ? SmoothFamily::Enneper : SmoothFamily::Catenoid, levels, half);
      std::printf("%6s %14s %14s %10s\n", "n", "sup error", "center error", "seconds");
      for (const auto& l : rep.levels) std::printf("%6d %14.6e %14.6e %10.3f\n", l.n, l.error, l.center_error, l.seconds);
      std::printf("slope %.4f +/- %.4f\n", rep.slope, rep.slope_stderr);
      return 0;
    }
    if (va->parsed()) {
      const GeometryBundle b = bundle_from_json(read_text_file(input));
      const BundleCheck c = validate_bundle(b, vtol);
      if (out.report) print_table(c.recomputed);
      for (const auto& p : c.problems) std::fprintf(stderr, "%s\n", p.c_str());
      std::printf("%s\n", c.ok() ? "valid" : "INVALID");
      return c.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
