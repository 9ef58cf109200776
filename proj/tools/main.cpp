#include <CLI11.hpp>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "maxgraph/circular.hpp"
#include "maxgraph/config.hpp"
#include "maxgraph/errors.hpp"
#include "maxgraph/graph.hpp"
#include "maxgraph/io.hpp"
#include "maxgraph/mechanics.hpp"
#include "maxgraph/quadrature.hpp"
#include "maxgraph/weierstrass.hpp"

using namespace maxgraph;

namespace {

RunConfig from_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  for (const auto& a : args) apply_assignment(cfg, a);
  return cfg;
}

double require_num(const RunConfig& cfg, const std::string& key) {
  cfg.require(key);
  return cfg.num(key, 0.0);
}

WeierstrassEvaluator make_family(const RunConfig& cfg) {
  std::string family = cfg.require("family");
  if (family == "catenoid") return WeierstrassEvaluator::catenoid_model();
  if (family == "local")
    return WeierstrassEvaluator::local_model(cfg.integer("m", 1),
                                             cfg.integer("k", 0));
  if (family == "riemann") {
    CurveParams p;
    p.c = cfg.list("c");
    p.b = cfg.list("b");
    p.n = cfg.integer("n", (int)p.c.size());
    return WeierstrassEvaluator::riemann_family(p);
  }
  throw validation_error("family must be riemann, catenoid, or local");
}

MeshSpec parse_mesh(const std::string& text) {
  size_t x = text.find('x');
  if (x == std::string::npos)
    throw validation_error("mesh wants AROUNDxRINGS, e.g. 64x64");
  MeshSpec spec;
  try {
    spec.around = std::stoi(text.substr(0, x));
    spec.rings = std::stoi(text.substr(x + 1));
  } catch (const std::exception&) {
    throw validation_error("mesh wants AROUNDxRINGS, e.g. 64x64");
  }
  return spec;
}

void emit(const RunConfig& cfg, const std::string& key,
          const std::string& content) {
  std::string path = cfg.str(key, "");
  if (path.empty())
    std::cout << content;
  else
    write_text_file(path, content);
}

int cmd_build(const RunConfig& cfg) {
  cfg.restrict_to({"family", "n", "c", "b", "m", "k", "mesh", "out", "report",
                   "tol"});
  auto ev = make_family(cfg);
  auto g = build_graph(ev, cfg.num("tol", 1e-10));
  auto mesh = sample_mesh(g, parse_mesh(cfg.str("mesh", "32x32")));

  std::stringstream paths(cfg.require("out"));
  std::string path;
  while (std::getline(paths, path, ',')) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".obj")
      write_obj(mesh, path);
    else if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
      write_mesh_csv(mesh, path);
    else
      throw validation_error("out: expected .obj or .csv, got " + path);
  }

  std::ostringstream rep;
  rep << "{\n  \"family\": \"" << cfg.require("family") << "\",\n"
      << "  \"vertices\": " << mesh.vertices.size() << ",\n"
      << "  \"faces\": " << mesh.faces.size() << ",\n"
      << "  \"singularities\": [";
  for (int j = 0; j < g.num_singular(); ++j) {
    auto cone = cone_check(g, j);
    rep << (j ? "," : "") << "\n    {\"q\": [" << fmt_g17(g.singular[j].x1)
        << ", " << fmt_g17(g.singular[j].x2) << ", "
        << fmt_g17(g.singular[j].x3) << "], \"cone_slope_deviation\": "
        << fmt_g17(cone.max_deviation.back())
        << ", \"slope_shrinking\": " << (cone.shrinking ? "true" : "false")
        << "}";
  }
  rep << "\n  ],\n";
  bool structure_ok = true;
  if (g.ev.tracked()) {
    auto hyp = validate_structure(g.ev);
    structure_ok = hyp.all_ok();
    rep << "  \"hypotheses\": {\n"
        << "    \"gauss_degree\": " << hyp.degree_counted
        << ",\n    \"gauss_degree_ok\": " << (hyp.degree_ok ? "true" : "false")
        << ",\n    \"boundary_injective\": "
        << (hyp.boundary_injective ? "true" : "false")
        << ",\n    \"pole_tail\": " << fmt_g17(hyp.pole_tail)
        << ",\n    \"pole_order_ok\": " << (hyp.pole_order_ok ? "true" : "false")
        << ",\n    \"zero_count\": " << hyp.counted_zero_count
        << ",\n    \"zero_count_expected\": " << hyp.expected_zero_count
        << ",\n    \"zero_match_dist\": " << fmt_g17(hyp.zero_match_dist)
        << ",\n    \"zeros_ok\": " << (hyp.zeros_ok ? "true" : "false")
        << ",\n    \"all_ok\": " << (structure_ok ? "true" : "false")
        << "\n  }\n}\n";
  } else {
    rep << "  \"hypotheses\": null\n}\n";
  }
  emit(cfg, "report", rep.str());
  if (!structure_ok) {
    std::cerr << "build: structural hypotheses failed\n";
    return 3;
  }
  return 0;
}

int cmd_mechanics(const RunConfig& cfg) {
  cfg.restrict_to({"family", "n", "c", "b", "m", "k", "tol", "tol_balance",
                   "out"});
  auto ev = make_family(cfg);
  double tol = cfg.num("tol", 1e-10);
  auto g = build_graph(ev, tol);
  auto ft = balance_report(g, cfg.num("tol_balance", 1e-6), Vec3L{}, tol);
  auto fit = asymptotic_fit(g);
  double consistency = end_growth_consistency(g, tol);
  emit(cfg, "out", mechanics_json(ft, fit.c, consistency));
  if (!ft.balanced) {
    std::cerr << "mechanics: balance residuals exceed tol_balance\n";
    return 3;
  }
  return 0;
}

int cmd_domain(const RunConfig& cfg) {
  int n = cfg.integer("n", 1);
  std::set<std::string> allowed{"n", "K", "out", "cert", "tau", "kappa1",
                                "kappa2"};
  for (int j = 1; j <= n; ++j) {
    allowed.insert("c" + std::to_string(j));
    allowed.insert("r" + std::to_string(j));
  }
  cfg.restrict_to(allowed);

  DomainParams v;
  v.n = n;
  for (int j = 1; j <= n; ++j) {
    v.centers.push_back(cfg.complex_num("c" + std::to_string(j)));
    v.radii.push_back(require_num(cfg, "r" + std::to_string(j)));
  }
  validate(v);
  int K = cfg.integer("K", 24);

  bool conditioning = false;
  for (int j = 1; j <= n; ++j) {
    auto h = harmonic_solve(
        v, [j](int i, cplx) { return i == j ? 1.0 : 0.0; }, K);
    conditioning = conditioning || h.conditioning_warning;
  }

  auto etas = eta_basis(v, K);
  double kron = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      cplx per = form_integral(etas[j], circle_loop(v.centers[k], v.radii[k]));
      kron = std::max(kron, std::abs(per - (j == k ? 1.0 : 0.0)));
    }

  auto pm = period_matrix(v, K);
  double remax = 0.0, asym = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      remax = std::max(remax, std::abs(pm[j][k].real()));
      asym = std::max(asym, std::abs(pm[j][k] - pm[k][j]));
    }
  if (cfg.has("out")) write_period_matrix_csv(pm, cfg.str("out", ""));

  std::ostringstream rep;
  rep << "{\n  \"n\": " << n << ",\n  \"K\": " << K
      << ",\n  \"conditioning_warning\": " << (conditioning ? "true" : "false")
      << ",\n  \"eta_kronecker_defect\": " << fmt_g17(kron)
      << ",\n  \"period_matrix_real_max\": " << fmt_g17(remax)
      << ",\n  \"period_matrix_asymmetry\": " << fmt_g17(asym);

  double eps = divisor_clearance(v);
  auto divisor_block = [&](const FormRep& f,
                           const std::vector<std::pair<cplx, int>>& want) {
    double res_defect = 0.0;
    for (const auto& [w, m] : want) {
      cplx res = form_integral(f, circle_loop(w, eps / 2.0)) /
                 cplx(0.0, 2.0 * kPi);
      res_defect = std::max(res_defect, std::abs(res - (double)m));
    }
    double per_max = 0.0;
    for (int k = 0; k < n; ++k)
      per_max = std::max(per_max, std::abs(form_integral(
                                      f, circle_loop(v.centers[k], v.radii[k]))));
    rep << "{\"residue_defect\": " << fmt_g17(res_defect)
        << ", \"circle_period_max\": " << fmt_g17(per_max) << "}";
  };

  rep << ",\n  \"tau\": ";
  if (cfg.has("tau")) {
    Divisor D = parse_divisor(cfg.require("tau"));
    auto tau = tau_form(v, D, K);
    std::vector<std::pair<cplx, int>> want;
    for (const auto& [w, m] : D.points) want.emplace_back(w, -m);
    divisor_block(tau, want);
  } else {
    rep << "null";
  }

  rep << ",\n  \"kappa\": ";
  if (cfg.has("kappa1") || cfg.has("kappa2")) {
    Divisor D1 = parse_divisor(cfg.require("kappa1"));
    Divisor D2 = parse_divisor(cfg.require("kappa2"));
    auto kap = kappa_form(v, D1, D2, K);
    std::vector<std::pair<cplx, int>> want;
    for (const auto& [w, m] : D1.points) want.emplace_back(w, -m);
    for (const auto& [w, m] : D2.points) want.emplace_back(w, m);
    divisor_block(kap, want);
  } else {
    rep << "null";
  }
  rep << "\n}\n";
  emit(cfg, "cert", rep.str());
  return 0;
}

struct SweepRow {
  double c1 = 0.0, b1 = 0.0;
  std::string status = "ok";
  double growth = 0.0, rflux = 0.0, rtorque = 0.0, maxh = 0.0;
  std::vector<Vec3L> fluxes;
};

int cmd_sweep(const RunConfig& cfg) {
  cfg.restrict_to({"family", "n", "c1", "b1", "out", "tol", "threads"});
  std::string family = cfg.str("family", "riemann");
  if (family != "riemann" || cfg.integer("n", 1) != 1)
    throw validation_error("sweep: only family=riemann n=1 is swept");
  auto c1s = parse_range(cfg.require("c1"));
  auto b1s = parse_range(cfg.require("b1"));
  double tol = cfg.num("tol", 1e-10);

  std::vector<SweepRow> rows(c1s.size() * b1s.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    rows[i].c1 = c1s[i / b1s.size()];
    rows[i].b1 = b1s[i % b1s.size()];
  }

  int nthreads = cfg.integer("threads", 0);
  if (nthreads <= 0)
    nthreads = std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<int>(nthreads, (int)rows.size());

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      try {
        CurveParams p;
        p.n = 1;
        p.c = {row.c1};
        p.b = {row.b1};
        auto g = build_graph(WeierstrassEvaluator::riemann_family(p), tol);
        auto ft = balance_report(g, 1e-6, Vec3L{}, tol);
        row.rflux = ft.balance_residual_flux;
        row.rtorque = ft.balance_residual_torque;
        row.fluxes = ft.fluxes;
        for (size_t j = 0; j + 1 < ft.fluxes.size(); ++j)
          row.maxh = std::max(row.maxh, std::hypot(ft.fluxes[j].x1,
                                                   ft.fluxes[j].x2));
        row.growth = asymptotic_fit(g).c;
      } catch (const validation_error&) {
        row.status = "validation";
      } catch (const certificate_error&) {
        row.status = "certificate";
      } catch (const accuracy_error&) {
        row.status = "accuracy";
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  double nan = std::nan("");
  std::ostringstream out;
  out << "c1,b1,status,growth,residual_flux,residual_torque,"
         "max_horizontal_flux,f1_x1,f1_x2,f1_x3,f2_x1,f2_x2,f2_x3,"
         "end_x1,end_x2,end_x3\n";
  size_t good = 0;
  for (const auto& row : rows) {
    bool ok = row.status == "ok";
    good += ok;
    out << fmt_g17(row.c1) << ',' << fmt_g17(row.b1) << ',' << row.status;
    double scalars[4] = {row.growth, row.rflux, row.rtorque, row.maxh};
    for (double s : scalars) out << ',' << fmt_g17(ok ? s : nan);
    for (size_t j = 0; j < 3; ++j) {
      Vec3L f = ok && j < row.fluxes.size() ? row.fluxes[j] : Vec3L{};
      out << ',' << fmt_g17(ok ? f.x1 : nan) << ',' << fmt_g17(ok ? f.x2 : nan)
          << ',' << fmt_g17(ok ? f.x3 : nan);
    }
    out << '\n';
  }
  write_text_file(cfg.str("out", "sweep.csv"), out.str());
  if (good * 10 < rows.size() * 9) {
    std::cerr << "sweep: more than 10% of the points failed\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "maximal graphs with conelike singularities: build surfaces, check "
      "flux and torque laws, export meshes, and analyze circular domains"};
  app.require_subcommand(1);
  std::vector<std::string> args;
  int (*run)(const RunConfig&) = nullptr;

  auto add = [&](const char* name, const char* help,
                 int (*fn)(const RunConfig&)) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("settings", args, "key=value settings; config=FILE loads a file");
    sub->callback([&run, fn] { run = fn; });
  };
  add("build", "construct a surface and export mesh plus reports", cmd_build);
  add("mechanics", "flux, torque, and balance report as JSON", cmd_mechanics);
  add("domain", "circular-domain period matrix and form certificates",
      cmd_domain);
  add("sweep", "scan a riemann-family parameter grid into a CSV", cmd_sweep);
  CLI11_PARSE(app, argc, argv);

  try {
    return run(from_args(args));
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const certificate_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const accuracy_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
