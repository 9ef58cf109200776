#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "maxgraph_cli_scratch";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  fs::path so = scratch() / "stdout.txt", se = scratch() / "stderr.txt";
  std::string cmd = std::string(MG_CLI_PATH) + " " + args + " > " +
                    so.string() + " 2> " + se.string();
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(so);
  r.err = slurp(se);
  return r;
}

size_t count_occurrences(const std::string& text, const std::string& needle) {
  size_t n = 0;
  for (size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++n;
  return n;
}

size_t count_line_prefix(const std::string& text, const std::string& prefix) {
  size_t n = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("rotational mesh export matches the requested resolution") {
  fs::path obj = scratch() / "cat.obj", rep = scratch() / "cat.json";
  auto r = run_cli("build family=catenoid mesh=64x64 out=" + obj.string() +
                   " report=" + rep.string());
  CHECK(r.code == 0);
  std::string mesh = slurp(obj);
  CHECK(count_line_prefix(mesh, "v ") == 4096);
  CHECK(count_line_prefix(mesh, "f ") == 8064);
  std::string report = slurp(rep);
  CHECK(report.find("\"vertices\": 4096") != std::string::npos);
  CHECK(report.find("\"hypotheses\": null") != std::string::npos);
}

TEST_CASE("curve family report carries both singular vertices") {
  fs::path obj = scratch() / "rie.obj", rep = scratch() / "rie.json";
  auto r = run_cli("build family=riemann n=1 c=2 b=3 mesh=16x16 out=" +
                   obj.string() + " report=" + rep.string());
  CHECK(r.code == 0);
  std::string report = slurp(rep);
  CHECK(count_occurrences(report, "\"q\": [") == 2);
  CHECK(count_occurrences(report, "\"slope_shrinking\": true") == 2);
  CHECK(report.find("\"all_ok\": true") != std::string::npos);
}

TEST_CASE("invalid settings exit with the validation code") {
  fs::path obj = scratch() / "bad.obj";
  CHECK(run_cli("build family=riemann c=3 b=3 out=" + obj.string()).code == 2);
  CHECK(run_cli("build family=catenoid wibble=1 out=" + obj.string()).code == 2);
  CHECK(run_cli("build family=catenoid").code == 2);  // missing out
  CHECK(run_cli("domain n=2 c1=3 r1=1 c2=4.5 r2=1.2").code == 2);
  CHECK(run_cli("mechanics family=local m=1 k=0").code == 2);
}

TEST_CASE("certificate failures exit with the certificate code") {
  auto strict = run_cli("mechanics family=catenoid tol_balance=1e-15");
  CHECK(strict.code == 3);
  CHECK(strict.err.find("balance") != std::string::npos);
  CHECK(run_cli("domain n=1 c1=3 r1=0.5 K=2").code == 3);
}

TEST_CASE("the annulus period lands in the domain output") {
  fs::path per = scratch() / "per.csv", cert = scratch() / "dom.json";
  auto r = run_cli("domain n=1 c1=3 r1=0.5 out=" + per.string() +
                   " cert=" + cert.string());
  CHECK(r.code == 0);
  double re = 1.0, im = 0.0;
  CHECK(std::sscanf(slurp(per).c_str(), "%lf,%lf", &re, &im) == 2);
  CHECK(std::abs(re) <= 1e-8);
  CHECK(std::abs(im - 0.87110321554964331) <= 1e-8);
  std::string report = slurp(cert);
  CHECK(report.find("\"conditioning_warning\": false") != std::string::npos);
  CHECK(report.find("\"tau\": null") != std::string::npos);
}

TEST_CASE("configuration files load with later overrides winning") {
  fs::path cfg = scratch() / "run.cfg", obj = scratch() / "cfg.obj";
  {
    std::ofstream out(cfg);
    out << "# stored settings\nfamily=catenoid\nmesh=8x8\n";
  }
  auto r = run_cli("build config=" + cfg.string() + " mesh=4x4 out=" +
                   obj.string());
  CHECK(r.code == 0);
  CHECK(count_line_prefix(slurp(obj), "v ") == 16);
}

TEST_CASE("identical configurations give identical bytes") {
  fs::path a_obj = scratch() / "det_a.obj", a_csv = scratch() / "det_a.csv";
  fs::path b_obj = scratch() / "det_b.obj", b_csv = scratch() / "det_b.csv";
  std::string base = "build family=riemann n=1 c=2 b=3 mesh=12x12 out=";
  CHECK(run_cli(base + a_obj.string() + "," + a_csv.string()).code == 0);
  CHECK(run_cli(base + b_obj.string() + "," + b_csv.string()).code == 0);
  CHECK(slurp(a_obj) == slurp(b_obj));
  CHECK(slurp(a_csv) == slurp(b_csv));
  CHECK(slurp(a_csv).rfind("re_z,im_z,x1,x2,x3,abs_g", 0) == 0);

  fs::path s1 = scratch() / "s1.csv", s2 = scratch() / "s2.csv";
  std::string sweep = "sweep c1=2:3:2 b1=4.5:6:2 out=";
  CHECK(run_cli(sweep + s1.string()).code == 0);
  CHECK(run_cli(sweep + s2.string()).code == 0);
  CHECK(slurp(s1) == slurp(s2));
}

TEST_CASE("sweep rows follow the grid in input order and balance") {
  fs::path out = scratch() / "grid.csv";
  auto r = run_cli("sweep c1=2:3:2 b1=4.5:6:2 out=" + out.string());
  CHECK(r.code == 0);
  std::istringstream in(slurp(out));
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line ==
        "c1,b1,status,growth,residual_flux,residual_torque,"
        "max_horizontal_flux,f1_x1,f1_x2,f1_x3,f2_x1,f2_x2,f2_x3,"
        "end_x1,end_x2,end_x3");
  std::vector<std::pair<double, double>> want{
      {2.0, 4.5}, {2.0, 6.0}, {3.0, 4.5}, {3.0, 6.0}};
  size_t row = 0;
  while (std::getline(in, line)) {
    REQUIRE(row < want.size());
    auto cells = split_csv_line(line);
    REQUIRE(cells.size() == 16);
    CHECK(std::stod(cells[0]) == doctest::Approx(want[row].first));
    CHECK(std::stod(cells[1]) == doctest::Approx(want[row].second));
    CHECK(cells[2] == "ok");
    CHECK(std::stod(cells[4]) <= 1e-5);
    CHECK(std::stod(cells[5]) <= 1e-5);
    ++row;
  }
  CHECK(row == 4);
}

TEST_CASE("a sweep with too many failed points exits nonzero") {
  fs::path out = scratch() / "gate.csv";
  auto r = run_cli("sweep c1=5.9:6:2 b1=6:6:1 out=" + out.string());
  CHECK(r.code == 3);
  std::string text = slurp(out);
  CHECK(count_occurrences(text, ",ok,") == 1);
  CHECK(count_occurrences(text, ",validation,") == 1);
}

TEST_CASE("mechanics output carries the documented keys") {
  auto r = run_cli("mechanics family=catenoid");
  CHECK(r.code == 0);
  for (const char* key :
       {"\"fluxes\"", "\"torques\"", "\"balance_residual_flux\"",
        "\"balance_residual_torque\"", "\"end_growth\"", "\"consistency\""})
    CHECK(r.out.find(key) != std::string::npos);
}
