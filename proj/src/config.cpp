#include "maxgraph/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "maxgraph/errors.hpp"

namespace maxgraph {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const char* c = text.c_str();
  char* end = nullptr;
  double x = std::strtod(c, &end);
  if (end == c || *end != '\0' || !std::isfinite(x))
    throw validation_error("config: key " + key + " wants a finite number, got '" +
                           text + "'");
  return x;
}

}  // namespace

std::string RunConfig::str(const std::string& key,
                           const std::string& fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

std::string RunConfig::require(const std::string& key) const {
  auto it = kv.find(key);
  if (it == kv.end())
    throw validation_error("config: key " + key + " is required");
  return it->second;
}

double RunConfig::num(const std::string& key, double fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_double(key, it->second);
}

int RunConfig::integer(const std::string& key, int fallback) const {
  double x = num(key, fallback);
  int i = (int)std::lround(x);
  if (x != (double)i)
    throw validation_error("config: key " + key + " wants an integer");
  return i;
}

std::vector<double> RunConfig::list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(require(key));
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_double(key, trim(item)));
  if (out.empty())
    throw validation_error("config: key " + key + " wants a list of numbers");
  return out;
}

cplx RunConfig::complex_num(const std::string& key) const {
  std::string text = trim(require(key));
  const char* c = text.c_str();
  char* end = nullptr;
  double re = std::strtod(c, &end);
  if (end == c) throw validation_error("config: key " + key + " is not a number");
  if (*end == '\0') return cplx(re, 0.0);
  const char* c2 = end;
  double im = std::strtod(c2, &end);
  if (end == c2 || *end != 'i' || *(end + 1) != '\0')
    throw validation_error("config: key " + key +
                           " wants re or re+imi, got '" + text + "'");
  return cplx(re, im);
}

void RunConfig::restrict_to(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : kv)
    if (!allowed.count(key))
      throw validation_error("config: unknown key " + key);
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("config: cannot read " + path);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw validation_error("config: bad line '" + line + "' in " + path);
    cfg.kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
}

void apply_assignment(RunConfig& cfg, const std::string& token) {
  size_t eq = token.find('=');
  if (eq == std::string::npos)
    throw validation_error("config: expected key=value, got '" + token + "'");
  std::string key = trim(token.substr(0, eq));
  std::string value = trim(token.substr(eq + 1));
  if (key == "config")
    load_config_file(cfg, value);
  else
    cfg.kv[key] = value;
}

std::vector<double> parse_range(const std::string& text) {
  std::stringstream ss(text);
  std::string lo, hi, steps;
  if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') ||
      !std::getline(ss, steps))
    throw validation_error("config: range wants lo:hi:steps, got '" + text + "'");
  double a = parse_double("range", trim(lo));
  double b = parse_double("range", trim(hi));
  int n = (int)parse_double("range", trim(steps));
  if (n < 1) throw validation_error("config: range needs at least one step");
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return out;
}

Divisor parse_divisor(const std::string& text) {
  Divisor d;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::stringstream ts(trim(item));
    std::string re, im, mult;
    if (!std::getline(ts, re, ':') || !std::getline(ts, im, ':') ||
        !std::getline(ts, mult))
      throw validation_error("config: divisor wants re:im:mult triples, got '" +
                             item + "'");
    d.points.emplace_back(cplx(parse_double("divisor", trim(re)),
                               parse_double("divisor", trim(im))),
                          (int)parse_double("divisor", trim(mult)));
  }
  if (d.points.empty())
    throw validation_error("config: divisor list is empty");
  return d;
}

}  // namespace maxgraph
