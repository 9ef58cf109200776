#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "maxgraph/circular.hpp"
#include "maxgraph/extended.hpp"

namespace maxgraph {

// Flat key=value settings. Built from an optional config file plus
// command-line pairs; later assignments win, so flags override the file.
struct RunConfig {
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  std::string str(const std::string& key, const std::string& fallback) const;
  std::string require(const std::string& key) const;
  double num(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::vector<double> list(const std::string& key) const;
  cplx complex_num(const std::string& key) const;

  // Rejects any key outside the allowed set.
  void restrict_to(const std::set<std::string>& allowed) const;
};

// Lines of key=value; '#' starts a comment, blank lines ignored.
void load_config_file(RunConfig& cfg, const std::string& path);

// Applies one command-line "key=value" token; "config=FILE" loads the file
// into cfg at that point.
void apply_assignment(RunConfig& cfg, const std::string& token);

// "lo:hi:steps" inclusive linear range.
std::vector<double> parse_range(const std::string& text);

// Comma-separated "re:im:mult" triples.
Divisor parse_divisor(const std::string& text);

}  // namespace maxgraph
