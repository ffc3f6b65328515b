#include "surfspline/config.hpp"

#include <algorithm>
#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "surfspline/core.hpp"
#include "surfspline/harness.hpp"

namespace surfspline {

namespace {

double parse_number(std::string s) {
  boost::algorithm::trim(s);
  boost::algorithm::to_lower(s);
  if (s == "inf" || s == "infinity") return INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, s, boost::algorithm::is_any_of(", "), boost::algorithm::token_compress_on);
  std::vector<double> out;
  for (const auto& p : parts)
    if (!boost::algorithm::trim_copy(p).empty()) out.push_back(parse_number(p));
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (m < 1) throw ConfigError("m must be at least 1");
  if (h.size() < 3) throw ConfigError("the h ladder needs at least 3 rungs for a rate fit");
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0)) throw ConfigError("h values must be positive");
    if (i > 0 && !(h[i] < h[i - 1])) throw ConfigError("the h ladder must be strictly decreasing");
  }
  if (norms.empty()) throw ConfigError("no norms requested");
  for (double p : norms)
    if (!(p >= 1.0)) throw ConfigError("norm exponents must be >= 1");
  if (nu < 0 || (nu > 0 && nu < 1)) throw ConfigError("oversampling nu must be 0 (off) or >= 1");
  if (n_boundary < 16 || probe_grid < 8 || norm_level < 8) throw ConfigError("numerics settings too small");
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream is(text);
  try {
    boost::property_tree::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  ExperimentConfig c;
  auto get = [&](const std::string& key) { return tree.get_optional<std::string>(key); };
  if (auto v = get("experiment.name")) c.name = boost::algorithm::trim_copy(*v);
  if (auto v = get("experiment.curve")) c.curve = boost::algorithm::trim_copy(*v);
  if (auto v = get("experiment.m")) c.m = static_cast<int>(parse_number(*v));
  if (auto v = get("experiment.target")) c.target = boost::algorithm::trim_copy(*v);
  if (auto v = get("experiment.h")) c.h = parse_list(*v);
  if (auto v = get("experiment.norms")) c.norms = parse_list(*v);
  if (auto v = get("experiment.seed")) c.seed = static_cast<std::uint64_t>(parse_number(*v));
  if (auto v = get("experiment.output")) c.output = boost::algorithm::trim_copy(*v);
  if (auto v = get("experiment.oversampling")) {
    const std::string s = boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(*v));
    if (s == "none" || s == "off" || s == "0") {
      c.nu = 0.0;
    } else if (s == "critical") {
      // The critical exponent for the strongest norm requested.
      const double p = *std::max_element(c.norms.begin(), c.norms.end());
      c.nu = oversampling_budget(2, c.m, p).nu;
    } else {
      c.nu = parse_number(s);
    }
  }
  if (auto v = get("numerics.n_boundary")) c.n_boundary = static_cast<int>(parse_number(*v));
  if (auto v = get("numerics.probe_grid")) c.probe_grid = static_cast<int>(parse_number(*v));
  if (auto v = get("numerics.norm_level")) c.norm_level = static_cast<int>(parse_number(*v));
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

}  // namespace surfspline
