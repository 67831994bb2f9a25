#include "btlab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace btlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt(v[i]);
  }
  return s;
}

std::string fmt_list(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

RunConfig default_run_config() { return RunConfig{}; }

RunConfig parse_run_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "experiment") cfg.experiment = unquote(val);
      else if (key == "operator") cfg.operator_kind = unquote(val);
      else if (key == "potential") cfg.potential = unquote(val);
      else if (key == "potential_params") cfg.potential_params = parse_number_list(val);
      else if (key == "alpha") cfg.alpha = unquote(val);
      else if (key == "alpha_params") cfg.alpha_params = parse_number_list(val);
      else if (key == "n_list") {
        cfg.n_list.clear();
        for (const double d : parse_number_list(val)) cfg.n_list.push_back(static_cast<int>(d));
      } else if (key == "nx") cfg.nx = std::stoi(val);
      else if (key == "ny") cfg.ny = std::stoi(val);
      else if (key == "x_extent") cfg.x_extent = std::stod(val);
      else if (key == "y_extent") cfg.y_extent = std::stod(val);
      else if (key == "x_min_spacing_over_sqrt_h") cfg.x_min_spacing_over_sqrt_h = std::stod(val);
      else if (key == "y_min_spacing") cfg.y_min_spacing = std::stod(val);
      else if (key == "k") cfg.k = std::stoi(val);
      else if (key == "tol") cfg.tol = std::stod(val);
      else if (key == "mu") cfg.mu = std::stod(val);
      else if (key == "quasimode_start") cfg.quasimode_start = (val == "true" || val == "1");
      else if (key == "outdir") cfg.outdir = unquote(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else throw std::invalid_argument("unknown key: " + key);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_run_config(ss.str());
}

std::string serialize_run_config(const RunConfig& c) {
  std::ostringstream os;
  os << "experiment = \"" << c.experiment << "\"\n";
  os << "operator = \"" << c.operator_kind << "\"\n";
  os << "potential = \"" << c.potential << "\"\n";
  if (!c.potential_params.empty()) os << "potential_params = " << fmt_list(c.potential_params) << "\n";
  os << "alpha = \"" << c.alpha << "\"\n";
  if (!c.alpha_params.empty()) os << "alpha_params = " << fmt_list(c.alpha_params) << "\n";
  os << "n_list = " << fmt_list(c.n_list) << "\n";
  os << "nx = " << c.nx << "\n";
  os << "ny = " << c.ny << "\n";
  os << "x_extent = " << fmt(c.x_extent) << "\n";
  os << "y_extent = " << fmt(c.y_extent) << "\n";
  os << "x_min_spacing_over_sqrt_h = " << fmt(c.x_min_spacing_over_sqrt_h) << "\n";
  os << "y_min_spacing = " << fmt(c.y_min_spacing) << "\n";
  os << "k = " << c.k << "\n";
  os << "tol = " << fmt(c.tol) << "\n";
  os << "mu = " << fmt(c.mu) << "\n";
  os << "quasimode_start = " << (c.quasimode_start ? "true" : "false") << "\n";
  os << "outdir = \"" << c.outdir << "\"\n";
  os << "seed = " << c.seed << "\n";
  return os.str();
}

ModelConfig to_model_config(const RunConfig& rc, int n) {
  ModelConfig cfg;
  cfg.h = std::pow(2.0, -n);
  if (rc.experiment == "figure2") {
    cfg.potential = Potential::quadratic();
    cfg.alpha = AlphaProfile::dip_with_floor(0.1);
  } else if (rc.experiment == "separable") {
    cfg.potential = Potential::quadratic();
    cfg.alpha = AlphaProfile::constant();
  } else if (rc.experiment == "cubic") {
    cfg.potential = Potential::quadratic_cubic(0.2);
    cfg.alpha = AlphaProfile::constant();
  } else if (rc.experiment == "sharpness") {
    cfg.potential = Potential::plateau();
    cfg.alpha = AlphaProfile::constant();
  } else {
    cfg.potential = Potential::from_name(rc.potential, rc.potential_params);
    cfg.alpha = AlphaProfile::from_name(rc.alpha, rc.alpha_params);
  }
  cfg.x_extent = rc.x_extent;
  cfg.y_extent = rc.y_extent;
  cfg.grid.nx = rc.nx;
  cfg.grid.ny = rc.ny;
  cfg.grid.x_min_spacing_over_sqrt_h = rc.x_min_spacing_over_sqrt_h;
  cfg.grid.y_min_spacing = rc.y_min_spacing;
  return cfg;
}

}  // namespace btlab
