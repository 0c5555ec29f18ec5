#include "gaborcert/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gaborcert/error.hpp"
#include "gaborcert/randwin.hpp"

namespace gaborcert {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(d))
    throw ConfigError("field '" + key + "': expected a real number, got '" + v + "'");
  return d;
}

long long to_integer(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const long long i = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE)
    throw ConfigError("field '" + key + "': expected an integer, got '" + v + "'");
  return i;
}

int to_int(const std::string& key, const std::string& v, int min) {
  const long long i = to_integer(key, v);
  if (i < min || i > 1'000'000'000)
    throw ConfigError("field '" + key + "': must be >= " + std::to_string(min));
  return static_cast<int>(i);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const unsigned long long u = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || t[0] == '-' || *end != '\0' || errno == ERANGE)
    throw ConfigError("field '" + key + "': expected a nonnegative integer, got '" + v + "'");
  return u;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
  return out;
}

std::string list_str(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

double positive(const std::string& key, double d) {
  if (!(d > 0.0)) throw ConfigError("field '" + key + "': must be positive");
  return d;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void set_config_field(RunConfig& c, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "window") {
    if (v.empty()) throw ConfigError("field 'window': empty descriptor");
    c.window = v;
  } else if (key == "alpha") {
    c.alpha = positive(key, to_double(key, v));
  } else if (key == "beta") {
    c.beta = positive(key, to_double(key, v));
  } else if (key == "alpha_grid") {
    c.alpha_grid = to_list(key, v);
  } else if (key == "beta_grid") {
    c.beta_grid = to_list(key, v);
  } else if (key == "samples_per_gap") {
    c.samples_per_gap = to_int(key, v, 1);
  } else if (key == "delta_floor") {
    c.delta_floor = positive(key, to_double(key, v));
  } else if (key == "extent") {
    c.extent = to_int(key, v, 0);
  } else if (key == "hop_bound") {
    c.hop_bound = to_int(key, v, 1);
  } else if (key == "core_grid") {
    c.core_grid = to_int(key, v, 2);
  } else if (key == "sup_grid") {
    c.sup_grid = to_int(key, v, 2);
  } else if (key == "x_grid") {
    c.x_grid = to_int(key, v, 8);
  } else if (key == "policy") {
    if (v != "full" && v != "any") throw ConfigError("field 'policy': expected 'full' or 'any'");
    c.policy = v;
  } else if (key == "seed") {
    c.seed = to_u64(key, v);
  } else if (key == "dt") {
    c.dt = positive(key, to_double(key, v));
  } else if (key == "component_var") {
    c.component_var = to_double(key, v);
    if (c.component_var < 0.0) throw ConfigError("field 'component_var': must be >= 0");
  } else if (key == "quadrature_n") {
    c.quadrature_n = to_int(key, v, 2);
  } else if (key == "xi_max") {
    c.xi_max = positive(key, to_double(key, v));
  } else if (key == "n_xi") {
    c.n_xi = to_int(key, v, 8);
  } else if (key == "workers") {
    c.workers = to_int(key, v, 1);
  } else if (key == "out") {
    c.out = v;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& is, RunConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    try {
      set_config_field(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return parse_config(in, std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream os;
  os << "window = " << c.window << "\n"
     << "alpha = " << format_double(c.alpha) << "\n"
     << "beta = " << format_double(c.beta) << "\n"
     << "alpha_grid = " << list_str(c.alpha_grid) << "\n"
     << "beta_grid = " << list_str(c.beta_grid) << "\n"
     << "samples_per_gap = " << c.samples_per_gap << "\n"
     << "delta_floor = " << format_double(c.delta_floor) << "\n"
     << "extent = " << c.extent << "\n"
     << "hop_bound = " << c.hop_bound << "\n"
     << "core_grid = " << c.core_grid << "\n"
     << "sup_grid = " << c.sup_grid << "\n"
     << "x_grid = " << c.x_grid << "\n"
     << "policy = " << c.policy << "\n"
     << "seed = " << c.seed << "\n"
     << "dt = " << format_double(c.dt) << "\n"
     << "component_var = " << format_double(c.component_var) << "\n"
     << "quadrature_n = " << c.quadrature_n << "\n"
     << "xi_max = " << format_double(c.xi_max) << "\n"
     << "n_xi = " << c.n_xi << "\n"
     << "workers = " << c.workers << "\n"
     << "out = " << c.out << "\n";
  return os.str();
}

Window make_window(const std::string& descriptor, const RunConfig& cfg) {
  std::vector<std::string> parts;
  std::stringstream ss(descriptor);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (parts.empty() || parts[0].empty()) throw ConfigError("empty window descriptor");
  const std::string& kind = parts[0];
  auto bad = [&]() {
    return ConfigError("malformed window descriptor '" + descriptor + "'");
  };
  auto interval = [&](auto make) {
    if (parts.size() == 1) return make(0.0, 1.0);
    if (parts.size() != 3) throw bad();
    const double a = to_double("window", parts[1]), b = to_double("window", parts[2]);
    if (!(a < b)) throw ConfigError("window descriptor '" + descriptor + "': need a < b");
    return make(a, b);
  };

  if (kind == "bump" && parts.size() == 1) return Window::bump();
  if (kind == "oddbump" && parts.size() == 1) return Window::odd_bump();
  if (kind == "gevrey" && parts.size() == 2) {
    const int n = to_int("window", parts[1], 1);
    return Window::gevrey(n);
  }
  if (kind == "char") return interval([](double a, double b) { return Window::characteristic(a, b); });
  if (kind == "poly") return interval([](double a, double b) { return Window::poly_bump(a, b); });
  if (kind == "csv") {
    const std::string path = descriptor.substr(descriptor.find(':') + 1);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open window file '" + path + "'");
    return read_sampled_csv(in);
  }
  if (kind == "random" && parts.size() <= 2) {
    const std::uint64_t seed = parts.size() == 2 ? to_u64("window", parts[1]) : cfg.seed;
    const BrownianPath path = sample_path(seed, cfg.dt, 1.0, cfg.component_var);
    return normalized(synthesize_window(path, KernelConfig{cfg.quadrature_n}));
  }
  throw bad();
}

}  // namespace gaborcert
