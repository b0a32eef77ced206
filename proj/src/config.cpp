#include "swe/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "swe/errors.hpp"

namespace swe {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ParseError("config: bad boolean for " + key + ": '" + v + "'");
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("config: bad number for " + key + ": '" + v + "'");
  }
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const long d = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("config: bad integer for " + key + ": '" + v + "'");
  }
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& v, const std::string& key, F&& one) {
  std::string cleaned = v;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream is(cleaned);
  std::vector<T> out;
  std::string tok;
  while (is >> tok) out.push_back(one(tok, key));
  if (out.empty()) throw ParseError("config: empty list for " + key);
  return out;
}

} // namespace

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);

  RunConfig cfg;
  std::string section = "run";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ParseError("config: malformed section header at line " + std::to_string(lineno));
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    const std::string qualified = section + "." + key;

    if (qualified == "run.scenario") cfg.scenario = val;
    else if (qualified == "run.N") cfg.N = static_cast<int>(parse_long(val, qualified));
    else if (qualified == "run.mesh") cfg.mesh_path = val;
    else if (qualified == "run.order") cfg.order = static_cast<int>(parse_long(val, qualified));
    else if (qualified == "run.dt") cfg.dt = parse_double(val, qualified);
    else if (qualified == "run.T") cfg.T = parse_double(val, qualified);
    else if (qualified == "run.c0") cfg.c0 = parse_double(val, qualified);
    else if (qualified == "run.snapshot_every")
      cfg.snapshot_every = static_cast<int>(parse_long(val, qualified));
    else if (qualified == "run.out_dir") cfg.out_dir = val;
    else if (qualified == "run.deterministic") cfg.deterministic = parse_bool(val, qualified);
    else if (qualified == "run.seed")
      cfg.seed = static_cast<std::uint64_t>(parse_long(val, qualified));
    else if (qualified == "run.perturbation") cfg.perturbation = parse_double(val, qualified);
    else if (qualified == "run.tbc_segments") {
      if (val == "all") cfg.tbc_segments.reset();
      else if (val == "none") cfg.tbc_segments = std::set<int>{};
      else {
        const auto v = parse_list<int>(val, qualified, [](const std::string& t, const std::string& k) {
          return static_cast<int>(parse_long(t, k));
        });
        cfg.tbc_segments = std::set<int>(v.begin(), v.end());
      }
    } else if (qualified == "custom.amplitude") cfg.custom_amplitude = parse_double(val, qualified);
    else if (qualified == "custom.sharpness") cfg.custom_sharpness = parse_double(val, qualified);
    else if (qualified == "custom.center_x") cfg.custom_center_x = parse_double(val, qualified);
    else if (qualified == "custom.center_y") cfg.custom_center_y = parse_double(val, qualified);
    else if (qualified == "params.rho") cfg.rho = parse_double(val, qualified);
    else if (qualified == "params.mu") cfg.mu = parse_double(val, qualified);
    else if (qualified == "params.g") cfg.g = parse_double(val, qualified);
    else if (qualified == "params.zeta") cfg.zeta = parse_double(val, qualified);
    else if (qualified == "params.solver_tol") cfg.solver_tol = parse_double(val, qualified);
    else if (qualified == "eoc.n_list")
      cfg.eoc_n_list = parse_list<int>(val, qualified, [](const std::string& t, const std::string& k) {
        return static_cast<int>(parse_long(t, k));
      });
    else if (qualified == "eoc.orders")
      cfg.eoc_orders = parse_list<int>(val, qualified, [](const std::string& t, const std::string& k) {
        return static_cast<int>(parse_long(t, k));
      });
    else if (qualified == "sweep.c0_values")
      cfg.c0_values = parse_list<double>(val, qualified, [](const std::string& t, const std::string& k) {
        return parse_double(t, k);
      });
    else
      throw ParseError("config: unknown key '" + qualified + "' at line " +
                       std::to_string(lineno));
  }
  return cfg;
}

} // namespace swe
