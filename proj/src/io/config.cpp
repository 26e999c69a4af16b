#include <charconv>
#include <fstream>
#include <sstream>

#include "reebstrip/error.hpp"
#include "reebstrip/io.hpp"

namespace reebstrip {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v, int line) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError("'" + key + "' expects a number, got '" + v + "'", line);
  return out;
}

long long to_int(const std::string& key, const std::string& v, int line) {
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || out < 0)
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + v + "'", line);
  return out;
}

}  // namespace

void set_config_value(JobConfig& cfg, const std::string& key, const std::string& value, int line) {
  Window& w = cfg.window;
  Tolerances& t = w.tol;
  if (key == "c1") cfg.c1 = value;
  else if (key == "c2") cfg.c2 = value;
  else if (key == "x_lo") w.x_lo = to_double(key, value, line);
  else if (key == "x_hi") w.x_hi = to_double(key, value, line);
  else if (key == "value_lo") w.value_lo = to_double(key, value, line);
  else if (key == "value_hi") w.value_hi = to_double(key, value, line);
  else if (key.rfind("tail.", 0) == 0) {
    Owner o;
    Side s;
    if (key == "tail.c1.minus") o = Owner::C1, s = Side::Minus;
    else if (key == "tail.c1.plus") o = Owner::C1, s = Side::Plus;
    else if (key == "tail.c2.minus") o = Owner::C2, s = Side::Minus;
    else if (key == "tail.c2.plus") o = Owner::C2, s = Side::Plus;
    else throw ConfigError("unknown key '" + key + "'", line);
    try {
      cfg.tails.get(o, s) = Tail::parse(value);
    } catch (const Error& e) {
      throw ConfigError(std::string("'") + key + "': " + e.what(), line);
    }
  } else if (key == "tau_x") t.tau_x = to_double(key, value, line);
  else if (key == "tau_flat") t.tau_flat = to_double(key, value, line);
  else if (key == "tau_val") t.tau_val = to_double(key, value, line);
  else if (key == "tau_q") t.tau_q = to_double(key, value, line);
  else if (key == "tau_rank") t.tau_rank = to_double(key, value, line);
  else if (key == "n_acc") t.n_acc = static_cast<int>(to_int(key, value, line));
  else if (key == "m") cfg.m = static_cast<int>(to_int(key, value, line));
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, value, line));
  else if (key == "probes") cfg.probes = static_cast<std::size_t>(to_int(key, value, line));
  else if (key == "K") cfg.K = static_cast<int>(to_int(key, value, line));
  else if (key == "nx") cfg.nx = static_cast<int>(to_int(key, value, line));
  else if (key == "band") cfg.band = to_double(key, value, line);
  else throw ConfigError("unknown key '" + key + "'", line);
}

JobConfig parse_config(const std::string& text, JobConfig cfg) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key", line);
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line);
    set_config_value(cfg, key, value, line);
  }
  return cfg;
}

JobConfig load_config(const std::string& path, JobConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'", 0);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace reebstrip
