#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "projlab/cli.hpp"

namespace projlab::cli {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& key, const std::string& v, int line) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
    fail(line, "value of '" + key + "' is not a finite number: '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v, int line) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(line, "value of '" + key + "' is not an integer: '" + v + "'");
  return x;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, std::pair<std::string, int>> kv;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "missing key");
    if (!value.empty() && value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') fail(line_no, "unterminated quoted value");
      value = value.substr(1, value.size() - 2);
    }
    if (kv.count(key)) fail(line_no, "duplicate key '" + key + "'");
    kv[key] = {std::string(value), line_no};
    if (end == text.size()) break;
  }

  std::optional<double> x0, x1, y0, y1, bx, by;
  for (const auto& [key, entry] : kv) {
    const auto& [v, line] = entry;
    if (key == "catalog") cfg.catalog = v;
    else if (key == "b") cfg.b = v;
    else if (key == "p") cfg.p = v;
    else if (key == "b0") cfg.params.b0 = to_double(key, v, line);
    else if (key == "p0") cfg.params.p0 = to_double(key, v, line);
    else if (key == "c") cfg.params.c = to_double(key, v, line);
    else if (key == "d") cfg.params.d = to_double(key, v, line);
    else if (key == "x0") x0 = to_double(key, v, line);
    else if (key == "x1") x1 = to_double(key, v, line);
    else if (key == "y0") y0 = to_double(key, v, line);
    else if (key == "y1") y1 = to_double(key, v, line);
    else if (key == "h") cfg.h = to_double(key, v, line);
    else if (key == "base_x") bx = to_double(key, v, line);
    else if (key == "base_y") by = to_double(key, v, line);
    else if (key == "tol") cfg.tol = to_double(key, v, line);
    else if (key == "lambda_samples") cfg.lambda_samples = to_int(key, v, line);
    else if (key == "out") cfg.out = v;
    else if (key == "expected_class") {
      try {
        cfg.expected_class = canonical::parse_surface_class(v);
      } catch (const std::invalid_argument& e) {
        fail(line, e.what());
      }
    } else if (key == "coincidence") {
      if (v != "true" && v != "false") fail(line, "coincidence must be true or false");
      cfg.expected_coincidence = v == "true";
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }

  const int n_domain = x0.has_value() + x1.has_value() + y0.has_value() + y1.has_value();
  if (n_domain == 4) {
    cfg.domain = Rect{*x0, *x1, *y0, *y1};
  } else if (n_domain > 0) {
    if (!cfg.catalog) throw ConfigError("config: domain needs all of x0, x1, y0, y1");
    Rect r;
    try {
      r = canonical::catalog(*cfg.catalog, cfg.params).domain;
    } catch (const canonical::UnknownCatalogEntry& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.domain = Rect{x0.value_or(r.x0), x1.value_or(r.x1), y0.value_or(r.y0), y1.value_or(r.y1)};
  }
  if (bx.has_value() != by.has_value()) throw ConfigError("config: base point needs both base_x and base_y");
  if (bx) cfg.base = cplx(*bx, *by);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

canonical::SurfaceData make_surface(const RunConfig& cfg) {
  canonical::SurfaceData sd;
  if (cfg.catalog) {
    if (cfg.b || cfg.p) throw ConfigError("config: give either catalog or b and p, not both");
    try {
      sd = canonical::catalog(*cfg.catalog, cfg.params);
    } catch (const canonical::UnknownCatalogEntry& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  } else {
    if (!cfg.b) throw ConfigError("config: missing b expression");
    if (!cfg.p) throw ConfigError("config: missing p expression");
    if (!cfg.domain) throw ConfigError("config: missing domain (x0, x1, y0, y1)");
    try {
      sd.b = expr::CoeffField(expr::parse(*cfg.b));
      sd.p = expr::CoeffField(expr::parse(*cfg.p));
    } catch (const expr::ParseError& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    sd.name = "custom";
    sd.domain = *cfg.domain;
  }
  if (cfg.domain) sd.domain = *cfg.domain;
  sd.h = cfg.h;
  const Rect& r = sd.domain;
  if (!(cfg.h > 0.0)) throw ConfigError("config: h must be positive");
  if (!(r.x1 > r.x0) || !(r.y1 > r.y0)) throw ConfigError("config: degenerate domain rectangle");
  const auto inside = [&](cplx z) { return z.real() >= r.x0 && z.real() <= r.x1 && z.imag() >= r.y0 && z.imag() <= r.y1; };
  if (cfg.base) {
    sd.base = *cfg.base;
  } else if (!cfg.catalog || !inside(sd.base)) {
    sd.base = inside(cplx(0.0, 0.0)) ? cplx(0.0, 0.0) : cplx(0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1));
  }
  if (!inside(sd.base)) throw ConfigError("config: base point lies outside the domain");
  if (cfg.lambda_samples < 0) throw ConfigError("config: lambda_samples must be nonnegative");
  if (!(cfg.tol > 0.0)) throw ConfigError("config: tol must be positive");
  return sd;
}

std::string canonical_form(const RunConfig& cfg) {
  const canonical::SurfaceData sd = make_surface(cfg);
  std::ostringstream s;
  if (cfg.catalog) {
    s << "catalog = " << *cfg.catalog << '\n';
    s << "b0 = " << fmt(cfg.params.b0) << "\np0 = " << fmt(cfg.params.p0) << "\nc = " << fmt(cfg.params.c)
      << "\nd = " << fmt(cfg.params.d) << '\n';
  } else {
    s << "b = \"" << *cfg.b << "\"\np = \"" << *cfg.p << "\"\n";
  }
  s << "x0 = " << fmt(sd.domain.x0) << "\nx1 = " << fmt(sd.domain.x1) << "\ny0 = " << fmt(sd.domain.y0)
    << "\ny1 = " << fmt(sd.domain.y1) << '\n';
  s << "h = " << fmt(sd.h) << "\nbase_x = " << fmt(sd.base.real()) << "\nbase_y = " << fmt(sd.base.imag()) << '\n';
  s << "tol = " << fmt(cfg.tol) << "\nlambda_samples = " << cfg.lambda_samples << '\n';
  return s.str();
}

}  // namespace projlab::cli
