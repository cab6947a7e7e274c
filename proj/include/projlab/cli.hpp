#pragma once

// Command-line front end. The config file is flat "key = value" text;
// values may be double-quoted (expressions must be). Lines starting with
// '#' are comments.
//
//   catalog        const_demoulin | liouville_demoulin | coincidence_minimal | nonminimal_linear
//   b, p           expressions in z, zb (required when no catalog is given)
//   b0, p0, c, d   catalog parameters
//   x0, x1, y0, y1 domain rectangle (defaults from the catalog)
//   h              grid step (default 0.05)
//   base_x, base_y base point (default: catalog base, else 0 if inside, else center)
//   tol            tolerance (default 1e-8)
//   lambda_samples random unit-circle samples added to the 12th roots (default 3)
//   out            output directory (default ".")
//   expected_class Demoulin | ProjectiveMinimal | Generic; overrides the
//                  computed class in loop-check
//   coincidence    true | false; overrides the coincidence flag in loop-check

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "projlab/canonical.hpp"

namespace projlab::cli {

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::string> catalog;
  std::optional<std::string> b, p;
  canonical::CatalogParams params;
  std::optional<Rect> domain;
  double h = 0.05;
  std::optional<cplx> base;
  double tol = 1e-8;
  int lambda_samples = 3;
  std::string out = ".";
  std::optional<canonical::SurfaceClass> expected_class;
  std::optional<bool> expected_coincidence;
};

/// Throws ConfigError with the line number on malformed input.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Resolves the surface (catalog or expressions), domain and base point and
/// checks h > 0, a nondegenerate rectangle and a base point inside it.
/// Throws ConfigError (expression syntax errors included).
canonical::SurfaceData make_surface(const RunConfig& cfg);

/// Sorted key = value rendering of the resolved config; the basis of the
/// mesh header hash.
std::string canonical_form(const RunConfig& cfg);
std::uint64_t fnv1a64(std::string_view data);

/// %.17g
std::string fmt(double v);

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_gauss(const RunConfig& cfg, const std::string& which, std::ostream& out, std::ostream& err);
int cmd_loop_check(const RunConfig& cfg, const std::string& split, std::ostream& out, std::ostream& err);
int cmd_export_mesh(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full argument handling: projlab <command> <config> [--tol x] [--step h]
/// [--lambda-samples n] [--out dir] [--which g1|g2] [--split first-order|conformal].
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace projlab::cli
