#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

#include "CLI11.hpp"
#include "projlab/cli.hpp"
#include "projlab/loop.hpp"
#include "projlab/quadric.hpp"

namespace projlab::cli {

namespace {

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out);
  const auto path = std::filesystem::path(cfg.out) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

struct Prepared {
  canonical::SurfaceData sd;
  canonical::DerivedData dd;
};

// Builds and validates the surface; invalid data is a validation failure,
// not a config error.
Prepared prepare(const RunConfig& cfg) {
  Prepared p{make_surface(cfg), {}};
  canonical::validate(p.sd);
  p.dd = canonical::derive_kP(p.sd);
  return p;
}

}  // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const canonical::SurfaceData sd = make_surface(cfg);
  try {
    canonical::validate(sd);
  } catch (const canonical::InvalidSurfaceError& e) {
    err << "invalid surface data: " << e.what() << '\n';
    return kFailure;
  }
  const canonical::DerivedData dd = canonical::derive_kP(sd);
  const canonical::ResidualReport report = canonical::full_report(sd, dd);

  auto csv = open_output(cfg, "residuals.csv");
  csv << "name,sup_norm,argmax_x,argmax_y\n";
  bool ok = true;
  for (const auto& e : report.entries) {
    csv << e.name << ',' << fmt(e.sup) << ',' << fmt(e.argmax_x) << ',' << fmt(e.argmax_y) << '\n';
    const bool validity = e.name == "comp1" || e.name == "comp2" || e.name == "canon1" || e.name == "canon2";
    const bool pass = !validity || e.sup <= cfg.tol;
    ok = ok && pass;
    out << e.name << ' ' << fmt(e.sup) << (validity ? (pass ? " ok" : " FAIL") : "") << '\n';
  }
  out << (ok ? "valid surface" : "not a valid surface") << '\n';
  return ok ? kOk : kFailure;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const canonical::SurfaceData sd = make_surface(cfg);
  canonical::Classification c;
  try {
    canonical::validate(sd);
    c = canonical::classify(sd, cfg.tol);
  } catch (const canonical::InvalidSurfaceError& e) {
    err << "not a surface: " << e.what() << '\n';
    return kFailure;
  }
  out << "class: " << canonical::to_string(c.cls) << '\n';
  out << "coincidence: " << (c.coincidence ? "true" : "false") << '\n';
  out << "zcr_P_zb: " << fmt(c.zcr.P_zb) << '\n';
  out << "zcr_k_eq: " << fmt(c.zcr.k_eq) << '\n';
  out << "zcr_projmin: " << fmt(c.zcr.projmin) << '\n';
  out << "sup_P: " << fmt(c.sup_P) << '\n';
  out << "sup_minimality: " << fmt(c.sup_minimality) << '\n';
  return kOk;
}

int cmd_gauss(const RunConfig& cfg, const std::string& which_name, std::ostream& out, std::ostream& err) {
  quadric::GaussMap which;
  try {
    which = quadric::parse_gauss_map(which_name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Prepared p;
  frame::FrameField ff;
  try {
    p = prepare(cfg);
    ff = frame::integrate_frame(p.sd, p.dd);
  } catch (const std::runtime_error& e) {
    err << "cannot build the frame: " << e.what() << '\n';
    return kFailure;
  }
  const frame::RealFrameField rf = frame::realify(ff);
  const std::vector<la::Mat4R> qs = quadric::gauss_map(which, rf);
  const Grid& grid = ff.grid;
  const std::string tag = quadric::to_string(which);

  auto qcsv = open_output(cfg, "quadrics_" + tag + ".csv");
  qcsv << "i,j,x,y";
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) qcsv << ",q" << r << c;
  qcsv << '\n';
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      qcsv << i << ',' << j << ',' << fmt(grid.x(i)) << ',' << fmt(grid.y(j));
      const la::Mat4R& q = qs[grid.index(i, j)];
      for (double v : q.a) qcsv << ',' << fmt(v);
      qcsv << '\n';
    }

  const auto rows = quadric::conformality_report(which, p.sd, p.dd, ff);
  auto ccsv = open_output(cfg, "conformality_" + tag + ".csv");
  ccsv << "i,j,x,y,fd_value_zz_re,fd_value_zz_im,closed_form_zz_re,closed_form_zz_im,"
          "fd_value_zzb_re,fd_value_zzb_im,closed_form_zzb_re,closed_form_zzb_im,derivative_error\n";
  double err_zz = 0.0, err_zzb = 0.0;
  for (const auto& r : rows) {
    ccsv << r.node.i << ',' << r.node.j << ',' << fmt(r.x) << ',' << fmt(r.y) << ',' << fmt(r.fd_zz.real()) << ','
         << fmt(r.fd_zz.imag()) << ',' << fmt(r.closed_form_zz.real()) << ',' << fmt(r.closed_form_zz.imag()) << ','
         << fmt(r.fd_zzb.real()) << ',' << fmt(r.fd_zzb.imag()) << ',' << fmt(r.closed_form_zzb.real()) << ','
         << fmt(r.closed_form_zzb.imag()) << ',' << fmt(r.derivative_error) << '\n';
    err_zz = std::max(err_zz, std::abs(r.fd_zz - r.closed_form_zz));
    err_zzb = std::max(err_zzb, std::abs(r.fd_zzb - r.closed_form_zzb));
  }
  const quadric::QuadricGridCheck check =
      quadric::check_quadric_grid(qs, which == quadric::GaussMap::G1 ? la::constants::J1_hat() : la::constants::J2_hat());
  out << tag << " nodes: " << qs.size() << '\n';
  out << "sign_pattern: " << (check.sign_pattern_ok ? "(3,1)" : "VIOLATED") << '\n';
  out << "max_det_drift: " << fmt(check.max_det_drift) << '\n';
  out << "max_fd_error_zz: " << fmt(err_zz) << '\n';
  out << "max_fd_error_zzb: " << fmt(err_zzb) << '\n';
  return kOk;
}

int cmd_loop_check(const RunConfig& cfg, const std::string& split_name, std::ostream& out, std::ostream& err) {
  loop::SplitType split;
  try {
    split = loop::parse_split(split_name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Prepared p;
  canonical::Classification cls;
  try {
    p = prepare(cfg);
    cls = canonical::classify(p.sd, cfg.tol);
  } catch (const canonical::InvalidSurfaceError& e) {
    err << "not a surface: " << e.what() << '\n';
    return kFailure;
  }
  const canonical::SurfaceClass expected = cfg.expected_class.value_or(cls.cls);
  const bool coincidence = cfg.expected_coincidence.value_or(cls.coincidence);
  const bool predicted_flat = split == loop::SplitType::FirstOrder
                                  ? expected == canonical::SurfaceClass::Demoulin || coincidence
                                  : expected != canonical::SurfaceClass::Generic;

  const auto samples = loop::flatness_residual(p.sd, p.dd, split, loop::default_lambda_samples(cfg.lambda_samples));
  auto csv = open_output(cfg, "loop_" + std::string(split == loop::SplitType::FirstOrder ? "first_order" : "conformal") + ".csv");
  csv << "lambda_re,lambda_im,flatness_sup\n";
  double max_res = 0.0;
  for (const auto& s : samples) {
    csv << fmt(s.lambda.real()) << ',' << fmt(s.lambda.imag()) << ',' << fmt(s.sup) << '\n';
    max_res = std::max(max_res, s.sup);
  }
  out << "split: " << loop::to_string(split) << '\n';
  out << "class: " << canonical::to_string(expected) << (coincidence ? " (coincidence)" : "") << '\n';
  out << "lambda_samples: " << samples.size() << '\n';
  out << "max_flatness: " << fmt(max_res) << '\n';

  if (split == loop::SplitType::FirstOrder) {
    const auto t = loop::twist_residual(p.sd, p.dd, std::polar(1.0, std::numbers::pi / 5.0));
    out << "twist_sigma: " << fmt(t.sigma) << '\n';
    out << "twist_kappa: " << fmt(t.kappa) << '\n';
    out << "twist_tau1: " << fmt(t.tau1) << '\n';
    out << "primitivity: " << fmt(loop::primitivity_residual(p.sd, p.dd)) << '\n';
  }

  constexpr double kNonFlat = 0.01;
  if (predicted_flat && max_res <= cfg.tol) {
    out << "status: flat\n";
    return kOk;
  }
  if (!predicted_flat && max_res >= kNonFlat) {
    out << "status: correctly non-flat\n";
    return kOk;
  }
  out << "status: INCONSISTENT (" << (predicted_flat ? "predicted flat" : "predicted non-flat") << ")\n";
  return kFailure;
}

int cmd_export_mesh(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Prepared p;
  frame::FrameField ff;
  try {
    p = prepare(cfg);
    ff = frame::integrate_frame(p.sd, p.dd);
  } catch (const std::runtime_error& e) {
    err << "cannot build the frame: " << e.what() << '\n';
    return kFailure;
  }
  const frame::SurfaceLift lift = frame::surface_lift(frame::realify(ff));
  const Grid& grid = ff.grid;

  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_form(cfg))));
  auto obj = open_output(cfg, "mesh.obj");
  obj << "# projlab surface mesh\n# config-hash fnv1a64:" << hash << '\n';
  obj << "# grid " << grid.nx() << 'x' << grid.ny() << " h " << fmt(grid.h()) << '\n';

  std::vector<long> vertex(grid.size(), 0);
  long nv = 0;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    if (!lift.chart_valid(n)) continue;
    const la::Vec4R& q = *lift.point[n];
    obj << "v " << fmt(q[0]) << ' ' << fmt(q[1]) << ' ' << fmt(q[2]) << '\n';
    vertex[n] = ++nv;
  }
  long nf = 0;
  for (int j = 0; j + 1 < grid.ny(); ++j)
    for (int i = 0; i + 1 < grid.nx(); ++i) {
      const long a = vertex[grid.index(i, j)], b = vertex[grid.index(i + 1, j)];
      const long c = vertex[grid.index(i + 1, j + 1)], d = vertex[grid.index(i, j + 1)];
      if (a && b && c && d) {
        obj << "f " << a << ' ' << b << ' ' << c << ' ' << d << '\n';
        ++nf;
      }
    }
  out << "vertices: " << nv << "\nfaces: " << nf << '\n';
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"projlab: Wilczynski frames, Gauss maps and zero-curvature checks for surfaces in RP^3"};
  app.require_subcommand(1);

  std::string config_path, which = "g1", split = "first-order", out_dir;
  std::optional<double> tol, step;
  std::optional<int> lambda_samples;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "config file")->required();
    sub->add_option("--tol", tol, "tolerance");
    sub->add_option("--step", step, "grid step h");
    sub->add_option("--lambda-samples", lambda_samples, "random unit-circle samples besides the 12th roots");
    sub->add_option("--out", out_dir, "output directory");
  };
  CLI::App* validate = app.add_subcommand("validate", "surface-validity residuals");
  CLI::App* classify = app.add_subcommand("classify", "Demoulin / ProjectiveMinimal / Generic");
  CLI::App* gauss = app.add_subcommand("gauss", "Gauss map quadrics and conformality report");
  CLI::App* loop_check = app.add_subcommand("loop-check", "flatness of the spectral family");
  CLI::App* mesh = app.add_subcommand("export-mesh", "OBJ mesh of the surface");
  for (CLI::App* s : {validate, classify, gauss, loop_check, mesh}) common(s);
  gauss->add_option("--which", which, "g1 or g2");
  loop_check->add_option("--split", split, "first-order or conformal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (tol) cfg.tol = *tol;
    if (step) cfg.h = *step;
    if (lambda_samples) cfg.lambda_samples = *lambda_samples;
    if (!out_dir.empty()) cfg.out = out_dir;
    make_surface(cfg);

    if (validate->parsed()) return cmd_validate(cfg, out, err);
    if (classify->parsed()) return cmd_classify(cfg, out, err);
    if (gauss->parsed()) return cmd_gauss(cfg, which, out, err);
    if (loop_check->parsed()) return cmd_loop_check(cfg, split, out, err);
    return cmd_export_mesh(cfg, out, err);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kConfigError;
  } catch (const expr::PoleError& e) {
    err << "evaluation failed: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace projlab::cli
