// frobenius-forge: command-line front end for the Frobenius manifold
// verification laboratory. Subcommands: catalog, frame, verify, genus1.
//
// Exit codes: 0 success, 1 configuration error, 2 non-semisimple point,
// 3 verification suite failure.

#include "frobforge/calculus.hpp"
#include "frobforge/descendants.hpp"
#include "frobforge/frame.hpp"
#include "frobforge/genus1.hpp"
#include "frobforge/model.hpp"
#include "frobforge/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using frobforge::Complex;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_double_strict(const std::string& s) {
  if (s.empty()) throw ConfigError("empty number");
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("trailing characters in number '" + s + "'");
  return v;
}

// Parses "a", "bi", or "a+bi" / "a-bi" with no spaces; exponents allowed.
Complex parse_complex(const std::string& s) {
  if (s.empty()) throw ConfigError("empty complex literal");
  std::string body = s;
  const bool imaginary = body.back() == 'i' || body.back() == 'I';
  if (imaginary) body.pop_back();
  if (!imaginary) return Complex(parse_double_strict(body), 0.0);

  size_t split = std::string::npos;
  for (size_t p = 1; p < body.size(); ++p) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) {
    if (body.empty() || body == "+") return Complex(0.0, 1.0);
    if (body == "-") return Complex(0.0, -1.0);
    return Complex(0.0, parse_double_strict(body));
  }
  const std::string re = body.substr(0, split);
  std::string im = body.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return Complex(parse_double_strict(re), parse_double_strict(im));
}

Eigen::VectorXcd parse_point(const std::string& s, int dim) {
  std::vector<Complex> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(parse_complex(item));
  if (static_cast<int>(vals.size()) != dim) {
    throw ConfigError("point has " + std::to_string(vals.size()) + " coordinates, model needs " +
                      std::to_string(dim));
  }
  Eigen::VectorXcd v(dim);
  for (int a = 0; a < dim; ++a) v(a) = vals[static_cast<size_t>(a)];
  return v;
}

std::string format_complex(const Complex& z, const char* fmt = "%.12g") {
  char re[64], im[64];
  std::snprintf(re, sizeof(re), fmt, z.real());
  std::snprintf(im, sizeof(im), fmt, std::abs(z.imag()));
  std::string out(re);
  out += (z.imag() < 0.0 || (z.imag() == 0.0 && std::signbit(z.imag()))) ? "-" : "+";
  out += im;
  out += "i";
  return out;
}

nlohmann::ordered_json json_vector(const Eigen::VectorXcd& v) {
  auto arr = nlohmann::ordered_json::array();
  for (int a = 0; a < v.size(); ++a) arr.push_back(format_complex(v(a), "%.17g"));
  return arr;
}

nlohmann::ordered_json json_matrix(const Eigen::MatrixXcd& m) {
  auto rows = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(json_vector(m.row(i)));
  return rows;
}

std::string render_vector(const Eigen::VectorXcd& v) {
  std::string out = "(";
  for (int a = 0; a < v.size(); ++a) {
    if (a) out += ", ";
    out += format_complex(v(a));
  }
  out += ")";
  return out;
}

struct CommonOpts {
  std::string model_name;
  std::string model_file;
  std::string point;
  std::string format = "text";
  std::string out;
  int truncation = 8;
};

void add_model_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--model", opts.model_name, "catalog model name");
  cmd->add_option("--model-file", opts.model_file, "JSON model file");
  cmd->add_option("--truncation", opts.truncation, "series truncation degree for catalog models")
      ->check(CLI::Range(1, 64));
}

void add_output_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json", "markdown"}));
  cmd->add_option("--out", opts.out, "write output to a file instead of stdout");
}

frobforge::FrobeniusModel resolve_model(const CommonOpts& opts) {
  if (!opts.model_name.empty() && !opts.model_file.empty()) {
    throw ConfigError("--model and --model-file are mutually exclusive");
  }
  if (!opts.model_name.empty()) {
    return frobforge::builtin_catalog(opts.model_name, opts.truncation);
  }
  if (!opts.model_file.empty()) {
    return frobforge::load_model_file(opts.model_file);
  }
  throw ConfigError("one of --model or --model-file is required");
}

void emit(const CommonOpts& opts, const std::string& payload) {
  if (opts.out.empty()) {
    std::fputs(payload.c_str(), stdout);
    return;
  }
  std::ofstream f(opts.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + opts.out + "'");
  f << payload;
}

// ---------------------------------------------------------------------------

std::string run_catalog_list(const CommonOpts& opts) {
  const auto names = frobforge::catalog_names();
  if (opts.format == "json") {
    nlohmann::ordered_json j;
    j["models"] = names;
    return j.dump(2) + "\n";
  }
  std::string out;
  if (opts.format == "markdown") {
    out += "# Catalog models\n\n";
    for (const auto& n : names) out += "- `" + n + "`\n";
    return out;
  }
  for (const auto& n : names) out += n + "\n";
  return out;
}

std::string run_catalog_show(const CommonOpts& opts) {
  if (opts.model_name.empty()) throw ConfigError("catalog show requires --model");
  const frobforge::FrobeniusModel model =
      frobforge::builtin_catalog(opts.model_name, opts.truncation);
  if (opts.format == "json") return frobforge::emit_model(model);
  std::ostringstream os;
  if (opts.format == "markdown") {
    os << "# Model `" << model.name() << "`\n\n";
    os << "- dimension: " << model.dim() << "\n";
    os << "- truncation: " << model.truncation_degree() << "\n";
    os << "- grading b: ";
  } else {
    os << "model: " << model.name() << "\n";
    os << "dimension: " << model.dim() << "\n";
    os << "truncation: " << model.truncation_degree() << "\n";
    os << "grading b: ";
  }
  for (int a = 0; a < model.dim(); ++a) {
    if (a) os << ", ";
    os << frobforge::format_rational(model.b()[static_cast<size_t>(a)]);
  }
  os << "\n";
  os << "eta:\n";
  for (int i = 0; i < model.dim(); ++i) {
    os << "  ";
    for (int j = 0; j < model.dim(); ++j) {
      os << format_complex(model.eta()(i, j)) << (j + 1 < model.dim() ? "  " : "\n");
    }
  }
  return os.str();
}

std::string run_frame(const CommonOpts& opts) {
  const frobforge::FrobeniusModel model = resolve_model(opts);
  if (opts.point.empty()) throw ConfigError("frame requires --point");
  const Eigen::VectorXcd pt = parse_point(opts.point, model.dim());
  const frobforge::CanonicalFrame fr = frobforge::canonical_frame(model, pt);
  const int n = fr.dim();

  if (opts.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = model.name();
    j["point"] = json_vector(pt);
    j["u"] = json_vector(fr.u);
    j["g"] = json_vector(fr.g);
    j["sqrt_g"] = json_vector(fr.sqrt_g);
    j["idempotents"] = json_matrix(fr.J);
    j["psi"] = json_matrix(fr.psi);
    j["V"] = json_matrix(fr.V);
    j["rotation"] = json_matrix(fr.Gamma);
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  const bool md = opts.format == "markdown";
  if (md) {
    os << "# Canonical frame\n\n- model: `" << model.name() << "`\n- point: "
       << render_vector(pt) << "\n\n";
    os << "| i | u_i | g_i | sqrt(g_i) |\n| --- | --- | --- | --- |\n";
    for (int i = 0; i < n; ++i) {
      os << "| " << i << " | " << format_complex(fr.u(i)) << " | " << format_complex(fr.g(i))
         << " | " << format_complex(fr.sqrt_g(i)) << " |\n";
    }
    os << "\nidempotents (coefficient rows):\n\n";
    for (int i = 0; i < n; ++i) os << "- `E_" << i << " = " << render_vector(fr.idempotent(i)) << "`\n";
    os << "\nrotation coefficients:\n\n";
    for (int i = 0; i < n; ++i) os << "- `" << render_vector(fr.Gamma.row(i)) << "`\n";
    return os.str();
  }

  os << "model: " << model.name() << "\npoint: " << render_vector(pt) << "\n";
  for (int i = 0; i < n; ++i) {
    os << "canonical coordinate u_" << i << " = " << format_complex(fr.u(i)) << "\n";
  }
  for (int i = 0; i < n; ++i) {
    os << "E_" << i << " = " << render_vector(fr.idempotent(i))
       << "   g_" << i << " = " << format_complex(fr.g(i))
       << "   sqrt(g_" << i << ") = " << format_complex(fr.sqrt_g(i)) << "\n";
  }
  os << "psi:\n";
  for (int i = 0; i < n; ++i) os << "  " << render_vector(fr.psi.row(i)) << "\n";
  os << "V:\n";
  for (int i = 0; i < n; ++i) os << "  " << render_vector(fr.V.row(i)) << "\n";
  os << "rotation coefficients:\n";
  for (int i = 0; i < n; ++i) os << "  " << render_vector(fr.Gamma.row(i)) << "\n";
  return os.str();
}

std::string run_genus1(const CommonOpts& opts) {
  const frobforge::FrobeniusModel model = resolve_model(opts);
  if (opts.point.empty()) throw ConfigError("genus1 requires --point");
  const Eigen::VectorXcd pt = parse_point(opts.point, model.dim());
  const frobforge::CanonicalFrame fr = frobforge::canonical_frame(model, pt);
  const Eigen::VectorXcd phi = frobforge::genus1_phi(fr);
  const Eigen::VectorXcd one = frobforge::genus1_onepoint(fr);
  const frobforge::VirasoroCheck vir = frobforge::virasoro_l1_check(fr);

  if (opts.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = model.name();
    j["point"] = json_vector(pt);
    j["phi"] = json_vector(phi);
    j["onepoint"] = json_vector(one);
    j["phi_sum_abs"] = std::abs(phi.sum());
    j["virasoro_l1"] = {{"lhs", format_complex(vir.lhs, "%.17g")},
                        {"rhs", format_complex(vir.rhs, "%.17g")},
                        {"residual", vir.residual},
                        {"symmetrization_residual", vir.symmetrization_residual}};
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  const bool md = opts.format == "markdown";
  if (md) {
    os << "# Genus-one data\n\n- model: `" << model.name() << "`\n- point: " << render_vector(pt)
       << "\n\n| i | u_i | phi_i |\n| --- | --- | --- |\n";
    for (int i = 0; i < fr.dim(); ++i) {
      os << "| " << i << " | " << format_complex(fr.u(i)) << " | " << format_complex(phi(i))
         << " |\n";
    }
    os << "\n- one-point values: " << render_vector(one) << "\n";
    os << "- virasoro residual: " << vir.residual << "\n";
    return os.str();
  }
  os << "model: " << model.name() << "\npoint: " << render_vector(pt) << "\n";
  for (int i = 0; i < fr.dim(); ++i) {
    os << "phi_" << i << " (u = " << format_complex(fr.u(i)) << ") = " << format_complex(phi(i))
       << "\n";
  }
  os << "one-point values: " << render_vector(one) << "\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "virasoro L1 residual: %.3e (symmetrization %.3e)\n",
                vir.residual, vir.symmetrization_residual);
  os << buf;
  std::snprintf(buf, sizeof(buf), "sum phi residual: %.3e\n", std::abs(phi.sum()));
  os << buf;
  return os.str();
}

struct VerifyOpts {
  CommonOpts common;
  std::string suite = "all";
  std::vector<std::string> identities;
  double tol = 0.0;
  double fd_step = 1e-5;
};

int run_verify(const VerifyOpts& vopts, std::string& payload) {
  const frobforge::FrobeniusModel model = resolve_model(vopts.common);
  frobforge::SuiteSpec spec;
  spec.suite = vopts.suite;
  spec.identities = vopts.identities;
  spec.fd_step = vopts.fd_step;
  spec.tol_override = vopts.tol;
  if (!vopts.common.point.empty()) {
    spec.grid.start = parse_point(vopts.common.point, model.dim());
    spec.grid.end = spec.grid.start;
    spec.grid.points = 1;
  } else {
    spec.grid = frobforge::default_grid(model.name());
  }
  const frobforge::VerifyReport rep = frobforge::run_suite(model, spec);
  if (vopts.common.format == "json") {
    payload = frobforge::render_json(rep);
  } else if (vopts.common.format == "markdown") {
    payload = frobforge::render_markdown(rep);
  } else {
    payload = frobforge::render_text(rep);
  }
  if (rep.usable_points == 0) return 2;
  return rep.pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frobenius-forge: verification laboratory for semisimple Frobenius manifolds"};
  app.require_subcommand(1);

  CommonOpts catalog_opts;
  auto* catalog = app.add_subcommand("catalog", "inspect the builtin model catalog");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "list catalog model names");
  add_output_options(cat_list, catalog_opts);
  auto* cat_show = catalog->add_subcommand("show", "show one catalog model");
  cat_show->add_option("--model", catalog_opts.model_name, "catalog model name")->required();
  cat_show->add_option("--truncation", catalog_opts.truncation, "series truncation degree")
      ->check(CLI::Range(1, 64));
  add_output_options(cat_show, catalog_opts);

  CommonOpts frame_opts;
  auto* frame = app.add_subcommand("frame", "canonical frame at a point");
  add_model_options(frame, frame_opts);
  frame->add_option("--point", frame_opts.point, "flat coordinates, e.g. 0.1,0.2 or 1+2i,0")
      ->required();
  add_output_options(frame, frame_opts);

  CommonOpts genus1_opts;
  auto* genus1 = app.add_subcommand("genus1", "genus-one data at a point");
  add_model_options(genus1, genus1_opts);
  genus1->add_option("--point", genus1_opts.point, "flat coordinates")->required();
  add_output_options(genus1, genus1_opts);

  VerifyOpts verify_opts;
  auto* verify = app.add_subcommand("verify", "run identity suites over a grid");
  add_model_options(verify, verify_opts.common);
  verify->add_option("--point", verify_opts.common.point,
                     "single verification point (default: the model's grid)");
  verify->add_option("--suite", verify_opts.suite,
                     "suite: all, frame-core, rotation-derivatives, descendants, genus1, calculus");
  verify->add_option("--identity", verify_opts.identities, "restrict to specific identity ids");
  verify->add_option("--tol", verify_opts.tol, "override every identity tolerance");
  verify->add_option("--fd-step", verify_opts.fd_step, "finite-difference step");
  add_output_options(verify, verify_opts.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (cat_list->parsed()) {
      emit(catalog_opts, run_catalog_list(catalog_opts));
      return 0;
    }
    if (cat_show->parsed()) {
      emit(catalog_opts, run_catalog_show(catalog_opts));
      return 0;
    }
    if (frame->parsed()) {
      emit(frame_opts, run_frame(frame_opts));
      return 0;
    }
    if (genus1->parsed()) {
      emit(genus1_opts, run_genus1(genus1_opts));
      return 0;
    }
    if (verify->parsed()) {
      std::string payload;
      const int code = run_verify(verify_opts, payload);
      emit(verify_opts.common, payload);
      return code;
    }
  } catch (const frobforge::NonSemisimpleError& e) {
    std::fprintf(stderr, "non-semisimple point: %s\n", e.what());
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
