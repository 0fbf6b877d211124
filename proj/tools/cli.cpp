#include "cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "qesboson/errors.hpp"
#include "qesboson/fock_oracle.hpp"
#include "qesboson/model_catalog.hpp"
#include "qesboson/qes_reduction.hpp"
#include "qesboson/sextic_map.hpp"

namespace qesb::cli {

namespace {

using nlohmann::json;

enum class Method { Oracle, Reduced, Both };

struct RunConfig {
  std::string model_path;
  std::int64_t kappa = 0;
  std::int64_t kappa_max = 0;
  Method method = Method::Both;
  double tol = 1e-9;
  RecurrenceMode mode = RecurrenceMode::Corrected;
  std::string output;
};

/// Thrown inside commands; carries the process exit code.
struct CommandFailure {
  int code;
  std::string message;
};

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandFailure{kParse, "cannot read model file '" + path + "'"};
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_model_file(text);
  } catch (const ParseError& e) {
    throw CommandFailure{kParse, path + ": " + e.what()};
  }
}

void require_conserving(const ModelFile& model) {
  const auto h = model.hamiltonian();
  if (!conserves(h, model.charge)) {
    throw CommandFailure{
        kNonConserving,
        fmt::format("declared charge ({},{}) is not conserved; [K,H] = {}", model.charge.s(),
                    model.charge.p(),
                    to_string(commutator(model.charge.as_operator(), h)))};
  }
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

json exact_json(const QComplex& z) { return json::array({to_string(z.re()), to_string(z.im())}); }

json poly_json(const QPolynomial& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(exact_json(c));
  return out;
}

struct ReducedResult {
  std::vector<cdouble> values;
  double residual = 0.0;
};

ReducedResult reduced_values(const OperatorPolynomial& h, const ConservedCharge& charge,
                             std::int64_t kappa, RecurrenceMode mode) {
  if (mode == RecurrenceMode::Corrected) {
    auto report = qes_spectrum(h, charge, kappa);
    return {report.eigenvalues, report.max_residual};
  }
  // Literal mode keeps the omega2 offset in the recurrence.
  auto table = energy_polynomial_table(h, charge, kappa, mode);
  ComplexMatrix m = to_complex_matrix(table.recurrence);
  EigenPairs pairs = solve_general(m);
  return {pairs.values, pairs.values.empty() ? 0.0 : max_residual(m, pairs)};
}

struct BlockComparison {
  std::int64_t kappa = 0;
  std::vector<FockState> basis;
  std::optional<SpectrumReport> oracle;
  std::optional<ReducedResult> reduced;
  std::optional<double> deviation;
  std::vector<double> per_level;
};

BlockComparison compare_block(const ModelFile& model, std::int64_t kappa, Method method,
                              RecurrenceMode mode) {
  const auto h = model.hamiltonian();
  BlockComparison b;
  b.kappa = kappa;
  b.basis = enumerate_block(model.charge, kappa);
  if (method != Method::Reduced) b.oracle = block_spectrum(h, model.charge, kappa);
  if (method != Method::Oracle) b.reduced = reduced_values(h, model.charge, kappa, mode);
  if (b.oracle && b.reduced) {
    b.deviation = max_sorted_deviation(b.oracle->eigenvalues, b.reduced->values);
    for (std::size_t j = 0; j < b.oracle->eigenvalues.size(); ++j)
      b.per_level.push_back(std::abs(b.oracle->eigenvalues[j] - b.reduced->values[j]));
  }
  return b;
}

// ------------------------------------------------------------------ check

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const ModelFile model = load_model(cfg.model_path);
  const auto h = model.hamiltonian();
  const bool ok = conserves(h, model.charge);
  const bool herm = is_hermitian(h);
  const auto charges = conserving_charges(h);
  std::optional<OperatorPolynomial> comm;
  if (!ok) comm = commutator(model.charge.as_operator(), h);

  if (cfg.output == "json") {
    json j;
    j["charge"] = {model.charge.s(), model.charge.p()};
    j["conserves"] = ok;
    j["hermitian"] = herm;
    json list = json::array();
    for (auto [s, p] : charges) list.push_back({s, p});
    j["conserving_charges"] = list;
    j["commutator"] = comm ? json(to_string(*comm)) : json(nullptr);
    out << j.dump() << '\n';
  } else {
    if (model.name) out << "model: " << *model.name << '\n';
    fmt::print(out, "conserves: {} ({},{}); hermitian: {}\n", ok ? "yes" : "no", model.charge.s(),
               model.charge.p(), herm ? "yes" : "no");
    out << "conserving charges (s,p <= 12):";
    if (charges.empty()) out << " none";
    for (auto [s, p] : charges) fmt::print(out, " ({},{})", s, p);
    out << '\n';
    if (comm) out << "[K,H] = " << to_string(*comm) << '\n';
  }
  return ok ? kOk : kNonConserving;
}

// --------------------------------------------------------------- spectrum

json values_json(const std::vector<cdouble>& v, bool imag) {
  json out = json::array();
  for (const auto& z : v) out.push_back(imag ? z.imag() : z.real());
  return out;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelFile model = load_model(cfg.model_path);
  require_conserving(model);
  if (cfg.kappa < 0) throw CommandFailure{kUsage, "--kappa must be non-negative"};
  BlockComparison b = compare_block(model, cfg.kappa, cfg.method, cfg.mode);

  json j;
  j["kappa"] = cfg.kappa;
  j["dimension"] = b.basis.size();
  json basis = json::array();
  for (const auto& s : b.basis) basis.push_back({s.n1, s.n2});
  j["basis"] = basis;
  j["mode"] = to_string(cfg.mode);
  j["oracle"] = b.oracle ? values_json(b.oracle->eigenvalues, false) : json::array();
  j["oracle_imag"] = b.oracle ? values_json(b.oracle->eigenvalues, true) : json::array();
  j["reduced"] = b.reduced ? values_json(b.reduced->values, false) : json::array();
  j["reduced_imag"] = b.reduced ? values_json(b.reduced->values, true) : json::array();
  j["max_deviation"] = b.deviation ? json(*b.deviation) : json(nullptr);
  j["residuals"] = {{"oracle", b.oracle ? json(b.oracle->max_residual) : json(nullptr)},
                    {"reduced", b.reduced ? json(b.reduced->residual) : json(nullptr)}};
  out << j.dump() << '\n';
  if (b.deviation && *b.deviation > cfg.tol) {
    fmt::print(err, "max_deviation {} exceeds tol {}\n", num(*b.deviation), num(cfg.tol));
    return kNumerical;
  }
  return kOk;
}

// ------------------------------------------------------------------- scan

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelFile model = load_model(cfg.model_path);
  require_conserving(model);
  if (cfg.kappa_max < 0) throw CommandFailure{kUsage, "--kappa-max must be non-negative"};

  // Blocks are independent; evaluate them concurrently, emit in kappa order.
  const std::size_t total = static_cast<std::size_t>(cfg.kappa_max) + 1;
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<BlockComparison> blocks(total);
  for (std::size_t start = 0; start < total; start += workers) {
    std::vector<std::future<BlockComparison>> batch;
    for (std::size_t k = start; k < std::min(total, start + workers); ++k)
      batch.push_back(std::async(std::launch::async, compare_block, std::cref(model),
                                 static_cast<std::int64_t>(k), Method::Both, cfg.mode));
    for (std::size_t j = 0; j < batch.size(); ++j) blocks[start + j] = batch[j].get();
  }

  double worst = 0.0;
  out << "kappa,dim,index,eig_re,eig_im,deviation\n";
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.oracle->eigenvalues.size(); ++i) {
      const cdouble e = b.oracle->eigenvalues[i];
      fmt::print(out, "{},{},{},{},{},{}\n", b.kappa, b.basis.size(), i, num(e.real()),
                 num(e.imag()), num(b.per_level[i]));
    }
    worst = std::max(worst, b.deviation.value_or(0.0));
  }
  if (worst > cfg.tol) {
    fmt::print(err, "max deviation {} exceeds tol {}\n", num(worst), num(cfg.tol));
    return kNumerical;
  }
  return kOk;
}

// ------------------------------------------------------------------ polys

int cmd_polys(const RunConfig& cfg, std::ostream& out) {
  const ModelFile model = load_model(cfg.model_path);
  require_conserving(model);
  if (cfg.kappa < 0) throw CommandFailure{kUsage, "--kappa must be non-negative"};
  const auto table = energy_polynomial_table(model.hamiltonian(), model.charge, cfg.kappa, cfg.mode);
  json j;
  j["kappa"] = cfg.kappa;
  j["mode"] = to_string(cfg.mode);
  j["termination_degree"] = table.termination_degree;
  json polys = json::array();
  for (const auto& p : table.polys) polys.push_back(poly_json(p));
  j["polys"] = polys;
  j["termination"] = poly_json(table.termination);
  j["roots"] = values_json(recurrence_spectrum(table), false);
  j["roots_imag"] = values_json(recurrence_spectrum(table), true);
  out << j.dump() << '\n';
  return kOk;
}

// ----------------------------------------------------------------- sextic

struct SexticFlags {
  std::string w1, w2, kre, kim = "0", kbre, kbim = "0";
  long k = 0;
  bool fd = false;
  double fd_half_width = 6.0;
  std::size_t fd_points = 4000;
};

Rational flag_rational(const std::string& name, const std::string& value) {
  auto q = parse_rational(value);
  if (!q) throw CommandFailure{kUsage, "--" + name + " expects a number, got '" + value + "'"};
  return *q;
}

int cmd_sextic(const SexticFlags& f, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (f.k < 0) throw CommandFailure{kUsage, "--k must be non-negative"};
  SexticParams params{QComplex(flag_rational("w1", f.w1)), QComplex(flag_rational("w2", f.w2)),
                      QComplex(flag_rational("kre", f.kre), flag_rational("kim", f.kim)),
                      QComplex(flag_rational("kbre", f.kbre), flag_rational("kbim", f.kbim)),
                      f.k};
  const Superpotential w = gauge_superpotential(params);
  const SexticPotential v = sextic_potential(params);

  std::optional<GaugeCheck> gauge;
  std::optional<std::string> gauge_failure;
  std::vector<ConventionTrial> failed_trials;
  if (!params.kappa_bar.is_zero()) {
    const std::vector<QPolynomial> polys = {
        QPolynomial::constant(1), QPolynomial::power(1),
        QPolynomial({QComplex(1), QComplex(-1), QComplex(Rational(1, 2))})};
    std::vector<double> ys;
    for (int j = 0; j <= 12; ++j) ys.push_back(0.5 + 0.125 * j);
    try {
      gauge = gauge_identity_residual(params, polys, ys, cfg.mode);
    } catch (const ConventionMismatch& e) {
      gauge_failure = e.what();
      failed_trials = e.trials();
    }
  }
  std::optional<FdComparison> fd;
  if (f.fd && gauge) fd = compare_fd_with_qes(params, gauge->convention, f.fd_half_width, f.fd_points);

  if (cfg.output == "json") {
    json j;
    j["superpotential"] = {{"inv_y", exact_json(w.inv_y)}, {"y", exact_json(w.lin)},
                           {"y3", exact_json(w.cubic)}};
    j["coefficients_exact"] = {{"c0", exact_json(v.c0)}, {"c2", exact_json(v.c2)},
                               {"c4", exact_json(v.c4)}, {"c6", exact_json(v.c6)}};
    j["coefficients"] = {v.c0.to_complex().real(), v.c2.to_complex().real(),
                         v.c4.to_complex().real(), v.c6.to_complex().real()};
    if (gauge) {
      j["gauge"] = {{"residual", gauge->residual},
                    {"convention", gauge->convention.describe()},
                    {"shift", {gauge->shift.real(), gauge->shift.imag()}}};
    } else {
      j["gauge"] = nullptr;
    }
    if (fd) {
      j["fd"] = {{"qes", fd->qes}, {"levels", fd->fd}, {"matched", fd->matched},
                 {"shift", fd->shift}, {"shift_spread", fd->shift_spread}};
    }
    out << j.dump() << '\n';
  } else {
    fmt::print(out, "W(y) = {}/y + {}*y + {}*y^3\n", to_string(w.inv_y), to_string(w.lin),
               to_string(w.cubic));
    fmt::print(out, "V(y) = {} + {}*y^2 + {}*y^4 + {}*y^6\n", to_string(v.c0), to_string(v.c2),
               to_string(v.c4), to_string(v.c6));
    fmt::print(out, "c = ({}, {}, {}, {})\n", v.c0.to_complex().real(), v.c2.to_complex().real(),
               v.c4.to_complex().real(), v.c6.to_complex().real());
    if (gauge) {
      fmt::print(out, "gauge residual: {:.3e}\nconvention: {}; shift {}\n", gauge->residual,
                 gauge->convention.describe(), num(gauge->shift.real()));
    } else if (!gauge_failure) {
      out << "gauge residual: skipped (kappa_bar = 0)\n";
    }
    if (fd) {
      out << "fd: qes levels";
      for (double e : fd->qes) fmt::print(out, " {}", num(e));
      out << "; matched fd levels";
      for (std::size_t i : fd->matched) fmt::print(out, " {}", num(fd->fd[i]));
      fmt::print(out, "; shift {} (spread {:.3e})\n", num(fd->shift), fd->shift_spread);
    }
  }
  if (gauge_failure) {
    err << *gauge_failure << '\n';
    for (const auto& t : failed_trials)
      fmt::print(err, "  {}: residual {:.3e}\n", t.convention.describe(), t.residual);
    return kNumerical;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact block spectra of two-mode boson Hamiltonians", "qesboson"};
  app.require_subcommand(1);

  RunConfig cfg;
  SexticFlags sextic_flags;
  std::string mode_text = "corrected";
  std::string method_text = "both";

  const std::map<std::string, RecurrenceMode> modes{
      {"corrected", RecurrenceMode::Corrected}, {"paper-literal", RecurrenceMode::PaperLiteral}};
  const std::map<std::string, Method> methods{
      {"oracle", Method::Oracle}, {"reduced", Method::Reduced}, {"both", Method::Both}};

  auto* check = app.add_subcommand("check", "Conservation and hermiticity report");
  check->add_option("model", cfg.model_path, "Model file")->required();
  check->add_option("--output", cfg.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->default_val("text");

  auto* spectrum = app.add_subcommand("spectrum", "Block spectrum, oracle vs reduced (JSON)");
  spectrum->add_option("model", cfg.model_path, "Model file")->required();
  spectrum->add_option("--kappa", cfg.kappa, "Charge eigenvalue")->required();
  spectrum->add_option("--method", method_text, "oracle, reduced or both")
      ->check(CLI::IsMember({"oracle", "reduced", "both"}));
  spectrum->add_option("--tol", cfg.tol, "Deviation tolerance")->check(CLI::PositiveNumber);
  spectrum->add_option("--mode", mode_text, "corrected or paper-literal")
      ->check(CLI::IsMember({"corrected", "paper-literal"}));

  auto* scan = app.add_subcommand("scan", "Compare all blocks up to --kappa-max (CSV)");
  scan->add_option("model", cfg.model_path, "Model file")->required();
  scan->add_option("--kappa-max", cfg.kappa_max, "Largest charge eigenvalue")->required();
  scan->add_option("--tol", cfg.tol, "Deviation tolerance")->check(CLI::PositiveNumber);
  scan->add_option("--mode", mode_text, "corrected or paper-literal")
      ->check(CLI::IsMember({"corrected", "paper-literal"}));

  auto* polys = app.add_subcommand("polys", "Energy polynomial table (JSON)");
  polys->add_option("model", cfg.model_path, "Model file")->required();
  polys->add_option("--kappa", cfg.kappa, "Charge eigenvalue")->required();
  polys->add_option("--mode", mode_text, "corrected or paper-literal")
      ->check(CLI::IsMember({"corrected", "paper-literal"}));

  auto* sextic = app.add_subcommand("sextic", "Superpotential, sextic potential and checks");
  sextic->add_option("--w1", sextic_flags.w1, "omega_1")->required();
  sextic->add_option("--w2", sextic_flags.w2, "omega_2")->required();
  sextic->add_option("--kre", sextic_flags.kre, "Re kappa")->required();
  sextic->add_option("--kim", sextic_flags.kim, "Im kappa");
  sextic->add_option("--kbre", sextic_flags.kbre, "Re kappa_bar")->required();
  sextic->add_option("--kbim", sextic_flags.kbim, "Im kappa_bar");
  sextic->add_option("--k", sextic_flags.k, "Block label k")->required();
  sextic->add_flag("--fd", sextic_flags.fd, "Compare against a finite-difference solve");
  sextic->add_option("--fd-half-width", sextic_flags.fd_half_width, "FD domain half-width")
      ->check(CLI::PositiveNumber);
  sextic->add_option("--fd-points", sextic_flags.fd_points, "FD interior grid points")
      ->check(CLI::Range(3, 200000));
  sextic->add_option("--mode", mode_text, "corrected or paper-literal")
      ->check(CLI::IsMember({"corrected", "paper-literal"}));
  sextic->add_option("--output", cfg.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->default_val("text");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  cfg.mode = modes.at(mode_text);
  cfg.method = methods.at(method_text);

  try {
    if (*check) return cmd_check(cfg, out);
    if (*spectrum) return cmd_spectrum(cfg, out, err);
    if (*scan) return cmd_scan(cfg, out, err);
    if (*polys) return cmd_polys(cfg, out);
    if (*sextic) return cmd_sextic(sextic_flags, cfg, out, err);
  } catch (const CommandFailure& f) {
    err << f.message << '\n';
    return f.code;
  } catch (const NonConservingHamiltonian& e) {
    err << e.what() << '\n';
    return kNonConserving;
  } catch (const NumericalFailure& e) {
    err << e.what() << '\n';
    return kNumerical;
  } catch (const BandStructureUnsupported& e) {
    err << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace qesb::cli
