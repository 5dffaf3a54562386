#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "nrefl/dynamics.hpp"
#include "nrefl/gaudin.hpp"
#include "nrefl/reflection.hpp"
#include "nrefl/verify.hpp"

namespace nrefl::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("invalid seed '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::map<std::string, Scalar> parse_params(const std::string& text, std::optional<int> order) {
  std::map<std::string, Scalar> out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("parameter '" + item + "' is not of the form name=value");
    out[item.substr(0, eq)] = parse_scalar(item.substr(eq + 1), order);
  }
  return out;
}

/// "1,0;0,-1" or a JSON-free row syntax for G.
SpectralMatrix parse_matrix(const std::string& text, std::optional<int> order) {
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row : split(text, ';')) {
    std::vector<Scalar> r;
    for (const auto& x : split(row, ',')) r.push_back(parse_scalar(x, order));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ParseError("empty matrix");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ParseError("matrix '" + text + "' is not square");
  return SpectralMatrix::from_rows(rows);
}

struct VerifyArgs {
  std::string subject;
  std::string r = "rational";
  std::size_t n = 2;
  bool n_given = false;
  std::string case_label;
  std::string case_file;
  std::string params;
  unsigned N = 0;
  std::string G;
  std::size_t samples = kDefaultSamplesPerVariable;
  std::size_t tuples = 0;
  std::string seed = "0xC0FFEE";
  std::string tamper;
  std::string out;
};

KSolution case_from_args(const VerifyArgs& a) {
  CaseDescriptor d;
  if (!a.case_file.empty()) d = parse_case_descriptor(read_file(a.case_file));
  if (!a.case_label.empty()) d.label = a.case_label;
  if (d.label.empty()) throw ParseError("a case is required (--case or --case-file)");
  if (a.N) d.N = a.N;
  if (a.n_given) d.n = a.n;
  if (d.label == "trivial" && a.r != "rational") d.r = a.r;
  const auto order = case_cyclotomic_order(d);
  for (auto& [k, v] : parse_params(a.params, order)) d.params[k] = v;
  if (!a.G.empty()) {
    if (a.G == "diag-roots" || a.G == "cyclic")
      d.G_kind = a.G;
    else
      d.G = parse_matrix(a.G, order);
  }
  KSolution ks = build_case(d);
  if (!a.tamper.empty()) {
    if (a.tamper != "g1-sign") throw ParseError("unknown tamper mode '" + a.tamper + "' (expected g1-sign)");
    if (ks.N < 2) throw ConstraintError("g1-sign tampering needs N >= 2");
    ks = with_tampered_weight(ks, 1, -ks.weights.symbolic(1));
  }
  return ks;
}

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  VerifyOptions opts;
  opts.seed = parse_seed(a.seed);
  opts.samples_per_variable = a.samples;
  if (a.tuples) opts.tuples = a.tuples;
  VerificationReport rep;
  if (a.subject == "cybe" || a.subject == "skew") {
    if (!a.case_label.empty() || !a.case_file.empty()) {
      rep = verify_r(a.subject, case_from_args(a).base_r, opts);
    } else if (a.r == "rational") {
      rep = verify_r(a.subject, rational_r(a.n), opts);
    } else if (a.r == "trig") {
      rep = verify_r(a.subject, trig_r(), opts);
    } else {
      throw ParseError("unknown r-matrix '" + a.r + "' (expected rational or trig)");
    }
  } else {
    rep = verify_case(a.subject, case_from_args(a), opts);
  }
  emit(rep.to_json(), a.out, out);
  if (!rep.passed()) {
    err << rep.subject << ": " << rep.failures() << " of " << rep.samples.size() << " samples nonzero\n";
    return kVerificationFailed;
  }
  return kPass;
}

std::string hamiltonian_dump(const GaudinModel& model) {
  std::ostringstream os;
  os << "# model " << to_string(model.mode()) << ", L = " << model.L() << ", z = (";
  for (int m = 0; m < model.L(); ++m) os << (m ? ", " : "") << model.sites()[static_cast<std::size_t>(m)];
  os << ")\n";
  os << "# S_ik = 1/2 sz_i sz_k + sp_i sm_k + sm_i sp_k, C_i = 1/2 sz_i^2 + 2 sp_i sm_i\n";
  for (int i = 1; i <= model.L(); ++i) {
    const SpinPoly h = model.hamiltonian_residue(i);
    os << "H_" << i << " = ";
    if (auto c = pair_decomposition(h, i, model.L())) {
      bool first = true;
      for (int k = 1; k <= model.L(); ++k) {
        const Scalar& ck = (*c)[static_cast<std::size_t>(k - 1)];
        if (ck.is_zero()) continue;
        os << (first ? "" : " + ") << "(" << ck << ")*" << (k == i ? "C_" + std::to_string(i) : "S_" + std::to_string(i) + std::to_string(k));
        first = false;
      }
      if (first) os << "0";
      os << "\n";
      if (!model.casimir_values().empty()) {
        const Scalar& ci = (*c)[static_cast<std::size_t>(i - 1)];
        os << "  with C_" << i << " = " << model.casimir_values()[static_cast<std::size_t>(i - 1)]
           << ": casimir term = " << ci * model.casimir_values()[static_cast<std::size_t>(i - 1)] << "\n";
      }
    } else {
      os << "\n";
    }
    os << "  expanded: " << h << "\n";
  }
  return os.str();
}

struct GaudinArgs {
  std::string subject;
  std::string config;
  std::size_t samples = kDefaultSamplesPerVariable;
  std::size_t tuples = 0;
  std::string seed = "0xC0FFEE";
  std::string out;
};

int do_gaudin(const GaudinArgs& a, std::ostream& out, std::ostream& err) {
  const GaudinModel model = GaudinModel::from_config(parse_gaudin_config(read_file(a.config)));
  if (a.subject == "hamiltonians") {
    emit(hamiltonian_dump(model), a.out, out);
    return kPass;
  }
  VerifyOptions opts;
  opts.seed = parse_seed(a.seed);
  opts.samples_per_variable = a.samples;
  if (a.tuples) opts.tuples = a.tuples;
  const VerificationReport rep = verify_gaudin(a.subject, model, opts);
  emit(rep.to_json(), a.out, out);
  if (!rep.passed()) {
    err << rep.subject << ": " << rep.failures() << " of " << rep.samples.size() << " checks nonzero\n";
    return kVerificationFailed;
  }
  return kPass;
}

struct SimulateArgs {
  std::string config;
  int hamiltonian = 1;
  double t = 10.0;
  double dt = 1e-3;
  std::size_t log_every = 100;
  std::string out;
};

int do_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.dt > 0) || !std::isfinite(a.dt)) throw ParseError("--dt must be a positive number");
  if (!(a.t > 0) || !std::isfinite(a.t)) throw ParseError("--t must be a positive number");
  const GaudinConfig cfg = parse_gaudin_config(read_file(a.config));
  const GaudinModel model = GaudinModel::from_config(cfg);
  if (a.hamiltonian < 1 || a.hamiltonian > model.L()) throw ParseError("--hamiltonian must be between 1 and L");
  const PhaseState init = cfg.initial ? PhaseState::from_sites(*cfg.initial) : default_initial_state(model.L());
  const ProbeSet probes(model, default_probes(model));
  for (const auto& w : probes.warnings()) err << "warning: " << w << "\n";
  SimulationOptions opts;
  opts.t_end = a.t;
  opts.dt = a.dt;
  opts.log_every = a.log_every;
  const SimulationResult res = rk4_simulate(model, model.hamiltonian_residue(a.hamiltonian), init, opts, probes);
  std::ostringstream csv;
  write_csv(csv, res, model.L(), probes.size());
  if (!a.out.empty()) emit(csv.str(), a.out, out);
  out << std::setprecision(3) << std::scientific;
  for (std::size_t k = 0; k < res.drift.H.size(); ++k) out << "max relative drift H_" << k + 1 << ": " << res.drift.H[k] << "\n";
  for (std::size_t k = 0; k < res.drift.C.size(); ++k) out << "max relative drift C_" << k + 1 << ": " << res.drift.C[k] << "\n";
  for (std::size_t p = 0; p < res.drift.detB.size(); ++p)
    out << "max relative drift det B(probe " << p + 1 << "): " << res.drift.detB[p] << "\n";
  if (res.aborted) {
    err << "simulation aborted: " << res.failure << "\n";
    return kNumericFailure;
  }
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact N-reflection and Gaudin model toolkit", "nrefl"};
  app.require_subcommand(1);

  auto* catalog_cmd = app.add_subcommand("catalog", "List the built-in k-matrix cases");
  std::string catalog_action;
  catalog_cmd->add_option("action", catalog_action, "list")->required()->check(CLI::IsMember({"list"}));

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Exact identity checks at seeded rational samples");
  verify_cmd->add_option("subject", va.subject)
      ->required()
      ->check(CLI::IsMember({"cybe", "skew", "nre", "nunitarity", "compact", "symmetry", "equivalence", "rbar-cybe", "functional"}));
  verify_cmd->add_option("--r", va.r, "base r-matrix: rational or trig");
  verify_cmd->add_option("--n", va.n, "factor size")->each([&](const std::string&) { va.n_given = true; });
  verify_cmd->add_option("--case", va.case_label, "catalog label");
  verify_cmd->add_option("--case-file", va.case_file, "JSON case descriptor");
  verify_cmd->add_option("--params", va.params, "e.g. a=1,b=2,c=3");
  verify_cmd->add_option("--N", va.N, "order N");
  verify_cmd->add_option("--G", va.G, "diag-roots, cyclic, or rows like 1,0;0,-1");
  verify_cmd->add_option("--samples", va.samples, "sample points per spectral variable");
  verify_cmd->add_option("--tuples", va.tuples, "exact number of sample tuples");
  verify_cmd->add_option("--seed", va.seed, "generator seed");
  verify_cmd->add_option("--tamper", va.tamper, "g1-sign: flip the sign of g^(1)");
  verify_cmd->add_option("--out", va.out, "report path (default stdout)");

  GaudinArgs ga;
  auto* gaudin_cmd = app.add_subcommand("gaudin", "Gaudin model identities");
  gaudin_cmd->add_option("subject", ga.subject)
      ->required()
      ->check(CLI::IsMember({"hamiltonians", "involution", "residue-equality", "rbb", "lax", "mk", "trbrackets", "local-poisson"}));
  gaudin_cmd->add_option("--config", ga.config, "model JSON")->required();
  gaudin_cmd->add_option("--samples", ga.samples, "sample points per spectral variable");
  gaudin_cmd->add_option("--tuples", ga.tuples, "exact number of sample tuples");
  gaudin_cmd->add_option("--seed", ga.seed, "generator seed");
  gaudin_cmd->add_option("--out", ga.out, "output path (default stdout)");

  SimulateArgs sa;
  auto* sim_cmd = app.add_subcommand("simulate", "RK4 flow of one Hamiltonian");
  sim_cmd->add_option("--config", sa.config, "model JSON")->required();
  sim_cmd->add_option("--hamiltonian", sa.hamiltonian, "index i of H_i");
  sim_cmd->add_option("--t", sa.t, "final time");
  sim_cmd->add_option("--dt", sa.dt, "step size");
  sim_cmd->add_option("--log-every", sa.log_every, "steps between CSV rows");
  sim_cmd->add_option("--out", sa.out, "trajectory CSV path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    if (catalog_cmd->parsed()) {
      for (const auto& e : catalog()) out << std::left << std::setw(22) << e.label << " " << e.description << "\n";
      return kPass;
    }
    if (verify_cmd->parsed()) return do_verify(va, out, err);
    if (gaudin_cmd->parsed()) return do_gaudin(ga, out, err);
    if (sim_cmd->parsed()) return do_simulate(sa, out, err);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace nrefl::cli
