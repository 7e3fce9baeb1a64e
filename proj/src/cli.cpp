#include "gme/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "gme/oracle.hpp"
#include "gme/scan.hpp"

namespace gme {

namespace {

struct Options {
  std::string family = "ghz";
  int d = 2;
  int n = 3;
  std::optional<double> noise;
  double alpha = 0;
  double beta = 0;
  std::string state_file;
  std::string criterion = "II";
  std::string probes = "fixed";
  int restarts = OptimizerConfig{}.restarts;
  int iterations = OptimizerConfig{}.iterations;
  std::uint64_t seed = OptimizerConfig{}.seed;
  double tol = 1e-6;
  std::string out;
  std::string format = "json";
  std::string grid = "0:1:0.05,0:1:0.05";
  std::string param = "p";
  double lo = 0;
  double hi = 1;
  std::string partition;
  int m = 2;
  int trials = 100;
  double oracle_tol = oracle::oracle_tol;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<CriterionId> criteria_of(const std::string& s) {
  std::vector<CriterionId> out;
  for (const auto& tok : split(s, ',')) {
    const auto id = parse_criterion(tok);
    if (!id || *id == CriterionId::MLIN) throw UsageError("unknown criterion '" + tok + "' (expected I, II, III, PPT)");
    out.push_back(*id);
  }
  if (out.empty()) throw UsageError("no criterion given");
  return out;
}

StateFamily family_of(const Options& o) {
  StateFamily f;
  f.id = o.family;
  if (std::find(family_ids().begin(), family_ids().end(), f.id) == family_ids().end()) {
    throw UsageError("unknown family '" + f.id + "'");
  }
  f.d = o.d;
  f.n = o.n;
  f.p = o.noise;
  f.alpha = o.alpha;
  f.beta = o.beta;
  f.state_file = o.state_file;
  return f;
}

ProbeSettings probes_of(const Options& o) {
  ProbeSettings p;
  const auto pol = parse_probe_policy(o.probes);
  if (!pol) throw UsageError("unknown probe policy '" + o.probes + "' (expected fixed, basis, optimize)");
  p.policy = *pol;
  p.optimizer.restarts = o.restarts;
  p.optimizer.iterations = o.iterations;
  p.optimizer.seed = o.seed;
  return p;
}

std::optional<Bipartition> partition_of(const Options& o, int parties) {
  if (o.partition.empty()) return std::nullopt;
  std::vector<int> labels;
  for (const auto& tok : split(o.partition, ',')) labels.push_back(std::stoi(tok));
  return Bipartition::from_parties(parties, labels);
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error("cannot write '" + o.out + "'");
  f << text;
}

void add_state_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--family", o.family, "state family: ghz, ghz_noise, w, ghz_w_mix, gghz_qutrit_mix, smolin, custom-file");
  cmd->add_option("--d", o.d, "local dimension");
  cmd->add_option("--n", o.n, "number of parties");
  cmd->add_option("--noise", o.noise, "family weight p (GHZ weight for ghz, noise weight for w)");
  cmd->add_option("--alpha", o.alpha, "first mixing weight");
  cmd->add_option("--beta", o.beta, "second mixing weight");
  cmd->add_option("--state-file", o.state_file, "density matrix JSON (implies --family custom-file)");
}

void add_probe_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--probes", o.probes, "probe policy: fixed, basis, optimize");
  cmd->add_option("--restarts", o.restarts, "optimizer restarts");
  cmd->add_option("--iterations", o.iterations, "optimizer iterations per restart");
  cmd->add_option("--seed", o.seed, "random seed");
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "write output to this file instead of stdout");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

std::string detect_output(const Options& o, const std::vector<CriterionReport<double>>& reps) {
  if (o.format == "csv") {
    std::string s = "crit,lhs,violated\n";
    for (const auto& r : reps) {
      std::ostringstream row;
      row.precision(17);
      row << '"' << result_label(r) << "\"," << r.lhs << ',' << (r.violated ? 1 : 0) << '\n';
      s += row.str();
    }
    return s;
  }
  io::json arr = io::json::array();
  for (const auto& r : reps) arr.push_back(io::to_json(r));
  return arr.dump(2) + "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Genuine multipartite entanglement detection for qudit density matrices"};
  app.require_subcommand(1);
  Options o;

  auto* detect_cmd = app.add_subcommand("detect", "evaluate criteria on one state");
  add_state_flags(detect_cmd, o);
  add_probe_flags(detect_cmd, o);
  add_output_flags(detect_cmd, o);
  detect_cmd->add_option("--criterion", o.criterion, "comma-separated list of I, II, III, PPT");

  auto* scan_cmd = app.add_subcommand("scan", "evaluate criteria over an (alpha, beta) grid");
  add_state_flags(scan_cmd, o);
  add_probe_flags(scan_cmd, o);
  add_output_flags(scan_cmd, o);
  scan_cmd->add_option("--criterion", o.criterion, "comma-separated list of I, II, III, PPT");
  scan_cmd->add_option("--grid", o.grid, "a0:a1:step,b0:b1:step");

  auto* thr_cmd = app.add_subcommand("threshold", "bisect the detection boundary along one parameter");
  add_state_flags(thr_cmd, o);
  add_probe_flags(thr_cmd, o);
  thr_cmd->add_option("--criterion", o.criterion, "one of I, II, III, PPT");
  thr_cmd->add_option("--param", o.param, "p, alpha or beta");
  thr_cmd->add_option("--lo", o.lo, "bracket start");
  thr_cmd->add_option("--hi", o.hi, "bracket end");
  thr_cmd->add_option("--tol", o.tol, "bracket width at termination");
  thr_cmd->add_option("--partition", o.partition, "A side as 1-based labels, e.g. 1,3 (I and PPT)");

  auto* opt_cmd = app.add_subcommand("optimize", "search probe vectors maximizing a criterion");
  add_state_flags(opt_cmd, o);
  add_probe_flags(opt_cmd, o);
  opt_cmd->add_option("--criterion", o.criterion, "I, II or III");
  opt_cmd->add_option("--partition", o.partition, "A side for criterion I, e.g. 1,3");
  opt_cmd->add_option("--out", o.out, "write output to this file instead of stdout");

  auto* oracle_cmd = app.add_subcommand("oracle-check", "fuzz reduced evaluators against brute force");
  oracle_cmd->add_option("--n", o.n, "number of parties");
  oracle_cmd->add_option("--d", o.d, "local dimension");
  oracle_cmd->add_option("--m", o.m, "number of copies");
  oracle_cmd->add_option("--trials", o.trials, "number of random cases");
  oracle_cmd->add_option("--seed", o.seed, "random seed");
  oracle_cmd->add_option("--tol", o.oracle_tol, "largest accepted deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!o.state_file.empty()) o.family = "custom-file";

  try {
    if (detect_cmd->parsed()) {
      const auto rho = build_state(family_of(o));
      emit(o, detect_output(o, detect(rho, criteria_of(o.criterion), probes_of(o))), out);
    } else if (scan_cmd->parsed()) {
      const auto axes = split(o.grid, ',');
      if (axes.size() != 2) throw UsageError("--grid needs two axes: a0:a1:step,b0:b1:step");
      ScanSpec spec;
      spec.family = family_of(o);
      spec.alpha = parse_axis(axes[0]);
      spec.beta = parse_axis(axes[1]);
      spec.criteria = criteria_of(o.criterion);
      spec.probes = probes_of(o);
      const auto res = scan(spec);
      emit(o, o.format == "csv" ? to_csv(res) : to_json(res).dump(2) + "\n", out);
    } else if (thr_cmd->parsed()) {
      ThresholdSpec spec;
      spec.family = family_of(o);
      spec.param = o.param;
      spec.lo = o.lo;
      spec.hi = o.hi;
      const auto crits = criteria_of(o.criterion);
      if (crits.size() != 1) throw UsageError("threshold takes exactly one criterion");
      spec.criterion = crits.front();
      spec.probes = probes_of(o);
      spec.tol = o.tol;
      if (!o.partition.empty()) spec.part = partition_of(o, build_state(spec.family).parties());
      const double t = threshold(spec);
      std::ostringstream s;
      s.precision(17);
      s << t << '\n';
      out << s.str();
    } else if (opt_cmd->parsed()) {
      const auto rho = build_state(family_of(o));
      const auto crits = criteria_of(o.criterion);
      if (crits.size() != 1 || crits.front() == CriterionId::PPT) throw UsageError("optimize takes one of I, II, III");
      OptimizationTarget target{crits.front(), partition_of(o, rho.parties())};
      const auto opt = optimize_violation(rho, target, probes_of(o).optimizer);
      emit(o, io::to_json(opt).dump(2) + "\n", out);
    } else if (oracle_cmd->parsed()) {
      const auto sum = oracle::oracle_check(o.n, o.d, o.m, o.trials, o.seed, o.oracle_tol);
      std::ostringstream s;
      s.precision(3);
      s << "cases " << sum.cases << " max_deviation " << std::scientific << sum.max_deviation << " (I "
        << sum.max_dev_I << ", II " << sum.max_dev_II << ", III " << sum.max_dev_III << ", MLIN " << sum.max_dev_mlin
        << ") " << (sum.passed ? "PASS" : "FAIL") << '\n';
      out << s.str();
      return sum.passed ? kExitOk : kExitOracleFailure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace gme
