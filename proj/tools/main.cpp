// genent: batch CLI for the genuine multi-qubit entanglement toolkit.
//
// Exit codes: 0 success, 1 property-suite failure, 2 input error, 3 domain
// error (odd register, invalid range, ...).

#include <CLI11.hpp>
#include <algorithm>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "genent/io.hpp"
#include "genent/ising.hpp"
#include "genent/measure.hpp"
#include "genent/parallel.hpp"
#include "genent/rng.hpp"
#include "genent/slocc.hpp"

using namespace genent;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitDomainError = 3;

constexpr double kNonnegativityTol = 1e-10;

RngSeed resolve_seed(const CLI::Option* seed_opt, RngSeed flag_value) {
  if (seed_opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("GENENT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      raise(errc::bad_input, "GENENT_SEED is not an unsigned integer");
    }
  }
  return 1;
}

// Complex literals for builtin specs: "2", "-0.5", "i", "-i", "1+2i",
// "0.5-0.25i", "1e-3+2e-2i".
cplx parse_complex(std::string text) {
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  if (text.empty()) raise(errc::bad_input, "empty complex literal");

  auto to_double = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) raise(errc::bad_input, "bad numeric literal: " + s);
    return v;
  };

  if (text.back() != 'i') return cplx{to_double(text), 0.0};

  const std::string body = text.substr(0, text.size() - 1);
  // Split at the last +/- that is neither leading nor an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t pos = body.size(); pos-- > 1;) {
    const char c = body[pos];
    if ((c == '+' || c == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E') {
      split = pos;
      break;
    }
  }
  if (split == std::string::npos) return cplx{0.0, to_double(body)};
  return cplx{to_double(body.substr(0, split)), to_double(body.substr(split))};
}

PureState parse_builtin(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    raise(errc::bad_input, "builtin spec must look like name:args");
  const std::string name = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);

  if (name == "ghz" || name == "w") {
    int n = 0;
    try {
      n = std::stoi(args);
    } catch (const std::exception&) {
      raise(errc::bad_input, "builtin arity is not an integer: " + args);
    }
    return name == "ghz" ? ghz(n) : w_state(n);
  }
  if (name == "gabcd") {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = args.find(',', start);
      parts.push_back(args.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (parts.size() != 4) raise(errc::bad_input, "gabcd needs four parameters");
    return g_abcd(GAbcdParams{parse_complex(parts[0]), parse_complex(parts[1]),
                              parse_complex(parts[2]), parse_complex(parts[3])});
  }
  raise(errc::bad_input, "unknown builtin: " + name);
}

json matrix_to_json(const Eigen::Matrix2cd& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------- measure

struct MeasureOptions {
  std::string builtin;
  std::string file;
};

int cmd_measure(const MeasureOptions& opt) {
  PureState state = [&] {
    try {
      return opt.file.empty() ? parse_builtin(opt.builtin) : load_state_file(opt.file);
    } catch (const Error& e) {
      // Bad arities (ghz:1) and annihilated builtins are domain errors;
      // anything unreadable or malformed is an input error.
      if (e.code() == errc::bad_arity || e.code() == errc::zero_vector) throw;
      std::cerr << e.what() << "\n";
      std::exit(kExitInputError);
    } catch (const json::exception& e) {
      std::cerr << "state file parse error: " << e.what() << "\n";
      std::exit(kExitInputError);
    }
  }();

  const MeasureReport report = genuine_entanglement(state);
  if (report.value > 1.0 + 1e-9)
    std::cerr << "note: measure value " << report.value
              << " exceeds the conjectured bound 1\n";
  std::cout << report_to_json(report).dump(2) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------ random-scan

struct ScanOptions {
  int n = 4;
  long long count = 10000;
  RngSeed seed = 1;
  int jobs = 1;
};

int cmd_random_scan(const ScanOptions& opt) {
  if (opt.count < 1) raise(errc::bad_input, "count must be at least 1");
  if (opt.n % 2 != 0) raise(errc::odd_arity, "scan register must be even");

  std::vector<double> values(static_cast<std::size_t>(opt.count));
  parallel_for(values.size(), opt.jobs, [&](std::size_t i) {
    const PureState psi = haar_random_state(opt.n, mix_seed(opt.seed, i));
    values[i] = genuine_entanglement(psi).value;
  });

  ScanSummary summary;
  summary.n_states = opt.count;
  summary.seed = opt.seed;
  summary.min_E = values[0];
  summary.max_E = values[0];
  for (double v : values) {
    summary.min_E = std::min(summary.min_E, v);
    summary.max_E = std::max(summary.max_E, v);
    if (v < -kNonnegativityTol) ++summary.negatives_below_tolerance;
  }
  std::cout << scan_to_json(summary).dump(2) << "\n";
  return summary.negatives_below_tolerance == 0 ? kExitOk : kExitSuiteFailure;
}

// ----------------------------------------------------------------- verify

struct SuiteResult {
  long long checked = 0;
  long long failures = 0;
  double worst_residual = 0.0;
  json counterexample;

  void record(double residual, double tol, const std::function<json()>& describe) {
    ++checked;
    worst_residual = std::max(worst_residual, residual);
    if (residual > tol) {
      ++failures;
      if (counterexample.is_null()) counterexample = describe();
    }
  }

  json to_json() const {
    json out{{"checked", checked},
             {"failures", failures},
             {"worst_residual", worst_residual}};
    if (!counterexample.is_null()) out["counterexample"] = counterexample;
    return out;
  }
};

struct VerifyOptions {
  std::vector<std::string> suites;
  long long covariance_samples = 1000;
  long long monotonicity_samples = 1000;
  long long normal_form_samples = 1000;
  long long diagram_samples = 500;
  int counting_n = 8;
  RngSeed seed = 1;
  // Optional override of every suite threshold; the defaults below are the
  // contract values.
  double tol_override = -1.0;
  // When nonzero, rerun covariance/monotonicity at this register size as an
  // exploratory pass: reported, never asserted. The contract checks stay at
  // n = 4.
  int exploratory_n = 0;
};

double suite_tol(const VerifyOptions& opt, double default_tol) {
  return opt.tol_override >= 0.0 ? opt.tol_override : default_tol;
}

SuiteResult run_covariance_suite(const VerifyOptions& opt, int n_qubits) {
  const double tol = suite_tol(opt, 1e-9);
  SuiteResult result;
  for (long long i = 0; i < opt.covariance_samples; ++i) {
    auto rng = make_rng(mix_seed(opt.seed, static_cast<std::uint64_t>(i)));
    const PureState psi = haar_random_state(n_qubits, rng);
    const SL2Op op = random_sl2(1 + static_cast<int>(rng() % n_qubits), rng);
    const CovarianceCheck check = check_slocc_covariance(psi, op);
    result.record(check.residual, tol, [&] {
      return json{{"sample", i},
                  {"state", state_to_json(psi)},
                  {"operator",
                   {{"target", op.target}, {"matrix", matrix_to_json(op.composed())}}},
                  {"lhs", check.lhs},
                  {"rhs", check.rhs},
                  {"residual", check.residual}};
    });
  }
  return result;
}

SuiteResult run_monotonicity_suite(const VerifyOptions& opt, int n_qubits) {
  const double tol = suite_tol(opt, 1e-9);
  SuiteResult result;
  for (long long i = 0; i < opt.monotonicity_samples; ++i) {
    auto rng = make_rng(mix_seed(opt.seed, static_cast<std::uint64_t>(i)));
    const PureState psi = haar_random_state(n_qubits, rng);
    const PovmPair povm = random_povm(1 + static_cast<int>(rng() % n_qubits), rng);
    const MonotonicityCheck check = check_monotonicity(psi, povm);
    result.record(std::max(0.0, -check.slack), tol, [&] {
      return json{{"sample", i},
                  {"state", state_to_json(psi)},
                  {"povm",
                   {{"target", povm.target},
                    {"m1", matrix_to_json(povm.m1)},
                    {"m2", matrix_to_json(povm.m2)}}},
                  {"average", check.average},
                  {"original", check.original},
                  {"slack", check.slack}};
    });
  }
  return result;
}

SuiteResult run_normal_form_suite(const VerifyOptions& opt) {
  const double tol = suite_tol(opt, 1e-10);
  SuiteResult result;
  for (long long i = 0; i < opt.normal_form_samples; ++i) {
    auto rng = make_rng(mix_seed(opt.seed, static_cast<std::uint64_t>(i)));
    const GAbcdParams params = random_g_abcd(rng);
    const NormalFormReport report = check_normal_form_properties(params);

    // Also exercise the quartic inequality behind the nonnegativity proof.
    std::normal_distribution<double> gauss(0.0, 1.0);
    cplx x[4];
    for (cplx& v : x) v = cplx{gauss(rng), gauss(rng)};
    double lhs = 0.0, rhs = 0.0;
    for (int k = 0; k < 4; ++k) lhs += std::norm(x[k]) * std::norm(x[k]);
    for (int k = 0; k < 4; ++k)
      for (int l = k + 1; l < 4; ++l) {
        lhs += std::norm(x[k] * std::conj(x[l]) + std::conj(x[k]) * x[l]);
        rhs += 2.0 * std::norm(x[k]) * std::norm(x[l]);
      }
    const double quartic_violation = std::max(0.0, rhs - lhs);

    const double residual =
        std::max({report.worst_single_partition_dev, report.worst_purity_t_dev,
                  std::max(0.0, -report.measure_value), quartic_violation});
    result.record(residual, tol, [&] {
      return json{{"sample", i},
                  {"params",
                   {{"a", {params.a.real(), params.a.imag()}},
                    {"b", {params.b.real(), params.b.imag()}},
                    {"c", {params.c.real(), params.c.imag()}},
                    {"d", {params.d.real(), params.d.imag()}}}},
                  {"product", report.product},
                  {"worst_single_partition_dev", report.worst_single_partition_dev},
                  {"worst_purity_t_dev", report.worst_purity_t_dev},
                  {"measure_value", report.measure_value},
                  {"quartic_violation", quartic_violation}};
    });
  }
  return result;
}

SuiteResult run_counting_suite(const VerifyOptions& opt) {
  const int n = opt.counting_n;
  if (n % 2 != 0) raise(errc::odd_arity, "counting needs an even register");
  if (n < 4 || n > 16) raise(errc::bad_input, "counting register must be in 4..16");

  SuiteResult result;
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t sub = 1; sub <= full; ++sub) {
    if (std::popcount(sub) < 2) continue;
    const ContributionTally tally = contribution_tally(n, QubitSubset::from_mask(sub, n));
    const long long expected = sub == full ? 1 : 0;
    const double deviation =
        std::abs(static_cast<double>(tally.count_I - tally.count_II - expected));
    result.record(deviation, 0.0, [&] {
      return json{{"n", n},
                  {"subset_mask", sub},
                  {"count_I", tally.count_I},
                  {"count_II", tally.count_II},
                  {"expected_difference", expected}};
    });
  }
  return result;
}

// Independent route for the three-qubit closure: the degree-4 polynomial
// invariant, kept on the verification side on purpose.
double three_tangle_poly(const PureState& psi) {
  auto a = [&](int i, int j, int k) -> cplx {
    return psi[static_cast<std::size_t>((i << 2) | (j << 1) | k)];
  };
  auto sq = [](cplx z) { return z * z; };
  const cplx d1 = sq(a(0, 0, 0)) * sq(a(1, 1, 1)) + sq(a(0, 0, 1)) * sq(a(1, 1, 0)) +
                  sq(a(0, 1, 0)) * sq(a(1, 0, 1)) + sq(a(1, 0, 0)) * sq(a(0, 1, 1));
  const cplx d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
                  a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                  a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
                  a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                  a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
                  a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
  const cplx d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
                  a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

SuiteResult run_diagram_suite(const VerifyOptions& opt) {
  const double tol = suite_tol(opt, 1e-9);
  SuiteResult result;
  for (long long i = 0; i < opt.diagram_samples; ++i) {
    const PureState psi =
        haar_random_state(3, mix_seed(opt.seed, static_cast<std::uint64_t>(i)));
    const double s_1_23 =
        nonlocal_info(psi, Bipartition::from_mask(0b001, 3), factorize(psi)).value;
    const Eigen::Matrix4cd rho12 = detail::reduced_density(psi, 0b011u);
    const Eigen::Matrix4cd rho13 = detail::reduced_density(psi, 0b101u);
    const double closure = concurrence_squared(rho12) + concurrence_squared(rho13) +
                           three_tangle_poly(psi);
    const double residual = std::abs(s_1_23 - closure);
    result.record(residual, tol, [&] {
      return json{{"sample", i},
                  {"state", state_to_json(psi)},
                  {"S_1_23", s_1_23},
                  {"closure", closure},
                  {"residual", residual}};
    });
  }
  return result;
}

int cmd_verify(const VerifyOptions& opt) {
  if (opt.suites.empty()) raise(errc::bad_input, "select at least one suite");
  if (opt.exploratory_n != 0 &&
      (opt.exploratory_n % 2 != 0 || opt.exploratory_n < 4 || opt.exploratory_n > 10))
    raise(errc::bad_input, "exploratory register must be even and in 4..10");

  json output;
  bool failed = false;
  for (const std::string& suite : opt.suites) {
    SuiteResult result;
    if (suite == "covariance")
      result = run_covariance_suite(opt, 4);
    else if (suite == "monotonicity")
      result = run_monotonicity_suite(opt, 4);
    else if (suite == "normal-form")
      result = run_normal_form_suite(opt);
    else if (suite == "counting")
      result = run_counting_suite(opt);
    else if (suite == "diagram")
      result = run_diagram_suite(opt);
    else
      raise(errc::bad_input, "unknown suite: " + suite);
    failed = failed || result.failures > 0;
    output[suite] = result.to_json();

    // Exploratory reruns at larger registers are reported but never decide
    // the exit status.
    if (opt.exploratory_n != 0 && (suite == "covariance" || suite == "monotonicity")) {
      SuiteResult exploratory = suite == "covariance"
                                    ? run_covariance_suite(opt, opt.exploratory_n)
                                    : run_monotonicity_suite(opt, opt.exploratory_n);
      json j = exploratory.to_json();
      j["asserted"] = false;
      j["n"] = opt.exploratory_n;
      output[suite + "_exploratory"] = std::move(j);
    }
  }
  std::cout << output.dump(2) << "\n";
  return failed ? kExitSuiteFailure : kExitOk;
}

// ------------------------------------------------------------- ising-sweep

struct SweepOptions {
  std::string n_list = "4,6,8,10";
  std::string h_range = "0.2:2.0:0.05";
  std::string out_dir = ".";
  int jobs = 1;
};

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma - start);
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      raise(errc::bad_input, "bad chain length: " + item);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) raise(errc::bad_input, "empty chain-length list");
  return out;
}

std::vector<double> parse_h_grid(const std::string& text) {
  const std::size_t c1 = text.find(':');
  const std::size_t c2 =
      c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    raise(errc::bad_input, "field range must look like start:end:step");
  double start = 0.0, end = 0.0, step = 0.0;
  try {
    start = std::stod(text.substr(0, c1));
    end = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    step = std::stod(text.substr(c2 + 1));
  } catch (const std::exception&) {
    raise(errc::bad_input, "field range must look like start:end:step");
  }
  if (!(start > 0.0) || !(step > 0.0) || end < start)
    raise(errc::invalid_range, "field range needs 0 < start <= end and step > 0");

  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double h = start + i * step;
    if (h > end + 1e-9 * step) break;
    grid.push_back(h);
  }
  return grid;
}

int cmd_ising_sweep(const SweepOptions& opt) {
  const std::vector<int> sizes = parse_n_list(opt.n_list);
  const std::vector<double> grid = parse_h_grid(opt.h_range);
  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);

  for (int n : sizes) {
    const auto rows = sweep(n, grid, opt.jobs);
    const std::string csv = (dir / ("ising_N" + std::to_string(n) + ".csv")).string();
    const std::string dat = (dir / ("ising_N" + std::to_string(n) + ".dat")).string();
    write_ising_csv(rows, csv);
    write_ising_dat(rows, dat);
    std::cout << csv << "\n" << dat << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"genuine multi-qubit entanglement toolkit"};
  app.require_subcommand(1);

  // measure
  MeasureOptions measure_opt;
  CLI::App* measure = app.add_subcommand(
      "measure", "measure a state from a file or builtin (JSON report on stdout)");
  CLI::Option* builtin_flag =
      measure->add_option("--builtin", measure_opt.builtin,
                          "builtin spec: ghz:<n>, w:<n>, gabcd:<a>,<b>,<c>,<d>");
  CLI::Option* file_flag =
      measure->add_option("--file", measure_opt.file, "state JSON file");
  builtin_flag->excludes(file_flag);

  // random-scan
  ScanOptions scan_opt;
  CLI::App* scan =
      app.add_subcommand("random-scan", "sample Haar states and summarize the measure");
  scan->add_option("--n", scan_opt.n, "register size (even)")->required();
  scan->add_option("--count", scan_opt.count, "number of states (default 10000)");
  CLI::Option* scan_seed = scan->add_option("--seed", scan_opt.seed, "RNG seed");
  scan->add_option("--jobs", scan_opt.jobs, "worker threads");

  // verify
  VerifyOptions verify_opt;
  long long all_samples = 0;
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("suites", verify_opt.suites,
                     "any of: covariance monotonicity normal-form counting diagram");
  CLI::Option* samples_flag =
      verify->add_option("--samples", all_samples, "sample count for every suite");
  verify->add_option("--covariance-samples", verify_opt.covariance_samples,
                     "samples for the covariance suite");
  verify->add_option("--monotonicity-samples", verify_opt.monotonicity_samples,
                     "samples for the monotonicity suite");
  verify->add_option("--normal-form-samples", verify_opt.normal_form_samples,
                     "samples for the normal-form suite");
  verify->add_option("--diagram-samples", verify_opt.diagram_samples,
                     "samples for the diagram suite");
  verify->add_option("--n", verify_opt.counting_n, "register for the counting suite");
  CLI::Option* verify_seed = verify->add_option("--seed", verify_opt.seed, "RNG seed");
  verify->add_option("--tol", verify_opt.tol_override,
                     "override the per-suite pass thresholds");
  verify->add_option("--exploratory-n", verify_opt.exploratory_n,
                     "also run covariance/monotonicity at this register size, "
                     "reported without assertion");

  // counting (stand-alone front for the counting suite)
  VerifyOptions counting_opt;
  counting_opt.suites = {"counting"};
  CLI::App* counting = app.add_subcommand("counting", "exhaustive split-count identity");
  counting->add_option("--n", counting_opt.counting_n, "register size (even)");

  // ising-sweep
  SweepOptions sweep_opt;
  CLI::App* ising =
      app.add_subcommand("ising-sweep", "ground-state measure vs transverse field");
  ising->set_help_flag("--help", "print help");  // frees -h/--h for the field grid
  ising->add_option("--n", sweep_opt.n_list, "comma list of even chain lengths");
  ising->add_option("--h", sweep_opt.h_range, "field grid start:end:step");
  ising->add_option("--out", sweep_opt.out_dir, "output directory (default .)");
  ising->add_option("--jobs", sweep_opt.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (measure->parsed()) {
      if (measure_opt.builtin.empty() == measure_opt.file.empty())
        raise(errc::bad_input, "measure needs exactly one of --builtin or --file");
      return cmd_measure(measure_opt);
    }
    if (scan->parsed()) {
      scan_opt.seed = resolve_seed(scan_seed, scan_opt.seed);
      return cmd_random_scan(scan_opt);
    }
    if (verify->parsed()) {
      verify_opt.seed = resolve_seed(verify_seed, verify_opt.seed);
      if (samples_flag->count() > 0) {
        if (all_samples < 1) raise(errc::bad_input, "sample count must be positive");
        verify_opt.covariance_samples = all_samples;
        verify_opt.monotonicity_samples = all_samples;
        verify_opt.normal_form_samples = all_samples;
        verify_opt.diagram_samples = all_samples;
      }
      return cmd_verify(verify_opt);
    }
    if (counting->parsed()) return cmd_verify(counting_opt);
    if (ising->parsed()) return cmd_ising_sweep(sweep_opt);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == errc::bad_input ? kExitInputError : kExitDomainError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
