#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtsp/cvp.hpp"
#include "qtsp/generators.hpp"
#include "qtsp/io.hpp"
#include "qtsp/linearize.hpp"
#include "qtsp/oracle.hpp"
#include "qtsp/reduction.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qtsp;

constexpr int kExitAffirmative = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

void emit(const ordered_json& report) { std::cout << report.dump(2) << "\n"; }

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

ordered_json stats_to_json(const LinearizeStats& s) {
  ordered_json j;
  j["normalize_seconds"] = s.normalize_seconds;
  j["fast_path_seconds"] = s.fast_path_seconds;
  j["reduce_seconds"] = s.reduce_seconds;
  j["condition1_seconds"] = s.condition1_seconds;
  j["recursion_seconds"] = s.recursion_seconds;
  j["completion_seconds"] = s.completion_seconds;
  j["verify_seconds"] = s.verify_seconds;
  j["total_seconds"] = s.total_seconds;
  j["recursion_depth"] = s.recursion_depth;
  j["eta_evaluations"] = s.eta_evaluations;
  j["verified_tours"] = s.verified_tours;
  j["cleared_null_cells"] = s.cleared_null_cells;
  j["fast_path_used"] = s.fast_path_used;
  return j;
}

ordered_json arc_to_json(Arc a) {
  ordered_json j;
  j["from"] = a.from;
  j["to"] = a.to;
  return j;
}

ordered_json witness_to_json(const NonLinearizableWitness& w) {
  ordered_json j;
  j["kind"] = witness_kind_name(w.kind);
  j["level"] = w.level;
  if (w.pair) {
    j["pair"] = ordered_json::array(
        {arc_to_json(w.pair->first), arc_to_json(w.pair->second)});
  }
  if (w.arc) j["arc"] = arc_to_json(*w.arc);
  if (w.expected_constant) j["expected_constant"] = w.expected_constant->str();
  if (w.check_matrix) j["check_matrix"] = linear_to_json(*w.check_matrix);
  return j;
}

ordered_json rationals_to_json(const std::vector<Rational>& v) {
  ordered_json arr = ordered_json::array();
  for (size_t i = 1; i < v.size(); ++i) arr.push_back(v[i].str());
  return arr;
}

VerifyMode parse_verify_mode(const std::string& text, long* sample_size) {
  if (text == "auto") return VerifyMode::Auto;
  if (text == "exhaustive") return VerifyMode::Exhaustive;
  if (text == "off") return VerifyMode::Off;
  if (text.rfind("sample:", 0) == 0) {
    long n = std::stol(text.substr(7));
    if (n <= 0) throw std::invalid_argument("sample size must be positive");
    *sample_size = n;
    return VerifyMode::Sample;
  }
  throw std::invalid_argument("unknown verify mode '" + text +
                              "' (auto, exhaustive, sample:N, off)");
}

// ---------------------------------------------------------------- linearize

struct LinearizeArgs {
  std::string file;
  bool fast_path = false;
  bool strict = false;
  std::string verify = "auto";
  int threads = 0;
  std::string out;
};

int run_linearize(const LinearizeArgs& args) {
  LinearizeOptions opt;
  opt.fast_path = args.fast_path;
  opt.strict_nulls = args.strict;
  opt.verify = parse_verify_mode(args.verify, &opt.sample_size);
  opt.threads = args.threads;
  QuadraticCostMatrix q = read_quadratic_file(args.file);
  LinearizationOutcome out = linearize(q, opt);
  ordered_json report;
  report["linearizable"] = out.linearizable;
  if (out.linearization)
    report["linearization"] = linear_to_json(*out.linearization);
  if (out.witness) report["witness"] = witness_to_json(*out.witness);
  report["stats"] = stats_to_json(out.stats);
  emit(report);
  if (out.linearization && !args.out.empty())
    write_linear_file(args.out, *out.linearization);
  return out.linearizable ? kExitAffirmative : kExitNegative;
}

// ------------------------------------------------------------------- reduce

struct ReduceArgs {
  std::string file;
  std::string out_quad;
  std::string out_linear;
  bool strict = false;
  bool verify = false;
  int threads = 0;
  int cap = kDefaultEnumerationCap;
};

// "name.json" + tag -> "name.tag.json"; appends when there is no extension.
std::string sibling_path(std::string path, const std::string& tag) {
  const std::string suffix = ".json";
  if (path.size() >= suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
    path.resize(path.size() - suffix.size());
  return path + "." + tag + ".json";
}

int run_reduce(const ReduceArgs& args) {
  QuadraticCostMatrix q = read_quadratic_file(args.file);
  NormalizeResult norm = normalize_structural_zeros(q, args.strict);
  QrfDecomposition dec = qrf_decompose(norm.q, ExecPolicy{args.threads});
  std::string quad_path =
      args.out_quad.empty() ? sibling_path(args.file, "reduced") : args.out_quad;
  std::string lin_path =
      args.out_linear.empty() ? sibling_path(args.file, "linear") : args.out_linear;
  write_quadratic_file(quad_path, dec.reduced);
  write_linear_file(lin_path, dec.linear);
  ordered_json report;
  report["n"] = q.nodes();
  report["reduced_file"] = quad_path;
  report["linear_file"] = lin_path;
  report["reduced_entries"] = dec.reduced.stored_entries();
  report["cleared_null_cells"] = norm.cleared.size();
  if (args.verify) {
    for (const Tour& t : enumerate_tours(q.nodes(), args.cap)) {
      Rational lhs = tour_cost_quadratic(norm.q, t);
      Rational rhs = tour_cost_quadratic(dec.reduced, t) +
                     tour_cost_linear(dec.linear, t);
      if (lhs != rhs) {
        report["verified"] = false;
        report["counterexample"] = t.str();
        emit(report);
        return kExitNegative;
      }
    }
    report["verified"] = true;
    report["tours_checked"] = factorial(q.nodes() - 1);
  }
  emit(report);
  return kExitAffirmative;
}

// ---------------------------------------------------------------------- cvp

struct CvpArgs {
  std::string file;
  std::vector<int> kl;
};

int run_cvp(const CvpArgs& args) {
  LinearCostMatrix m = read_linear_file(args.file);
  ordered_json report;
  bool holds = false;
  if (args.kl.empty()) {
    report["property"] = "constant-tour-value";
    auto cert = weak_sum_decompose(m);
    holds = cert.has_value();
    report["holds"] = holds;
    if (cert) {
      report["constant"] = cert->constant.str();
      report["a"] = rationals_to_json(cert->a);
      report["b"] = rationals_to_json(cert->b);
    }
  } else {
    report["property"] = "arc-owned-constant-tour-value";
    report["k"] = args.kl[0];
    report["l"] = args.kl[1];
    auto cert = kl_cvp_decompose(m, args.kl[0], args.kl[1]);
    holds = cert.has_value();
    report["holds"] = holds;
    if (cert) {
      report["constant"] = cert->constant.str();
      report["a"] = rationals_to_json(cert->a);
      report["b"] = rationals_to_json(cert->b);
    }
  }
  emit(report);
  return holds ? kExitAffirmative : kExitNegative;
}

// ------------------------------------------------------------------- oracle

struct OracleArgs {
  std::string file;
  int cap = kDefaultEnumerationCap;
  std::string out;
};

int run_oracle(const OracleArgs& args) {
  QuadraticCostMatrix q = read_quadratic_file(args.file);
  BruteLinearization out = brute_linearize(q, args.cap);
  ordered_json report;
  report["linearizable"] = out.c.has_value();
  report["tours_checked"] = factorial(q.nodes() - 1);
  if (out.c) report["linearization"] = linear_to_json(*out.c);
  if (out.inconsistent_tour)
    report["inconsistent_tour"] = out.inconsistent_tour->str();
  emit(report);
  if (out.c && !args.out.empty()) write_linear_file(args.out, *out.c);
  return out.c ? kExitAffirmative : kExitNegative;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string quad_file;
  std::string lin_file;
  int cap = kDefaultEnumerationCap;
};

int run_verify(const VerifyArgs& args) {
  QuadraticCostMatrix q = read_quadratic_file(args.quad_file);
  LinearCostMatrix c = read_linear_file(args.lin_file);
  std::optional<Tour> bad = brute_verify(q, c, args.cap);
  ordered_json report;
  report["verified"] = !bad.has_value();
  if (bad) {
    ordered_json cx;
    cx["tour"] = bad->str();
    cx["quadratic_cost"] = tour_cost_quadratic(q, *bad).str();
    cx["linear_cost"] = tour_cost_linear(c, *bad).str();
    report["counterexample"] = std::move(cx);
  } else {
    report["tours_checked"] = factorial(q.nodes() - 1);
  }
  emit(report);
  return bad ? kExitNegative : kExitAffirmative;
}

// ----------------------------------------------------------------- generate

struct GenerateArgs {
  std::string family;
  int n = 0;
  unsigned long long seed = 0;
  std::string density = "1/2";
  std::string epsilon = "1";
  std::string base_family = "diagonal";
  std::string out;
};

GeneratedInstance build_family(const std::string& family, int n,
                               unsigned long long seed,
                               const std::string& density) {
  if (family == "diagonal") return gen_diagonal(n, seed);
  if (family == "tensor_sum") return gen_tensor_sum(n, seed);
  if (family == "row_cvp") return gen_row_cvp(n, seed);
  if (family == "random")
    return gen_random(n, seed, Rational::parse(density));
  throw std::invalid_argument("unknown base family '" + family + "'");
}

int run_generate(const GenerateArgs& args) {
  GeneratedInstance inst{QuadraticCostMatrix(3), std::nullopt, "", 0};
  if (args.family == "perturbed") {
    GeneratedInstance base =
        build_family(args.base_family, args.n, args.seed, args.density);
    inst = perturb(base, Rational::parse(args.epsilon), args.seed + 1);
  } else if (args.family == "equivalence_noise") {
    GeneratedInstance base =
        build_family(args.base_family, args.n, args.seed, args.density);
    inst = gen_equivalence_noise(base, args.seed + 1);
  } else {
    inst = build_family(args.family, args.n, args.seed, args.density);
  }
  inst.seed = args.seed;

  std::string path = args.out.empty()
                         ? "qtsp-" + inst.family + "-n" +
                               std::to_string(args.n) + "-s" +
                               std::to_string(args.seed) + ".json"
                         : args.out;
  InstanceMeta meta;
  meta.family = inst.family;
  meta.seed = args.seed;
  write_quadratic_file(path, inst.q, &meta);
  ordered_json report;
  report["family"] = inst.family;
  report["n"] = inst.q.nodes();
  report["seed"] = args.seed;
  report["file"] = path;
  report["entries"] = inst.q.stored_entries();
  if (inst.planted) {
    std::string planted_path = sibling_path(path, "planted");
    write_linear_file(planted_path, *inst.planted, &meta);
    report["planted_file"] = planted_path;
  }
  emit(report);
  return kExitAffirmative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact decision procedure for quadratic tour-cost matrices: decides "
      "whether a quadratic cost matrix has an equivalent linear one and "
      "constructs it when it does."};
  app.require_subcommand(1);

  LinearizeArgs lin_args;
  CLI::App* lin = app.add_subcommand(
      "linearize", "Decide linearizability and construct a linear matrix");
  lin->add_option("file", lin_args.file, "quadratic instance file")->required();
  lin->add_flag("--fast-path", lin_args.fast_path,
                "try the sufficient row-decomposition test first");
  lin->add_flag("--strict", lin_args.strict,
                "reject nonzero structurally null cells instead of clearing");
  lin->add_option("--verify", lin_args.verify,
                  "result check: auto, exhaustive, sample:N, off");
  lin->add_option("--threads", lin_args.threads,
                  "worker threads (0 = all cores, 1 = serial)");
  lin->add_option("--out", lin_args.out,
                  "write the linearization to this file");

  ReduceArgs red_args;
  CLI::App* red = app.add_subcommand(
      "reduce", "Split into a reduced quadratic part plus a linear part");
  red->add_option("file", red_args.file, "quadratic instance file")->required();
  red->add_option("--out-quad", red_args.out_quad,
                  "reduced matrix output (default: <file>.reduced.json)");
  red->add_option("--out-linear", red_args.out_linear,
                  "linear part output (default: <file>.linear.json)");
  red->add_flag("--strict", red_args.strict,
                "reject nonzero structurally null cells instead of clearing");
  red->add_flag("--verify", red_args.verify,
                "re-check the tour-cost identity by enumeration");
  red->add_option("--cap", red_args.cap, "node cap for --verify enumeration");
  red->add_option("--threads", red_args.threads,
                  "worker threads (0 = all cores, 1 = serial)");

  CvpArgs cvp_args;
  CLI::App* cvp = app.add_subcommand(
      "cvp", "Test a linear matrix for the constant-tour-value property");
  cvp->add_option("file", cvp_args.file, "linear instance file")->required();
  cvp->add_option("--kl", cvp_args.kl,
                  "test the arc-owned variant for arc k,l (two integers)")
      ->expected(2)
      ->delimiter(',');

  OracleArgs ora_args;
  CLI::App* ora = app.add_subcommand(
      "oracle", "Decide by exhaustive tour enumeration (small n only)");
  ora->add_option("file", ora_args.file, "quadratic instance file")->required();
  ora->add_option("--cap", ora_args.cap, "largest allowed node count");
  ora->add_option("--out", ora_args.out,
                  "write the enumerated linearization to this file");

  VerifyArgs ver_args;
  CLI::App* ver = app.add_subcommand(
      "verify", "Check a proposed linearization against every tour");
  ver->add_option("quad-file", ver_args.quad_file, "quadratic instance file")
      ->required();
  ver->add_option("lin-file", ver_args.lin_file, "linear instance file")
      ->required();
  ver->add_option("--cap", ver_args.cap, "largest allowed node count");

  GenerateArgs gen_args;
  CLI::App* gen =
      app.add_subcommand("generate", "Write a seeded test instance file");
  gen->add_option("--family", gen_args.family,
                  "diagonal, tensor_sum, row_cvp, random, perturbed, "
                  "equivalence_noise")
      ->required();
  gen->add_option("--n", gen_args.n, "node count")->required();
  gen->add_option("--seed", gen_args.seed, "instance seed")->required();
  gen->add_option("--density", gen_args.density,
                  "fill probability for the random family (rational)");
  gen->add_option("--epsilon", gen_args.epsilon,
                  "perturbation size for the perturbed family (rational)");
  gen->add_option("--base-family", gen_args.base_family,
                  "underlying family for perturbed / equivalence_noise");
  gen->add_option("--out", gen_args.out, "output file name");

  int rc = kExitAffirmative;
  lin->callback([&] { rc = run_linearize(lin_args); });
  red->callback([&] { rc = run_reduce(red_args); });
  cvp->callback([&] { rc = run_cvp(cvp_args); });
  ora->callback([&] { rc = run_oracle(ora_args); });
  ver->callback([&] { rc = run_verify(ver_args); });
  gen->callback([&] { rc = run_generate(gen_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return rc;
}
