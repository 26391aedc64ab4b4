// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Budgets and tolerances are pinned here in code.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "qtsp/cvp.hpp"
#include "qtsp/generators.hpp"
#include "qtsp/io.hpp"
#include "qtsp/linearize.hpp"
#include "qtsp/oracle.hpp"
#include "qtsp/reduction.hpp"
#include "qtsp/rng.hpp"

using namespace qtsp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
  std::printf("%s: %s (%s)\n", name, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

QuadraticCostMatrix cleaned(const QuadraticCostMatrix& q) {
  return normalize_structural_zeros(q, false).q;
}

// A deterministic pool of instances spanning every generator family.
std::vector<GeneratedInstance> family_pool(int n, unsigned long base_seed,
                                           int per_family) {
  std::vector<GeneratedInstance> pool;
  for (int i = 0; i < per_family; ++i) {
    unsigned long s = base_seed + static_cast<unsigned long>(i);
    pool.push_back(gen_diagonal(n, s));
    pool.push_back(gen_tensor_sum(n, s));
    pool.push_back(gen_row_cvp(n, s));
    pool.push_back(gen_equivalence_noise(gen_diagonal(n, s + 1000), s));
    pool.push_back(gen_random(n, s, Rational(1, 2)));
    pool.push_back(perturb(gen_diagonal(n, s + 2000), Rational(1), s));
  }
  return pool;
}

bool confirm_witness(const NonLinearizableWitness& w) {
  switch (w.kind) {
    case WitnessKind::PairConstantMismatch: {
      if (!w.pair || !w.level_matrix) return false;
      LinearCostMatrix p = z_matrix(*w.level_matrix, w.pair->first) -
                           z_matrix(*w.level_matrix, w.pair->second);
      std::set<Rational> values;
      for (const Tour& t : enumerate_tours(w.level))
        if (t.contains(w.pair->first) && t.contains(w.pair->second))
          values.insert(tour_cost_linear(p, t));
      return values.size() >= 2;
    }
    case WitnessKind::ResidualNotZeroCvp: {
      if (!w.check_matrix) return false;
      auto c = brute_cvp(*w.check_matrix);
      return !c.has_value() || c->constant != Rational(0);
    }
    case WitnessKind::ArcConsistencyMismatch: {
      if (!w.arc || !w.check_matrix || !w.expected_constant) return false;
      auto c = brute_kl_cvp(*w.check_matrix, w.arc->from, w.arc->to);
      return !c.has_value() || c->constant != *w.expected_constant;
    }
  }
  return false;
}

QuadraticCostMatrix transpose_of(const QuadraticCostMatrix& q) {
  QuadraticCostMatrix out(q.nodes());
  for (const QuadEntry& e : q.entries_sorted()) out.set(e.k, e.l, e.i, e.j, e.v);
  return out;
}

QuadraticCostMatrix symmetrized(const QuadraticCostMatrix& q) {
  QuadraticCostMatrix out(q.nodes());
  for (const QuadEntry& e : q.entries_sorted()) {
    out.add(e.i, e.j, e.k, e.l, e.v / Rational(2));
    out.add(e.k, e.l, e.i, e.j, e.v / Rational(2));
  }
  return out;
}

QuadraticCostMatrix skew_part(int n, unsigned long seed) {
  SeededRng rng(seed);
  QuadraticCostMatrix s(n);
  for (int draws = 0; draws < 30; ++draws) {
    Arc e = arc_at(static_cast<int>(rng.bounded(0, n * (n - 1) - 1)), n);
    Arc f = arc_at(static_cast<int>(rng.bounded(0, n * (n - 1) - 1)), n);
    if (!cotour_compatible(e, f)) continue;
    Rational v(rng.bounded(1, 9));
    s.add(e, f, v);
    s.add(f, e, -v);
  }
  return s;
}

QuadraticCostMatrix plus_noise(const QuadraticCostMatrix& q,
                               unsigned long seed) {
  SeededRng rng(seed);
  const int n = q.nodes();
  QuadraticCostMatrix out = q;
  for (int idx = 0; idx < n * (n - 1); ++idx) {
    Arc a = arc_at(idx, n);
    out.add(a, a, Rational(rng.bounded(-9, 9)));
  }
  QuadraticCostMatrix s = skew_part(n, seed + 1);
  for (const QuadEntry& e : s.entries_sorted()) out.add(e.i, e.j, e.k, e.l, e.v);
  return out;
}

// ----------------------------------------------------------------- criteria

void criterion1_oracle_agreement() {
  auto t0 = Clock::now();
  const double budget = 120.0;
  long instances = 0, mismatches = 0, tour_mismatches = 0;
  for (int n : {4, 5, 6}) {
    auto tours = enumerate_tours(n);
    for (const GeneratedInstance& gi : family_pool(n, 100, 18)) {  // 108 per n
      ++instances;
      LinearizationOutcome fast = linearize(gi.q);
      BruteLinearization slow = brute_linearize(cleaned(gi.q));
      if (fast.linearizable != slow.c.has_value()) {
        ++mismatches;
        continue;
      }
      if (fast.linearizable)
        for (const Tour& t : tours)
          if (tour_cost_linear(*fast.linearization, t) !=
              tour_cost_linear(*slow.c, t))
            ++tour_mismatches;
    }
  }
  double dt = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%ld instances, %ld verdict mismatches, %ld tour mismatches, "
                "%.1fs, budget %.0fs",
                instances, mismatches, tour_mismatches, dt, budget);
  report("C1 oracle-agreement", mismatches == 0 && tour_mismatches == 0 &&
                                    dt < budget && instances >= 300,
         detail);
}

void criterion2_round_trip() {
  auto t0 = Clock::now();
  const double budget = 300.0;
  long instances = 0, rejected = 0, bad = 0;
  for (int n = 4; n <= 7; ++n) {
    for (unsigned long s = 0; s < 50; ++s) {
      GeneratedInstance batch[] = {
          gen_diagonal(n, 200 + s), gen_tensor_sum(n, 200 + s),
          gen_row_cvp(n, 200 + s),
          gen_equivalence_noise(gen_tensor_sum(n, 300 + s), s)};
      for (const GeneratedInstance& gi : batch) {
        ++instances;
        LinearizationOutcome out = linearize(gi.q);
        if (!out.linearizable) {
          ++rejected;
          continue;
        }
        if (brute_verify(cleaned(gi.q), *out.linearization).has_value()) ++bad;
      }
    }
  }
  double dt = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%ld planted instances, %ld rejected, %ld failed exhaustive "
                "verify, %.1fs, budget %.0fs",
                instances, rejected, bad, dt, budget);
  report("C2 planted-round-trip",
         rejected == 0 && bad == 0 && dt < budget && instances == 800, detail);
}

void criterion3_reduction_identity() {
  auto t0 = Clock::now();
  const double budget = 120.0;
  long instances = 0, bad = 0;
  for (int n = 4; n <= 7; ++n) {
    auto tours = enumerate_tours(n);
    for (unsigned long s = 0; s < 50; ++s) {
      QuadraticCostMatrix q = cleaned(gen_random(n, 400 + s, Rational(1, 2)).q);
      ++instances;
      QrfDecomposition dec = qrf_decompose(q);
      for (const Tour& t : tours)
        if (tour_cost_quadratic(q, t) !=
            tour_cost_quadratic(dec.reduced, t) +
                tour_cost_linear(dec.linear, t)) {
          ++bad;
          break;
        }
    }
  }
  double dt = seconds_since(t0);
  char detail[120];
  std::snprintf(detail, sizeof detail,
                "%ld instances, %ld identity failures, %.1fs, budget %.0fs",
                instances, bad, dt, budget);
  report("C3 reduction-identity",
         bad == 0 && dt < budget && instances == 200, detail);
}

void criterion4_cvp_agreement() {
  auto t0 = Clock::now();
  const double budget = 60.0;
  long matrices = 0, cvp_bad = 0, kl_bad = 0;
  for (int m = 3; m <= 7; ++m) {
    SeededRng rng(500 + static_cast<unsigned long>(m));
    for (int rep = 0; rep < 200; ++rep) {
      ++matrices;
      LinearCostMatrix mat(m);
      if (rep % 2 == 0) {
        for (int i = 1; i <= m; ++i)
          for (int j = 1; j <= m; ++j)
            if (i != j) mat.set(i, j, Rational(rng.bounded(-9, 9)));
      } else {  // planted weak sum, half with one cell knocked out
        std::vector<Rational> a(m + 1), b(m + 1);
        for (int i = 1; i <= m; ++i) a[i] = Rational(rng.bounded(-9, 9));
        for (int i = 1; i <= m; ++i) b[i] = Rational(rng.bounded(-9, 9));
        for (int i = 1; i <= m; ++i)
          for (int j = 1; j <= m; ++j)
            if (i != j) mat.set(i, j, a[i] + b[j]);
        if (rep % 4 == 1)
          mat.set(1, 2, mat.at(1, 2) + Rational(rng.bounded(1, 5)));
      }
      auto fast = cvp_constant(mat);
      auto slow = brute_cvp(mat);
      if (fast.has_value() != slow.has_value() ||
          (fast && *fast != slow->constant))
        ++cvp_bad;
      for (int pair = 0; pair < 3; ++pair) {
        int k = 1 + static_cast<int>(rng.bounded(0, m - 1));
        int l = 1 + static_cast<int>(rng.bounded(0, m - 1));
        if (k == l) l = (l % m) + 1;
        auto fkl = kl_cvp_decompose(mat, k, l);
        auto skl = brute_kl_cvp(mat, k, l);
        if (fkl.has_value() != skl.has_value() ||
            (fkl && fkl->constant != skl->constant))
          ++kl_bad;
      }
    }
  }
  double dt = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%ld matrices, %ld full-property disagreements, %ld arc-owned "
                "disagreements, %.1fs, budget %.0fs",
                matrices, cvp_bad, kl_bad, dt, budget);
  report("C4 cvp-brute-agreement",
         cvp_bad == 0 && kl_bad == 0 && dt < budget && matrices == 1000,
         detail);
}

void criterion5_metamorphic() {
  auto t0 = Clock::now();
  long checks = 0, bad_verdict = 0, bad_tour = 0;
  for (int n : {4, 5, 6}) {
    auto tours = enumerate_tours(n);
    std::vector<QuadraticCostMatrix> bases;
    for (unsigned long s = 1; s <= 3; ++s) {
      bases.push_back(cleaned(gen_tensor_sum(n, 600 + s).q));
      bases.push_back(cleaned(gen_random(n, 600 + s, Rational(1, 2)).q));
      if (n >= 5)
        bases.push_back(
            cleaned(perturb(gen_diagonal(n, 600 + s), Rational(1), s).q));
    }
    for (size_t b = 0; b < bases.size(); ++b) {
      const QuadraticCostMatrix& q = bases[b];
      bool verdict = linearize(q).linearizable;
      unsigned long noise_seed = 700 + static_cast<unsigned long>(b);
      for (const QuadraticCostMatrix& variant :
           {transpose_of(q), symmetrized(q), plus_noise(q, noise_seed)}) {
        ++checks;
        if (linearize(variant).linearizable != verdict) ++bad_verdict;
      }
      // Adding only the skew part never changes any tour cost.
      QuadraticCostMatrix with_skew = q;
      for (const QuadEntry& e : skew_part(n, noise_seed).entries_sorted())
        with_skew.add(e.i, e.j, e.k, e.l, e.v);
      for (const Tour& t : tours)
        if (tour_cost_quadratic(q, t) != tour_cost_quadratic(with_skew, t)) {
          ++bad_tour;
          break;
        }
    }
  }
  double dt = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%ld transformed verdicts, %ld verdict flips, %ld skew tour "
                "changes, %.1fs",
                checks, bad_verdict, bad_tour, dt);
  report("C5 metamorphic-invariance", bad_verdict == 0 && bad_tour == 0,
         detail);
}

void criterion6_subspace_closure() {
  auto t0 = Clock::now();
  long combos = 0, rejected = 0, bad = 0;
  SeededRng rng(800);
  for (int rep = 0; rep < 50; ++rep) {
    ++combos;
    GeneratedInstance parts[] = {
        gen_diagonal(5, 800 + static_cast<unsigned long>(rep)),
        gen_tensor_sum(5, 800 + static_cast<unsigned long>(rep)),
        gen_row_cvp(5, 800 + static_cast<unsigned long>(rep))};
    QuadraticCostMatrix combo(5);
    for (const GeneratedInstance& gi : parts) {
      Rational coeff(rng.bounded(-6, 6), rng.bounded(1, 4));
      for (const QuadEntry& e : gi.q.entries_sorted())
        combo.add(e.i, e.j, e.k, e.l, coeff * e.v);
    }
    LinearizationOutcome out = linearize(combo);
    if (!out.linearizable) {
      ++rejected;
      continue;
    }
    if (brute_verify(cleaned(combo), *out.linearization).has_value()) ++bad;
  }
  double dt = seconds_since(t0);
  char detail[140];
  std::snprintf(detail, sizeof detail,
                "%ld rational combinations, %ld rejected, %ld failed verify, "
                "%.1fs",
                combos, rejected, bad, dt);
  report("C6 subspace-closure", rejected == 0 && bad == 0 && combos == 50,
         detail);
}

void criterion7_three_node_base() {
  auto t0 = Clock::now();
  long instances = 0, rejected = 0, bad = 0;
  SeededRng rng(900);
  for (int rep = 0; rep < 100; ++rep) {
    ++instances;
    QuadraticCostMatrix q(3);  // every cell, including structurally null ones
    for (int e = 0; e < 6; ++e)
      for (int f = 0; f < 6; ++f)
        q.set(arc_at(e, 3), arc_at(f, 3), Rational(rng.bounded(-9, 9)));
    LinearizationOutcome out = linearize(q);
    if (!out.linearizable) {
      ++rejected;
      continue;
    }
    QuadraticCostMatrix clean = cleaned(q);
    for (const Tour& t : enumerate_tours(3))
      if (tour_cost_linear(*out.linearization, t) !=
          tour_cost_quadratic(clean, t))
        ++bad;
  }
  // End-to-end spot check through the command-line tool.
  bool cli_ok = false;
  {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "qtsp_acceptance";
    fs::create_directories(dir);
    fs::path file = dir / "n3.json";
    QuadraticCostMatrix q(3);
    SeededRng crng(901);
    for (int e = 0; e < 6; ++e)
      for (int f = 0; f < 6; ++f)
        q.set(arc_at(e, 3), arc_at(f, 3), Rational(crng.bounded(-9, 9)));
    write_quadratic_file(file, q);
    std::string cmd = std::string(QTSP_CLI_PATH) + " linearize " +
                      file.string() + " > /dev/null 2>&1";
    int raw = std::system(cmd.c_str());
    cli_ok = WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
  }
  double dt = seconds_since(t0);
  char detail[140];
  std::snprintf(detail, sizeof detail,
                "%ld instances, %ld rejected, %ld tour mismatches, cli=%s, "
                "%.1fs",
                instances, rejected, bad, cli_ok ? "ok" : "bad", dt);
  report("C7 three-node-base",
         rejected == 0 && bad == 0 && cli_ok && instances == 100, detail);
}

void criterion8_scaling() {
  const double time_cap = 60.0;
  const double slope_cap = 5.5;
  std::vector<int> sizes{12, 14, 16, 18, 20};
  std::vector<double> best(sizes.size(), 1e30);
  bool all_linearizable = true;
  for (size_t i = 0; i < sizes.size(); ++i) {
    GeneratedInstance gi = gen_diagonal(sizes[i], 1);
    for (int rep = 0; rep < 3; ++rep) {
      auto t0 = Clock::now();
      LinearizationOutcome out = linearize(gi.q);
      double s = seconds_since(t0);
      all_linearizable = all_linearizable && out.linearizable;
      if (s < best[i]) best[i] = s;
    }
  }
  double slope = std::log(best.back() / best.front()) /
                 std::log(static_cast<double>(sizes.back()) / sizes.front());
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "t(12)=%.3fs t(20)=%.3fs, log-log slope %.2f (cap %.1f), "
                "time cap %.0fs",
                best.front(), best.back(), slope, slope_cap, time_cap);
  report("C8 scaling-trend",
         all_linearizable && best.back() < time_cap && slope <= slope_cap,
         detail);
}

void criterion9_witness_validity() {
  auto t0 = Clock::now();
  long negatives = 0, unconfirmed = 0, oracle_disagreements = 0;
  for (int n = 4; n <= 6; ++n) {
    std::vector<QuadraticCostMatrix> suspects;
    for (unsigned long s = 0; s < 30; ++s) {
      suspects.push_back(perturb(gen_diagonal(n, 950 + s), Rational(1), s).q);
      suspects.push_back(gen_random(n, 950 + s, Rational(2, 3)).q);
    }
    for (const QuadraticCostMatrix& q : suspects) {
      LinearizationOutcome out = linearize(q);
      if (out.linearizable) continue;
      ++negatives;
      if (!out.witness || !confirm_witness(*out.witness)) ++unconfirmed;
      if (brute_linearize(cleaned(q)).c.has_value()) ++oracle_disagreements;
    }
  }
  double dt = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%ld negative verdicts, %ld unconfirmed witnesses, %ld oracle "
                "disagreements, %.1fs",
                negatives, unconfirmed, oracle_disagreements, dt);
  report("C9 witness-validity",
         negatives > 0 && unconfirmed == 0 && oracle_disagreements == 0,
         detail);
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  criterion1_oracle_agreement();
  criterion2_round_trip();
  criterion3_reduction_identity();
  criterion4_cvp_agreement();
  criterion5_metamorphic();
  criterion6_subspace_closure();
  criterion7_three_node_base();
  criterion8_scaling();
  criterion9_witness_validity();
  std::printf("acceptance total: %.1fs, %d failing criteria\n",
              seconds_since(t0), failures);
  return failures == 0 ? 0 : 1;
}
