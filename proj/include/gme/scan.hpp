#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gme/families.hpp"
#include "gme/io.hpp"

namespace gme {

enum class ProbePolicy { fixed, basis, optimize };

std::string to_string(ProbePolicy p);
std::optional<ProbePolicy> parse_probe_policy(const std::string& s);

/// fixed: GHZ-like pairs |i..i>,|j..j> (i < j) for II, the same pairs with
///        the A-side swapped for I, all ordered level pairs for III.
/// basis: best over basis product pairs within the optimizer's budget.
/// optimize: optimize_violation seeded with the basis pairs.
struct ProbeSettings {
  ProbePolicy policy = ProbePolicy::fixed;
  OptimizerConfig optimizer;
};

/// Criterion label used in reports and CSV rows: "II", or "I:A={1}|B={2,3}"
/// for per-cut results.
std::string result_label(const CriterionReport<double>& rep);

/// One report per requested criterion; I and PPT give one per bipartition.
std::vector<CriterionReport<double>> detect(const DensityMatrixd& rho, const std::vector<CriterionId>& criteria,
                                            const ProbeSettings& probes);

struct Axis {
  double start = 0;
  double stop = 1;
  double step = 0.1;

  std::vector<double> values() const;
};

/// "a0:a1:step".
Axis parse_axis(const std::string& s);

struct ScanSpec {
  StateFamily family;
  Axis alpha;
  Axis beta;
  std::vector<CriterionId> criteria{CriterionId::I, CriterionId::II, CriterionId::III, CriterionId::PPT};
  ProbeSettings probes;
  std::size_t max_cells = 1'000'000;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CellResult {
  double alpha = 0;
  double beta = 0;
  std::vector<CriterionReport<double>> reports;
};

struct ScanResult {
  std::string family;
  std::vector<CellResult> cells;  // row-major: alpha outer, beta inner
};

/// Evaluates every grid cell with alpha + beta <= 1. Criteria that do not
/// apply to the family (III off uniform n >= 3) are skipped.
ScanResult scan(const ScanSpec& spec);

std::string to_csv(const ScanResult& result);
io::json to_json(const ScanResult& result);

struct ThresholdSpec {
  StateFamily family;
  std::string param = "p";
  double lo = 0;
  double hi = 1;
  CriterionId criterion = CriterionId::II;
  std::optional<Bipartition> part;  // for I/PPT; without it the max over cuts is used
  ProbeSettings probes;
  double tol = 1e-6;
};

/// Crossing point of the detection status along the family parameter.
double threshold(const ThresholdSpec& spec);

}  // namespace gme
