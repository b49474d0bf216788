#pragma once

// Command layer behind the stemcpd tool: CSV ingestion, detection reports,
// simulation grids and theory curves. Everything here is deterministic for a
// given request; the tool only adds argument parsing and file handling.

#include "stemcpd/eval.hpp"
#include "stemcpd/stem.hpp"
#include "stemcpd/synth.hpp"

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace stemcpd {

enum class MomentMode { closed, empirical };

const char* to_string(MomentMode mode) noexcept;

/// Observed sequence read from CSV. Spacing is always 1; positions (if the
/// input had a position column) are kept verbatim for the report.
struct InputSeries {
  TimeSeries series;
  std::vector<std::string> positions;
};

/// One value column, or (position, value). A non-numeric first row is a header.
/// Throws Error(invalid_input) on empty input, ragged rows or non-finite values.
InputSeries read_series_csv(std::istream& in);

// ---------------------------------------------------------------------------
// detect

struct DetectRequest {
  double gamma = 10.0;
  double alpha = 0.05;
  double c = 4.0;
  MomentMode moments = MomentMode::empirical;
  double sigma = 1.0;
  double nu = 0.0;
  double trim = 0.1;

  void validate() const;
  KernelSpec kernel() const;
  MomentSource source() const;
};

DetectionResult run_detect(const DetectRequest& req, const InputSeries& input);

void write_detection_csv(std::ostream& out, const DetectRequest& req,
                         const InputSeries& input, const DetectionResult& result);

struct DetectionRow {
  std::size_t index = 0;
  std::string position;
  double location = 0.0;
  double height = 0.0;
  ExtremumKind kind = ExtremumKind::maximum;
  double p_value = 0.0;
  bool significant = false;
};

std::vector<DetectionRow> read_detection_csv(std::istream& in);

// ---------------------------------------------------------------------------
// simulate

struct SimulateRequest {
  long length = 12000;
  long separation = 100;
  /// Jump sizes; 0 runs the complete null (no change points).
  std::vector<double> jumps{1.0, 2.0, 3.0};
  std::vector<double> gammas{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> tolerances{2, 3, 4, 5, 6, 7, 8, 9, 10};
  double alpha = 0.05;
  double sigma = 1.0;
  double nu = 2.0;
  double c = 4.0;
  MomentMode moments = MomentMode::closed;
  double trim = 0.1;
  std::size_t reps = 500;
  std::size_t rep_start = 0;
  std::uint64_t seed = 1;

  /// Throws Error(invalid_input) for an empty or invalid grid.
  void validate() const;
  PiecewiseSignal truth(double a) const;
};

struct SimulationCell {
  double a = 0.0;
  double gamma = 0.0;
  double b = 0.0;
  long separation = 0;
  long length = 0;
  double alpha = 0.0;
  double sigma = 0.0;
  double nu = 0.0;
  std::uint64_t seed = 0;
  std::size_t rep_start = 0;
  EvalAccumulator acc;
  /// Replicates where the p-value and height-threshold rejection sets differ.
  std::size_t threshold_mismatches = 0;
};

/// Replicate r of cell (a, gamma): staircase(a) plus noise seeded with seed ^ r.
DetectionResult simulate_replicate(const SimulateRequest& req, double a, double gamma,
                                   std::size_t replicate);

/// One cell per (a, gamma, b), ordered by a, then gamma, then b.
std::vector<SimulationCell> run_simulation(const SimulateRequest& req);

void write_simulation_csv(std::ostream& out, std::span<const SimulationCell> cells);
std::vector<SimulationCell> read_simulation_csv(std::istream& in);

/// Combines runs over adjacent, disjoint replicate ranges of the same grid.
std::vector<SimulationCell> merge_simulations(std::span<const SimulationCell> first,
                                              std::span<const SimulationCell> second);

// ---------------------------------------------------------------------------
// theory

struct TheoryRequest {
  double sigma = 1.0;
  double nu = 2.0;
  double A1 = 0.01;
  double c = 4.0;
  double alpha = 0.05;
  std::vector<double> gammas{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0,
                             5.5, 6.0, 6.5, 7.0, 7.5, 8.0, 8.5, 9.0, 9.5, 10.0};
  std::vector<double> jumps{1.0, 2.0, 3.0};

  void validate() const;
};

struct TheoryRow {
  double gamma = 0.0;
  double var1 = 0.0;
  double lam4 = 0.0;
  double lam6 = 0.0;
  double delta = 0.0;
  double null_rate = 0.0;
  double tail_target = 0.0;
  double threshold = 0.0;
  double fdr_bound_bh = 0.0;
  /// Fixed-threshold bound evaluated at u*_BH.
  double fdr_bound_fixed = 0.0;
  std::vector<double> snr;
  std::vector<double> power;
};

/// Throws Error(degenerate_config) if 2 c gamma A1 >= 1 for any gamma.
std::vector<TheoryRow> run_theory(const TheoryRequest& req);

void write_theory_csv(std::ostream& out, const TheoryRequest& req,
                      std::span<const TheoryRow> rows);

// ---------------------------------------------------------------------------
// generate

struct GenerateRequest {
  long length = 968;
  long separation = 100;
  double jump = 2.0;
  double sigma = 1.0;
  double nu = 2.0;
  std::uint64_t seed = 1;
  /// Emit an unequally spaced integer position column.
  bool positions = true;
};

/// Staircase plus noise as a (position, value) CSV; jump 0 gives noise only.
void write_generated_csv(std::ostream& out, const GenerateRequest& req);

}  // namespace stemcpd
