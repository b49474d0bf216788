#include "stemcpd/commands.hpp"

#include "stemcpd/csv.hpp"
#include "stemcpd/error.hpp"
#include "stemcpd/parallel.hpp"
#include "stemcpd/rng.hpp"
#include "stemcpd/theory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

namespace stemcpd {

const char* to_string(MomentMode mode) noexcept {
  return mode == MomentMode::closed ? "closed" : "empirical";
}

namespace {

std::string fmt(double v) { return csv::format(v); }

template <typename Int>
std::string fmt_int(Int v) { return std::to_string(v); }

double parse_number(const std::string& field, const char* what) {
  const auto v = csv::parse_double(field);
  if (!v) {
    throw Error(Errc::invalid_input, std::string("cannot parse ") + what + " '" + field + "'");
  }
  return *v;
}

template <typename Int>
Int parse_integer(const std::string& field, const char* what) {
  Int value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw Error(Errc::invalid_input, std::string("cannot parse ") + what + " '" + field + "'");
  }
  return value;
}

}  // namespace

InputSeries read_series_csv(std::istream& in) {
  if (!in) {
    throw Error(Errc::invalid_input, "input stream is not readable");
  }
  auto rows = csv::read_rows(in);
  if (rows.empty()) {
    throw Error(Errc::invalid_input, "input has no data rows");
  }
  const std::size_t width = rows.front().size();
  if (width != 1 && width != 2) {
    throw Error(Errc::invalid_input, "expected one value column or (position, value) columns");
  }
  std::size_t first = 0;
  if (!csv::parse_double(rows.front().back())) {
    first = 1;  // header
  }

  InputSeries out;
  out.series.spacing = 1.0;
  out.series.origin = 1.0;
  for (std::size_t r = first; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != width) {
      throw Error(Errc::invalid_input, "row " + std::to_string(r + 1) + " has " +
                                           std::to_string(row.size()) + " fields, expected " +
                                           std::to_string(width));
    }
    const auto v = csv::parse_double(row.back());
    if (!v || !std::isfinite(*v)) {
      throw Error(Errc::invalid_input,
                  "row " + std::to_string(r + 1) + ": value '" + row.back() + "' is not a finite number");
    }
    out.series.values.push_back(*v);
    if (width == 2) {
      out.positions.push_back(row.front());
    }
  }
  if (out.series.values.empty()) {
    throw Error(Errc::invalid_input, "input has no data rows");
  }
  return out;
}

// ---------------------------------------------------------------------------
// detect

void DetectRequest::validate() const {
  if (!(gamma > 0.0)) {
    throw Error(Errc::invalid_parameter, "--gamma must be positive");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::invalid_parameter, "--alpha must be in (0, 1)");
  }
  if (!(trim >= 0.0 && trim < 0.5)) {
    throw Error(Errc::invalid_parameter, "--trim must be in [0, 0.5)");
  }
  if (moments == MomentMode::closed) {
    NoiseModel{sigma, nu}.validate();
  }
}

KernelSpec DetectRequest::kernel() const {
  KernelSpec k;
  k.gamma = gamma;
  k.c = c;
  k.order = 1;
  return k;
}

MomentSource DetectRequest::source() const {
  if (moments == MomentMode::closed) {
    return ClosedFormSource{NoiseModel{sigma, nu}};
  }
  return EmpiricalSource{trim};
}

DetectionResult run_detect(const DetectRequest& req, const InputSeries& input) {
  req.validate();
  return detect_change_points(input.series, req.kernel(), req.source(), req.alpha);
}

void write_detection_csv(std::ostream& out, const DetectRequest& req,
                         const InputSeries& input, const DetectionResult& result) {
  std::vector<bool> significant(result.extrema.size(), false);
  for (std::size_t i : result.significant) {
    significant[i] = true;
  }
  out << "index,position,location,height,sign,p_value,significant\n";
  for (std::size_t i = 0; i < result.extrema.size(); ++i) {
    const Extremum& e = result.extrema[i];
    const std::string position =
        input.positions.empty() ? fmt(e.location) : input.positions[e.index];
    out << e.index << ',' << position << ',' << fmt(e.location) << ',' << fmt(e.height) << ','
        << (e.is_max() ? "max" : "min") << ',' << fmt(e.p_value) << ','
        << (significant[i] ? 1 : 0) << '\n';
  }
  const double nan = std::nan("");
  const auto& m = result.moments;
  out << "# candidates=" << result.bh.m << '\n'
      << "# rejections=" << result.bh.k << '\n'
      << "# alpha=" << fmt(req.alpha) << '\n'
      << "# p_threshold=" << fmt(result.bh.p_threshold) << '\n'
      << "# u_threshold=" << fmt(result.bh.u_threshold) << '\n'
      << "# gamma=" << fmt(req.gamma) << '\n'
      << "# c=" << fmt(req.c) << '\n'
      << "# var1=" << fmt(m ? m->var1() : nan) << '\n'
      << "# lam4=" << fmt(m ? m->lam4() : nan) << '\n'
      << "# lam6=" << fmt(m ? m->lam6() : nan) << '\n'
      << "# delta=" << fmt(m ? m->delta() : nan) << '\n';
  if (req.moments == MomentMode::closed) {
    out << "# moments=closed(sigma=" << fmt(req.sigma) << ";nu=" << fmt(req.nu) << ")\n";
  } else {
    out << "# moments=empirical(trim=" << fmt(req.trim) << ")\n";
  }
}

std::vector<DetectionRow> read_detection_csv(std::istream& in) {
  auto rows = csv::read_rows(in);
  if (rows.empty() || rows.front().size() != 7 || rows.front().front() != "index") {
    throw Error(Errc::invalid_input, "not a detection CSV");
  }
  std::vector<DetectionRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 7) {
      throw Error(Errc::invalid_input, "detection row " + std::to_string(r) + " is malformed");
    }
    DetectionRow d;
    d.index = parse_integer<std::size_t>(row[0], "index");
    d.position = row[1];
    d.location = parse_number(row[2], "location");
    d.height = parse_number(row[3], "height");
    if (row[4] == "max") {
      d.kind = ExtremumKind::maximum;
    } else if (row[4] == "min") {
      d.kind = ExtremumKind::minimum;
    } else {
      throw Error(Errc::invalid_input, "unknown sign '" + row[4] + "'");
    }
    d.p_value = parse_number(row[5], "p_value");
    d.significant = parse_integer<int>(row[6], "significant") != 0;
    out.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// simulate

void SimulateRequest::validate() const {
  auto fail = [](const std::string& msg) { throw Error(Errc::invalid_input, msg); };
  if (separation < 2 || length <= separation) {
    fail("need --separation >= 2 and --length > --separation");
  }
  if (jumps.empty() || gammas.empty() || tolerances.empty()) {
    fail("jump, gamma and tolerance grids must be non-empty");
  }
  for (double a : jumps) {
    if (!std::isfinite(a)) fail("jump sizes must be finite");
  }
  for (double g : gammas) {
    if (!(g > 0.0) || !std::isfinite(g)) fail("gamma grid values must be positive");
  }
  for (double b : tolerances) {
    if (!(b > 0.0) || !std::isfinite(b)) fail("tolerance grid values must be positive");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) fail("--alpha must be in (0, 1)");
  if (!(sigma > 0.0) || !(nu >= 0.0)) fail("need --sigma > 0 and --nu >= 0");
  if (!(c > 0.0)) fail("kernel support must be positive");
  if (!(trim >= 0.0 && trim < 0.5)) fail("--trim must be in [0, 0.5)");
  if (reps < 1) fail("--reps must be at least 1");
}

PiecewiseSignal SimulateRequest::truth(double a) const {
  if (a == 0.0) {
    return PiecewiseSignal::flat(static_cast<double>(length));
  }
  return make_staircase(a, separation, length);
}

namespace {

KernelSpec sim_kernel(const SimulateRequest& req, double gamma) {
  KernelSpec k;
  k.gamma = gamma;
  k.c = req.c;
  k.order = 1;
  return k;
}

MomentSource sim_source(const SimulateRequest& req) {
  if (req.moments == MomentMode::closed) {
    return ClosedFormSource{NoiseModel{req.sigma, req.nu}};
  }
  return EmpiricalSource{req.trim};
}

TimeSeries sim_noise(const SimulateRequest& req, std::size_t replicate) {
  return sample_noise(NoiseModel{req.sigma, req.nu}, static_cast<std::size_t>(req.length),
                      replicate_seed(req.seed, replicate));
}

struct ReplicateRecord {
  double fdp = 0.0;
  std::optional<double> power;
  std::size_t detections = 0;
  bool mismatch = false;
};

}  // namespace

DetectionResult simulate_replicate(const SimulateRequest& req, double a, double gamma,
                                   std::size_t replicate) {
  req.validate();
  const TimeSeries y = compose(req.truth(a), sim_noise(req, replicate));
  return detect_change_points(y, sim_kernel(req, gamma), sim_source(req), req.alpha);
}

std::vector<SimulationCell> run_simulation(const SimulateRequest& req) {
  req.validate();
  const std::size_t n_a = req.jumps.size();
  const std::size_t n_g = req.gammas.size();
  const std::size_t n_b = req.tolerances.size();
  const std::size_t n_cells = n_a * n_g * n_b;

  std::vector<PiecewiseSignal> truths;
  for (double a : req.jumps) {
    truths.push_back(req.truth(a));
  }
  const MomentSource source = sim_source(req);

  // records[r * n_cells + cell]
  std::vector<ReplicateRecord> records(req.reps * n_cells);
  parallel_for(req.reps, [&](std::size_t r) {
    const TimeSeries noise = sim_noise(req, req.rep_start + r);
    for (std::size_t ia = 0; ia < n_a; ++ia) {
      const TimeSeries y = compose(truths[ia], noise);
      for (std::size_t ig = 0; ig < n_g; ++ig) {
        const DetectionResult res =
            detect_change_points(y, sim_kernel(req, req.gammas[ig]), source, req.alpha);
        const bool mismatch = select_by_height(res.extrema, res.bh.u_threshold) != res.significant;
        const std::vector<Extremum> detections = res.significant_extrema();
        for (std::size_t ib = 0; ib < n_b; ++ib) {
          const EvalResult ev = classify(detections, truths[ia], EvalConfig{req.tolerances[ib]});
          ReplicateRecord& rec = records[r * n_cells + (ia * n_g + ig) * n_b + ib];
          rec.fdp = ev.fdp;
          rec.power = ev.power_fraction;
          rec.detections = ev.R;
          rec.mismatch = mismatch;
        }
      }
    }
  });

  std::vector<SimulationCell> cells;
  cells.reserve(n_cells);
  for (std::size_t ia = 0; ia < n_a; ++ia) {
    for (std::size_t ig = 0; ig < n_g; ++ig) {
      for (std::size_t ib = 0; ib < n_b; ++ib) {
        SimulationCell cell;
        cell.a = req.jumps[ia];
        cell.gamma = req.gammas[ig];
        cell.b = req.tolerances[ib];
        cell.separation = req.separation;
        cell.length = req.length;
        cell.alpha = req.alpha;
        cell.sigma = req.sigma;
        cell.nu = req.nu;
        cell.seed = req.seed;
        cell.rep_start = req.rep_start;
        const std::size_t idx = cells.size();
        for (std::size_t r = 0; r < req.reps; ++r) {
          const ReplicateRecord& rec = records[r * n_cells + idx];
          cell.acc.add(rec.fdp, rec.power, rec.detections);
          cell.threshold_mismatches += rec.mismatch ? 1 : 0;
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

namespace {

const std::vector<std::string>& simulation_header() {
  static const std::vector<std::string> header{
      "a",          "gamma",        "b",           "d",
      "L",          "alpha",        "sigma",       "nu",
      "seed",       "rep_start",    "reps",        "fdr",
      "fdr_se",     "power",        "power_se",    "mean_detections",
      "any_detection", "threshold_mismatches", "fdp_sum", "fdp_sq_sum",
      "power_n",    "power_sum",    "power_sq_sum", "detections_sum",
      "any_detection_count"};
  return header;
}

}  // namespace

void write_simulation_csv(std::ostream& out, std::span<const SimulationCell> cells) {
  out << csv::join(simulation_header()) << '\n';
  for (const SimulationCell& c : cells) {
    const Summary s = c.acc.summary();
    std::vector<std::string> row{
        fmt(c.a),
        fmt(c.gamma),
        fmt(c.b),
        fmt_int(c.separation),
        fmt_int(c.length),
        fmt(c.alpha),
        fmt(c.sigma),
        fmt(c.nu),
        fmt_int(c.seed),
        fmt_int(c.rep_start),
        fmt_int(c.acc.n),
        fmt(s.fdr),
        fmt(s.fdr_se),
        s.power ? fmt(*s.power) : std::string(),
        s.power_se ? fmt(*s.power_se) : std::string(),
        fmt(s.mean_detections),
        fmt(s.any_detection),
        fmt_int(c.threshold_mismatches),
        fmt(c.acc.fdp_sum),
        fmt(c.acc.fdp_sq_sum),
        fmt_int(c.acc.power_n),
        fmt(c.acc.power_sum),
        fmt(c.acc.power_sq_sum),
        fmt(c.acc.detections_sum),
        fmt_int(c.acc.any_detection)};
    out << csv::join(row) << '\n';
  }
}

std::vector<SimulationCell> read_simulation_csv(std::istream& in) {
  auto rows = csv::read_rows(in);
  if (rows.empty() || rows.front() != simulation_header()) {
    throw Error(Errc::invalid_input, "not a simulation CSV");
  }
  std::vector<SimulationCell> cells;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != simulation_header().size()) {
      throw Error(Errc::invalid_input, "simulation row " + std::to_string(r) + " is malformed");
    }
    SimulationCell c;
    c.a = parse_number(row[0], "a");
    c.gamma = parse_number(row[1], "gamma");
    c.b = parse_number(row[2], "b");
    c.separation = parse_integer<long>(row[3], "d");
    c.length = parse_integer<long>(row[4], "L");
    c.alpha = parse_number(row[5], "alpha");
    c.sigma = parse_number(row[6], "sigma");
    c.nu = parse_number(row[7], "nu");
    c.seed = parse_integer<std::uint64_t>(row[8], "seed");
    c.rep_start = parse_integer<std::size_t>(row[9], "rep_start");
    c.acc.n = parse_integer<std::size_t>(row[10], "reps");
    c.threshold_mismatches = parse_integer<std::size_t>(row[17], "threshold_mismatches");
    c.acc.fdp_sum = parse_number(row[18], "fdp_sum");
    c.acc.fdp_sq_sum = parse_number(row[19], "fdp_sq_sum");
    c.acc.power_n = parse_integer<std::size_t>(row[20], "power_n");
    c.acc.power_sum = parse_number(row[21], "power_sum");
    c.acc.power_sq_sum = parse_number(row[22], "power_sq_sum");
    c.acc.detections_sum = parse_number(row[23], "detections_sum");
    c.acc.any_detection = parse_integer<std::size_t>(row[24], "any_detection_count");
    cells.push_back(c);
  }
  return cells;
}

std::vector<SimulationCell> merge_simulations(std::span<const SimulationCell> first,
                                              std::span<const SimulationCell> second) {
  auto key = [](const SimulationCell& c) {
    return std::make_tuple(c.a, c.gamma, c.b, c.separation, c.length, c.alpha, c.sigma, c.nu,
                           c.seed);
  };
  if (first.size() != second.size()) {
    throw Error(Errc::invalid_input, "simulation grids differ in size");
  }
  std::vector<SimulationCell> out(first.begin(), first.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (key(out[i]) != key(second[i])) {
      throw Error(Errc::invalid_input, "simulation grids differ at row " + std::to_string(i + 1));
    }
    // Replicate ranges must be adjacent so the merged row still describes one range.
    const SimulationCell& lo = out[i].rep_start <= second[i].rep_start ? out[i] : second[i];
    const SimulationCell& hi = &lo == &out[i] ? second[i] : out[i];
    if (lo.rep_start + lo.acc.n != hi.rep_start) {
      throw Error(Errc::invalid_input, "replicate ranges must be adjacent and disjoint");
    }
    out[i].acc.merge(second[i].acc);
    out[i].threshold_mismatches += second[i].threshold_mismatches;
    out[i].rep_start = std::min(out[i].rep_start, second[i].rep_start);
  }
  return out;
}

// ---------------------------------------------------------------------------
// theory

void TheoryRequest::validate() const {
  NoiseModel{sigma, nu}.validate();
  if (gammas.empty()) {
    throw Error(Errc::invalid_input, "gamma grid must be non-empty");
  }
  for (double g : gammas) {
    if (!(g > 0.0)) {
      throw Error(Errc::invalid_input, "gamma grid values must be positive");
    }
  }
}

std::vector<TheoryRow> run_theory(const TheoryRequest& req) {
  req.validate();
  const NoiseModel model{req.sigma, req.nu};
  std::vector<TheoryRow> rows;
  for (double gamma : req.gammas) {
    const TheoryConfig cfg{.A1 = req.A1,
                           .c = req.c,
                           .alpha = req.alpha,
                           .gamma = gamma,
                           .moments = closed_form_moments(model, gamma)};
    TheoryRow row;
    row.gamma = gamma;
    row.var1 = cfg.moments.var1();
    row.lam4 = cfg.moments.lam4();
    row.lam6 = cfg.moments.lam6();
    row.delta = cfg.moments.delta();
    row.null_rate = null_max_rate(cfg.moments);
    row.tail_target = asymptotic_tail_target(cfg);
    row.threshold = peak_height_quantile(row.tail_target, cfg.moments);
    row.fdr_bound_bh = fdr_upper_bound_bh(cfg);
    row.fdr_bound_fixed = fdr_upper_bound(row.threshold, cfg);
    for (double a : req.jumps) {
      row.snr.push_back(snr(a, model, gamma));
      row.power.push_back(approx_power_j(a, row.threshold, cfg.moments, gamma));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_theory_csv(std::ostream& out, const TheoryRequest& req,
                      std::span<const TheoryRow> rows) {
  std::vector<std::string> header{"gamma",     "var1",        "lam4",      "lam6",
                                  "delta",     "null_rate",   "tail_target", "threshold",
                                  "fdr_bound_bh", "fdr_bound_fixed"};
  for (double a : req.jumps) {
    header.push_back("snr_a" + fmt(a));
  }
  for (double a : req.jumps) {
    header.push_back("power_a" + fmt(a));
  }
  out << csv::join(header) << '\n';
  for (const TheoryRow& r : rows) {
    std::vector<std::string> row{fmt(r.gamma),       fmt(r.var1),        fmt(r.lam4),
                                 fmt(r.lam6),        fmt(r.delta),       fmt(r.null_rate),
                                 fmt(r.tail_target), fmt(r.threshold),   fmt(r.fdr_bound_bh),
                                 fmt(r.fdr_bound_fixed)};
    for (double v : r.snr) row.push_back(fmt(v));
    for (double v : r.power) row.push_back(fmt(v));
    out << csv::join(row) << '\n';
  }
  out << "# sigma=" << fmt(req.sigma) << '\n'
      << "# nu=" << fmt(req.nu) << '\n'
      << "# A1=" << fmt(req.A1) << '\n'
      << "# c=" << fmt(req.c) << '\n'
      << "# alpha=" << fmt(req.alpha) << '\n';
}

// ---------------------------------------------------------------------------
// generate

void write_generated_csv(std::ostream& out, const GenerateRequest& req) {
  if (req.length < 1) {
    throw Error(Errc::invalid_input, "length must be at least 1");
  }
  const PiecewiseSignal truth =
      req.jump == 0.0 ? PiecewiseSignal::flat(static_cast<double>(req.length))
                      : make_staircase(req.jump, req.separation, req.length);
  const TimeSeries y = compose(
      truth, sample_noise(NoiseModel{req.sigma, req.nu}, static_cast<std::size_t>(req.length),
                          req.seed));
  Rng gaps(splitmix64(req.seed));
  long position = 0;
  out << (req.positions ? "position,value\n" : "value\n");
  for (double v : y.values) {
    if (req.positions) {
      position += 500 + static_cast<long>(gaps.uniform() * 1000.0);
      out << position << ',';
    }
    out << fmt(v) << '\n';
  }
}

}  // namespace stemcpd
