// stemcpd: change-point detection by multiple testing of local extrema of the
// smoothed derivative.
//
//   stemcpd detect   --input data.csv --gamma 10 --alpha 0.2 --moments empirical
//   stemcpd simulate --length 12000 --separation 100 --jump 1,2,3 --reps 500
//   stemcpd theory   --nu 2 --grid-gamma 0.5,1,1.5
//   stemcpd generate --length 968 --separation 100 --jump 2 --seed 7
//   stemcpd merge    --input a.csv --input b.csv
//
// Exit codes: 0 ok, 2 input error, 3 configuration error.

#include "stemcpd/commands.hpp"
#include "stemcpd/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

namespace {

constexpr int kInputError = 2;
constexpr int kConfigError = 3;

int exit_code(stemcpd::Errc code) {
  switch (code) {
    case stemcpd::Errc::invalid_input:
    case stemcpd::Errc::grid_mismatch:
    case stemcpd::Errc::degenerate_config:
      return kInputError;
    default:
      return kConfigError;
  }
}

// Writes to the file if a path is given, stdout otherwise.
class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw stemcpd::Error(stemcpd::Errc::invalid_input, "cannot open output '" + path + "'");
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

stemcpd::InputSeries load_series(const std::string& path) {
  if (path.empty() || path == "-") {
    return stemcpd::read_series_csv(std::cin);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw stemcpd::Error(stemcpd::Errc::invalid_input, "cannot read input '" + path + "'");
  }
  return stemcpd::read_series_csv(in);
}

const std::map<std::string, stemcpd::MomentMode> kMomentModes{
    {"closed", stemcpd::MomentMode::closed},
    {"empirical", stemcpd::MomentMode::empirical}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Change-point detection by multiple testing of local extrema"};
  app.require_subcommand(1);

  // detect
  stemcpd::DetectRequest detect;
  std::string detect_in;
  std::string detect_out;
  auto* cmd_detect = app.add_subcommand("detect", "Detect change points in a CSV sequence");
  cmd_detect->add_option("--input", detect_in, "CSV with one value column or (position, value)")
      ->required();
  cmd_detect->add_option("--output", detect_out, "Detection CSV (default stdout)");
  cmd_detect->add_option("--gamma", detect.gamma, "Kernel bandwidth in samples")
      ->capture_default_str();
  cmd_detect->add_option("--alpha", detect.alpha, "FDR level")->capture_default_str();
  cmd_detect->add_option("--moments", detect.moments, "Moment source")
      ->transform(CLI::CheckedTransformer(kMomentModes, CLI::ignore_case))
      ->capture_default_str();
  cmd_detect->add_option("--sigma", detect.sigma, "Noise sigma (closed moments)")
      ->capture_default_str();
  cmd_detect->add_option("--nu", detect.nu, "Noise correlation scale (closed moments)")
      ->capture_default_str();
  cmd_detect->add_option("--trim", detect.trim, "Trim fraction (empirical moments)")
      ->capture_default_str();

  // simulate
  stemcpd::SimulateRequest sim;
  std::vector<double> sim_gamma;
  std::vector<double> sim_b;
  std::string sim_out;
  auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo FDR and power over a grid");
  cmd_sim->add_option("--output", sim_out, "Results CSV (default stdout)");
  cmd_sim->add_option("--length", sim.length, "Sequence length L")->capture_default_str();
  cmd_sim->add_option("--separation", sim.separation, "Change-point separation d")
      ->capture_default_str();
  cmd_sim->add_option("--jump", sim.jumps, "Jump sizes a (0 = complete null)")
      ->delimiter(',')
      ->capture_default_str();
  cmd_sim->add_option("--gamma,--grid-gamma", sim_gamma, "Bandwidth grid")->delimiter(',');
  cmd_sim->add_option("--tolerance,--grid-b", sim_b, "Location tolerance grid")
      ->delimiter(',');
  cmd_sim->add_option("--alpha", sim.alpha, "FDR level")->capture_default_str();
  cmd_sim->add_option("--sigma", sim.sigma, "Noise sigma")->capture_default_str();
  cmd_sim->add_option("--nu", sim.nu, "Noise correlation scale")->capture_default_str();
  cmd_sim->add_option("--moments", sim.moments, "Moment source")
      ->transform(CLI::CheckedTransformer(kMomentModes, CLI::ignore_case))
      ->capture_default_str();
  cmd_sim->add_option("--trim", sim.trim, "Trim fraction (empirical moments)")
      ->capture_default_str();
  cmd_sim->add_option("--reps", sim.reps, "Replications per cell")->capture_default_str();
  cmd_sim->add_option("--rep-start", sim.rep_start, "Index of the first replicate")
      ->capture_default_str();
  cmd_sim->add_option("--seed", sim.seed, "Base seed; replicate r uses seed ^ r")
      ->capture_default_str();

  // theory
  stemcpd::TheoryRequest theory;
  std::vector<double> theory_gamma;
  std::string theory_out;
  auto* cmd_theory = app.add_subcommand("theory", "Analytic threshold, power and FDR curves");
  cmd_theory->add_option("--output", theory_out, "Curves CSV (default stdout)");
  cmd_theory->add_option("--sigma", theory.sigma, "Noise sigma")->capture_default_str();
  cmd_theory->add_option("--nu", theory.nu, "Noise correlation scale")->capture_default_str();
  cmd_theory->add_option("--alpha", theory.alpha, "FDR level")->capture_default_str();
  cmd_theory->add_option("--density", theory.A1, "Change-point density J/L")
      ->capture_default_str();
  cmd_theory->add_option("--support", theory.c, "Kernel support half-width (bandwidths)")
      ->capture_default_str();
  cmd_theory->add_option("--jump", theory.jumps, "Jump sizes")
      ->delimiter(',')
      ->capture_default_str();
  cmd_theory->add_option("--gamma,--grid-gamma", theory_gamma, "Bandwidth grid")
      ->delimiter(',');

  // generate
  stemcpd::GenerateRequest gen;
  std::string gen_out;
  bool gen_no_positions = false;
  auto* cmd_gen = app.add_subcommand("generate", "Write a synthetic staircase-plus-noise CSV");
  cmd_gen->add_option("--output", gen_out, "CSV path (default stdout)");
  cmd_gen->add_option("--length", gen.length, "Sequence length")->capture_default_str();
  cmd_gen->add_option("--separation", gen.separation, "Step width")->capture_default_str();
  cmd_gen->add_option("--jump", gen.jump, "Step size (0 = noise only)")->capture_default_str();
  cmd_gen->add_option("--sigma", gen.sigma, "Noise sigma")->capture_default_str();
  cmd_gen->add_option("--nu", gen.nu, "Noise correlation scale")->capture_default_str();
  cmd_gen->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  cmd_gen->add_flag("--no-positions", gen_no_positions, "Omit the position column");

  // merge
  std::vector<std::string> merge_in;
  std::string merge_out;
  auto* cmd_merge =
      app.add_subcommand("merge", "Merge simulate outputs over adjacent replicate ranges");
  cmd_merge->add_option("--input", merge_in, "Two simulate CSVs")->required()->expected(2);
  cmd_merge->add_option("--output", merge_out, "Merged CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*cmd_detect) {
      const stemcpd::InputSeries input = load_series(detect_in);
      const stemcpd::DetectionResult result = stemcpd::run_detect(detect, input);
      Output out(detect_out);
      stemcpd::write_detection_csv(out.stream(), detect, input, result);
    } else if (*cmd_sim) {
      if (!sim_gamma.empty()) sim.gammas = sim_gamma;
      if (!sim_b.empty()) sim.tolerances = sim_b;
      const auto cells = stemcpd::run_simulation(sim);
      Output out(sim_out);
      stemcpd::write_simulation_csv(out.stream(), cells);
    } else if (*cmd_theory) {
      if (!theory_gamma.empty()) theory.gammas = theory_gamma;
      const auto rows = stemcpd::run_theory(theory);
      Output out(theory_out);
      stemcpd::write_theory_csv(out.stream(), theory, rows);
    } else if (*cmd_gen) {
      gen.positions = !gen_no_positions;
      Output out(gen_out);
      stemcpd::write_generated_csv(out.stream(), gen);
    } else if (*cmd_merge) {
      std::vector<std::vector<stemcpd::SimulationCell>> runs;
      for (const auto& path : merge_in) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
          throw stemcpd::Error(stemcpd::Errc::invalid_input, "cannot read '" + path + "'");
        }
        runs.push_back(stemcpd::read_simulation_csv(in));
      }
      const auto merged = stemcpd::merge_simulations(runs[0], runs[1]);
      Output out(merge_out);
      stemcpd::write_simulation_csv(out.stream(), merged);
    }
  } catch (const stemcpd::Error& e) {
    std::cerr << "stemcpd: " << stemcpd::to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "stemcpd: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
