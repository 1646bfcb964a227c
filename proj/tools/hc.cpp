// Command-line front end: parameter sweeps over the dilaton charge,
// threshold bisection, reduced-matrix dumps, and the oracle battery.
#include <CLI11.hpp>

#include <hc/dilaton.hpp>
#include <hc/sweep.hpp>
#include <hc/validate.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

double parse_real(const std::string& text, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::invalid_argument(std::string(what) + ": expected a number, got '" +
                                text + "'");
  return v;
}

// VALUE or FROM:TO:STEP; a bare value is a single-point grid.
hc::AlphaGrid parse_alpha_grid(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    const double v = parse_real(text, "--alpha");
    return {v, v, 1.0};
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    throw std::invalid_argument("--alpha expects VALUE or FROM:TO:STEP");
  return {parse_real(text.substr(0, c1), "--alpha from"),
          parse_real(text.substr(c1 + 1, c2 - c1 - 1), "--alpha to"),
          parse_real(text.substr(c2 + 1), "--alpha step")};
}

hc::Measure require_measure(const std::string& text) {
  if (auto m = hc::parse_measure(text)) return *m;
  throw std::invalid_argument("unknown measure '" + text + "'");
}

hc::Subsystem require_subsystem(const std::string& text) {
  if (auto s = hc::parse_subsystem(text)) return *s;
  throw std::invalid_argument("unknown subsystem '" + text + "'");
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw hc::IoError("cannot open '" + out_path + "'");
  out << text;
  out.flush();
  if (!out) throw hc::IoError("write failed for '" + out_path + "'");
}

std::string threshold_csv(const hc::ThresholdResult& res) {
  std::string text = "found,alpha_critical,bracket_width\n";
  if (res.found) {
    text += "true," + hc::format_value(res.alpha_critical) + "," +
            hc::format_value(res.bracket_width) + "\n";
  } else {
    text += "false,,\n";
  }
  return text;
}

std::string state_csv(const hc::DensityMatrix& rho) {
  std::ostringstream out;
  out << "i,j,re,im\n";
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << i << ',' << j << ',' << hc::format_value(m(i, j).real()) << ','
          << hc::format_value(m(i, j).imag()) << '\n';
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{
      "dilaton-charged W state under amplitude damping: "
      "sweeps, thresholds, state dumps, oracle battery"};
  app.require_subcommand(1);

  std::string measure_name = "gtn";
  std::string subsystem_name = "a-b1-c1";
  std::string alpha_text = "0:1:0.01";
  hc::SweepSpec spec;
  double target = 4.0;
  std::string out_path;

  const std::string measure_help =
      "one of gtn, gte, chsh, concurrence (default gtn)";
  const std::string subsystem_help =
      "subsystem id such as a-b1-c1 or b1-c1 (default a-b1-c1)";

  auto add_shared = [&](CLI::App* cmd, bool wants_measure, bool wants_grid,
                        bool wants_optimizer) {
    if (wants_measure)
      cmd->add_option("--measure", measure_name, measure_help);
    cmd->add_option("--subsystem", subsystem_name, subsystem_help);
    if (wants_grid)
      cmd->add_option("--alpha", alpha_text,
                      "charge grid FROM:TO:STEP or single VALUE "
                      "(default 0:1:0.01)");
    cmd->add_option("--omega", spec.omega, "mode frequency (default 1)");
    cmd->add_option("--mass", spec.mass, "black-hole mass (default 1)");
    cmd->add_option("--p", spec.p, "damping mix weight in [0,1] (default 0)");
    cmd->add_option("--r", spec.r, "damping strength in [0,1] (default 0)");
    if (wants_optimizer) {
      cmd->add_option("--restarts", spec.optimizer.restarts,
                      "optimizer restarts (default 50)");
      cmd->add_option("--seed", spec.optimizer.seed,
                      "optimizer seed (default 0)");
    }
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "evaluate a measure over a charge grid, emit CSV");
  add_shared(sweep_cmd, true, true, true);

  auto* threshold_cmd = app.add_subcommand(
      "threshold",
      "bisect for the charge where the three-setting maximum crosses a target");
  add_shared(threshold_cmd, false, false, true);
  threshold_cmd->add_option("--target", target,
                            "crossing level (default 4, the biseparable bound)");

  auto* validate_cmd = app.add_subcommand(
      "validate", "run the oracle battery, emit a JSON report");
  validate_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* state_cmd = app.add_subcommand(
      "state", "dump a reduced density matrix at one charge value as CSV");
  add_shared(state_cmd, false, false, false);
  std::string state_alpha_text = "0";
  state_cmd->add_option("--alpha", state_alpha_text,
                        "single charge value (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (sweep_cmd->parsed()) {
    spec.measure = require_measure(measure_name);
    spec.subsystem = require_subsystem(subsystem_name);
    spec.alpha = parse_alpha_grid(alpha_text);
    const auto rows = hc::run_sweep(spec);
    if (out_path.empty())
      std::cout << hc::csv_text(rows);
    else
      hc::emit_csv(rows, out_path);
    return 0;
  }

  if (threshold_cmd->parsed()) {
    spec.measure = hc::Measure::gtn;
    spec.subsystem = require_subsystem(subsystem_name);
    write_text(threshold_csv(hc::find_threshold(spec, target)), out_path);
    return 0;
  }

  if (validate_cmd->parsed()) {
    const auto report = hc::validate();
    write_text(hc::to_json(report) + "\n", out_path);
    return report.all_passed() ? 0 : 1;
  }

  // state
  if (state_alpha_text.find(':') != std::string::npos)
    throw std::invalid_argument("state takes a single --alpha value");
  const double alpha = parse_real(state_alpha_text, "--alpha");
  const hc::DilatonParams dp{spec.omega, spec.mass, alpha};
  hc::validate(dp);
  const hc::GadParams gp{spec.p, spec.r};
  hc::validate(gp);
  const auto id = require_subsystem(subsystem_name);
  write_text(state_csv(hc::reduced_density(hc::beta(dp), gp, id)), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hc::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const hc::ContractError& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
