#pragma once
// Parameter sweeps over the dilaton charge: build the five-mode register,
// damp the observer mode, reduce to the requested subsystem, evaluate the
// requested measure. Points are distributed over a worker pool and merged in
// grid order, so the row sequence never depends on scheduling; HC_THREADS
// caps the pool.

#include <hc/analytic.hpp>
#include <hc/channels.hpp>
#include <hc/dilaton.hpp>
#include <hc/measures.hpp>
#include <hc/qmat.hpp>
#include <hc/subsystems.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace hc {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Measure { gtn, gte, chsh, concurrence };

inline std::string_view name(Measure m) {
  switch (m) {
    case Measure::gtn: return "gtn";
    case Measure::gte: return "gte";
    case Measure::chsh: return "chsh";
    case Measure::concurrence: return "concurrence";
  }
  throw std::invalid_argument("name: unknown measure");
}

inline std::optional<Measure> parse_measure(std::string_view text) {
  if (text == "gtn") return Measure::gtn;
  if (text == "gte") return Measure::gte;
  if (text == "chsh") return Measure::chsh;
  if (text == "concurrence") return Measure::concurrence;
  return std::nullopt;
}

// Inclusive arithmetic grid start, start+step, ..., up to stop (within a
// half-step rounding guard).
struct AlphaGrid {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.01;
};

struct SweepSpec {
  Measure measure = Measure::gtn;
  Subsystem subsystem = Subsystem::ab1c1;
  AlphaGrid alpha{};
  double omega = 1.0;
  double mass = 1.0;
  double p = 0.0;
  double r = 0.0;
  OptimizerConfig optimizer{};
  std::string output_path;  // empty: caller decides where rows go
};

struct SweepRow {
  double alpha = 0.0;
  double value = 0.0;
  bool converged = true;
};

inline void validate(const SweepSpec& spec) {
  validate(spec.optimizer);
  validate(GadParams{spec.p, spec.r});
  if (!(spec.omega > 0.0))
    throw std::invalid_argument("SweepSpec: omega must be positive");
  if (!(spec.mass > 0.0))
    throw std::invalid_argument("SweepSpec: mass must be positive");
  if (!(spec.alpha.step > 0.0))
    throw std::invalid_argument("SweepSpec: alpha step must be positive");
  if (spec.alpha.start > spec.alpha.stop)
    throw std::invalid_argument("SweepSpec: alpha range is empty");
  if (spec.alpha.start < 0.0 || spec.alpha.stop > spec.mass + 1e-12)
    throw std::invalid_argument("SweepSpec: alpha range must lie in [0, mass]");
  const bool needs_triple =
      spec.measure == Measure::gtn || spec.measure == Measure::gte;
  if (needs_triple && !is_tripartite(spec.subsystem))
    throw std::invalid_argument(
        "SweepSpec: gtn/gte need a tripartite subsystem");
  if (!needs_triple && !is_bipartite(spec.subsystem))
    throw std::invalid_argument(
        "SweepSpec: chsh/concurrence need a bipartite subsystem");
}

inline std::vector<double> grid_points(const AlphaGrid& g) {
  const double span = g.stop - g.start;
  const auto count =
      static_cast<size_t>(std::floor(span / g.step + 1e-9)) + 1;
  std::vector<double> points;
  points.reserve(count);
  for (size_t i = 0; i < count; ++i)
    points.push_back(g.start + static_cast<double>(i) * g.step);
  return points;
}

// Reduction of the damped register at a given mixing coefficient. The
// channel acts on the first mode only, so reductions that trace it out are
// channel-independent as an operator identity; skipping the evolution there
// keeps that independence exact instead of merely within rounding.
inline DensityMatrix reduced_density(double beta, const GadParams& g,
                                     Subsystem id) {
  const PureState state = dilaton_w_state(beta);
  const auto kept = modes(id);
  if (kept.front() != 0) return partial_trace(state.density(), kept);
  return partial_trace(apply_gad_to_alice(state, g), kept);
}

inline SweepRow evaluate_point(const SweepSpec& spec, double alpha) {
  const double b = beta({spec.omega, spec.mass, alpha});
  const DensityMatrix rho =
      reduced_density(b, {spec.p, spec.r}, spec.subsystem);
  SweepRow row;
  row.alpha = alpha;
  switch (spec.measure) {
    case Measure::gtn: {
      auto res = svetlichny_optimize(rho, spec.optimizer);
      row.value = res.value;
      row.converged = res.converged;
      break;
    }
    case Measure::gte:
      row.value = pi_tangle(rho);
      break;
    case Measure::chsh:
      row.value = chsh_max(rho);
      break;
    case Measure::concurrence:
      row.value = concurrence(rho);
      break;
  }
  return row;
}

namespace detail {

inline unsigned worker_count(size_t points) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("HC_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end && *end == '\0' && parsed > 0)
      workers = static_cast<unsigned>(parsed);
  }
  if (points < workers) workers = static_cast<unsigned>(points);
  return std::max(workers, 1u);
}

}  // namespace detail

// Evaluate the whole grid. Rows come back in grid order regardless of the
// worker count, and every row is deterministic for a fixed spec.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  const std::vector<double> points = grid_points(spec.alpha);
  std::vector<SweepRow> rows(points.size());
  const unsigned workers = detail::worker_count(points.size());
  if (workers <= 1) {
    for (size_t i = 0; i < points.size(); ++i)
      rows[i] = evaluate_point(spec, points[i]);
    return rows;
  }
  std::atomic<size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        const size_t i = cursor.fetch_add(1);
        if (i >= points.size()) return;
        try {
          rows[i] = evaluate_point(spec, points[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

struct ThresholdResult {
  bool found = false;
  double alpha_critical = 0.0;
  double bracket_width = 0.0;
};

// Locate the charge where the three-setting maximum crosses `target`:
// coarse 32-point scan over [0, mass] for a sign change, then bisection to a
// bracket no wider than 1e-4; the critical charge is the bracket midpoint.
inline ThresholdResult find_threshold(const SweepSpec& spec,
                                      double target = 4.0) {
  if (spec.measure != Measure::gtn)
    throw std::invalid_argument(
        "find_threshold: only the three-setting maximum has a threshold");
  validate(spec);
  const auto value_at = [&](double alpha) {
    return evaluate_point(spec, alpha).value - target;
  };
  constexpr int kScan = 32;
  double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
  bool bracketed = false;
  double prev_alpha = 0.0, prev_f = 0.0;
  for (int i = 0; i < kScan; ++i) {
    const double alpha = spec.mass * i / (kScan - 1);
    const double f = value_at(alpha);
    if (i > 0 && ((prev_f <= 0.0) != (f <= 0.0))) {
      lo = prev_alpha;
      hi = alpha;
      flo = prev_f;
      fhi = f;
      bracketed = true;
      break;
    }
    prev_alpha = alpha;
    prev_f = f;
  }
  if (!bracketed) return {};
  while (hi - lo > 1e-4) {
    const double mid = (lo + hi) / 2.0;
    const double fmid = value_at(mid);
    if ((flo <= 0.0) != (fmid <= 0.0)) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  (void)fhi;
  return {true, (lo + hi) / 2.0, hi - lo};
}

// Fixed-decimal formatting with 12 significant digits; never scientific
// notation, so the CSV round-trips through standard parsers.
inline std::string format_value(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("format_value: non-finite value");
  if (v == 0.0) return "0.00000000000";
  if (v < 0.0) return "-" + format_value(-v);
  int exponent = static_cast<int>(std::floor(std::log10(v)));
  for (int pass = 0; pass < 2; ++pass) {
    const int decimals = std::max(11 - exponent, 0);
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    // Rounding can push the value across a power of ten (0.99995 -> 1.0000);
    // detect by re-deriving the exponent from the printed string.
    const std::string text(buf);
    const auto dot = text.find('.');
    const std::string integer_part = dot == std::string::npos ? text : text.substr(0, dot);
    const int printed_exponent =
        integer_part == "0" ? exponent : static_cast<int>(integer_part.size()) - 1;
    if (printed_exponent == exponent || pass == 1) return text;
    exponent = printed_exponent;
  }
  return {};
}

// Write header plus rows, LF line endings, no trailing blank line.
inline void emit_csv(const std::vector<SweepRow>& rows,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_csv: cannot open '" + path + "' for writing");
  out << "alpha,value,converged\n";
  for (const auto& row : rows)
    out << format_value(row.alpha) << ',' << format_value(row.value) << ','
        << (row.converged ? "true" : "false") << '\n';
  out.flush();
  if (!out) throw IoError("emit_csv: write to '" + path + "' failed");
}

inline std::string csv_text(const std::vector<SweepRow>& rows) {
  std::string out = "alpha,value,converged\n";
  for (const auto& row : rows) {
    out += format_value(row.alpha);
    out += ',';
    out += format_value(row.value);
    out += ',';
    out += row.converged ? "true" : "false";
    out += '\n';
  }
  return out;
}

}  // namespace hc
