#pragma once
// Generalized amplitude damping on the observer mode: Kraus operators, a
// thermal-environment parameter conversion, and application of the channel to
// the first mode of a multi-qubit register by explicit conjugation.

#include <hc/dilaton.hpp>
#include <hc/qmat.hpp>

#include <cmath>
#include <vector>

namespace hc {

struct GadParams {
  double p = 1.0;  // weight of the decay branch versus the excitation branch
  double r = 0.0;  // damping strength
};

inline void validate(const GadParams& g) {
  if (!(g.p >= 0.0) || g.p > 1.0)
    throw std::invalid_argument("GadParams: p must lie in [0, 1]");
  if (!(g.r >= 0.0) || g.r > 1.0)
    throw std::invalid_argument("GadParams: r must lie in [0, 1]");
}

// Kraus family of a quantum channel. Invariant: sum E^dag E = identity
// within 1e-14 per entry.
struct KrausSet {
  std::vector<Matrix> operators;

  double completeness_defect() const {
    if (operators.empty()) return 1.0;
    const Eigen::Index n = operators.front().cols();
    Matrix acc = Matrix::Zero(n, n);
    for (const auto& e : operators) acc += e.adjoint() * e;
    return (acc - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  }
};

// Four-operator generalized amplitude damping family with strength r and
// branch weight p.
inline KrausSet gad_kraus(const GadParams& g) {
  validate(g);
  const double sp = std::sqrt(g.p);
  const double sq = std::sqrt(1.0 - g.p);
  const double sr = std::sqrt(g.r);
  const double skr = std::sqrt(1.0 - g.r);
  Matrix e0(2, 2), e1(2, 2), e2(2, 2), e3(2, 2);
  e0 << sp, 0, 0, sp * skr;
  e1 << 0, sp * sr, 0, 0;
  e2 << sq * skr, 0, 0, sq;
  e3 << 0, 0, sq * sr, 0;
  return KrausSet{{e0, e1, e2, e3}};
}

struct EnvironmentParams {
  double temperature = 1.0;  // environment temperature, > 0
  double omega = 1.0;        // mode frequency
  double gamma0 = 1.0;       // zero-temperature dissipation rate
  double time = 0.0;         // interaction time, >= 0
};

// Conversion outcome; never a silent clamp. `defect` reports that the
// literal rate formula produced a negative (or non-finite) dissipation rate,
// which it does for every physical input; `clamped` reports that the raw
// strength fell outside [0, 1] and was clamped.
struct EnvironmentConversion {
  GadParams params;
  double gamma = 0.0;  // dissipation rate fed into the exponential
  double raw_r = 0.0;  // strength before clamping
  bool defect = false;
  bool clamped = false;
};

// Thermal-environment map in natural units. Literal reading of the source
// model: gamma = (2/(e^{-omega/T} - 1) + 1) gamma0, p = (1 + e^{-omega/T})^{-1},
// r = 1 - e^{-gamma t}. The gamma expression is negative for every valid
// input, so r < 0 at small times; the defect flag records this instead of
// hiding it.
inline EnvironmentConversion environment_to_gad(const EnvironmentParams& env) {
  if (!(env.temperature > 0.0))
    throw std::invalid_argument("EnvironmentParams: temperature must be positive");
  if (!(env.omega > 0.0))
    throw std::invalid_argument("EnvironmentParams: omega must be positive");
  if (!(env.gamma0 >= 0.0))
    throw std::invalid_argument("EnvironmentParams: gamma0 must be nonnegative");
  if (!(env.time >= 0.0))
    throw std::invalid_argument("EnvironmentParams: time must be nonnegative");

  EnvironmentConversion out;
  const double boltz = std::exp(-env.omega / env.temperature);
  out.gamma = (2.0 / (boltz - 1.0) + 1.0) * env.gamma0;
  out.raw_r = env.time == 0.0 ? 0.0 : 1.0 - std::exp(-out.gamma * env.time);
  out.defect = !(out.gamma >= 0.0) || !std::isfinite(out.gamma);

  double r = out.raw_r;
  if (!(r >= 0.0)) {
    r = 0.0;
    out.clamped = true;
  } else if (r > 1.0) {
    r = 1.0;
    out.clamped = true;
  }
  out.params.p = 1.0 / (1.0 + boltz);
  out.params.r = r;
  return out;
}

// Apply the channel to mode 0 of a register state by explicit conjugation
// with E_i (x) identity on the rest.
inline DensityMatrix apply_gad(const DensityMatrix& rho, const GadParams& g) {
  if (rho.dims().empty() || rho.dims().front() != 2)
    throw std::invalid_argument("apply_gad: leading mode must be a qubit");
  const Eigen::Index rest = rho.dim() / 2;
  const Matrix eye = Matrix::Identity(rest, rest);
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& e : gad_kraus(g).operators) {
    const Matrix lifted = kron(e, eye);
    out += lifted * rho.matrix() * lifted.adjoint();
  }
  return DensityMatrix(std::move(out), rho.dims());
}

// Damping acts on the observer mode A of the five-mode register only.
inline DensityMatrix apply_gad_to_alice(const PureState& state,
                                        const GadParams& g) {
  if (state.mode_count() != 5 || state.labels() != register_labels())
    throw std::invalid_argument(
        "apply_gad_to_alice: expected the five-mode register (A, B_I, B_II, "
        "C_I, C_II)");
  return apply_gad(state.density(), g);
}

}  // namespace hc
