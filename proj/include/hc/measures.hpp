#pragma once
// Entanglement and nonlocality measures: pair concurrence (general and
// X-state forms), the three-party pi-tangle, the two-setting correlation
// maximum (general eigenvalue route and X-state form), and the three-setting
// hybrid-correlation maximum via an alternating see-saw ascent.

#include <hc/qmat.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace hc {

namespace detail {

inline void require_pair(const DensityMatrix& rho, const char* who) {
  if (rho.dims() != std::vector<int>{2, 2})
    throw std::invalid_argument(std::string(who) +
                                ": expected a two-qubit state");
}

inline void require_triple(const DensityMatrix& rho, const char* who) {
  if (rho.dims() != std::vector<int>{2, 2, 2})
    throw std::invalid_argument(std::string(who) +
                                ": expected a three-qubit state");
}

// Principal square root of a Hermitian PSD matrix; tiny negative eigenvalues
// from rounding are clamped to zero.
inline Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw ContractError("psd_sqrt: eigensolver failed");
  Eigen::VectorXd ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol::psd) throw ContractError("psd_sqrt: matrix not PSD");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return solver.eigenvectors() * ev.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace detail

// Pair concurrence. The spin-flipped product rho * rho~ shares its spectrum
// with the Hermitian sqrt(rho) rho~ sqrt(rho), which is what gets
// diagonalized here; eigenvalues within -1e-10 of zero are clamped.
inline double concurrence(const DensityMatrix& rho) {
  detail::require_pair(rho, "concurrence");
  const Matrix& m = rho.matrix();
  const Matrix yy = kron(pauli_y(), pauli_y());
  const Matrix flipped = yy * m.conjugate() * yy;
  const Matrix root = detail::psd_sqrt(m);
  Matrix prod = root * flipped * root;
  prod = (prod + prod.adjoint()) / 2.0;
  auto ev = hermitian_eigenvalues(prod);
  double c = 0.0;
  for (size_t i = 0; i < ev.size(); ++i) {
    if (ev[i] < -tol::psd)
      throw ContractError("concurrence: spectrum dipped below tolerance");
    const double lam = std::sqrt(std::max(ev[i], 0.0));
    c += (i + 1 == ev.size()) ? lam : -lam;
  }
  return std::max(c, 0.0);
}

inline bool is_x_form(const Matrix& m, double threshold = 1e-12) {
  if (m.rows() != 4 || m.cols() != 4) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool x_slot = i == j || i + j == 3;
      if (!x_slot && std::abs(m(i, j)) >= threshold) return false;
    }
  return true;
}

// Concurrence of an X-form pair state from its seven independent entries.
inline double concurrence_x(const DensityMatrix& rho) {
  detail::require_pair(rho, "concurrence_x");
  const Matrix& m = rho.matrix();
  if (!is_x_form(m))
    throw std::invalid_argument("concurrence_x: state is not in X form");
  const double a = m(0, 0).real();
  const double b = m(1, 1).real();
  const double c = m(2, 2).real();
  const double d = m(3, 3).real();
  const double w = std::abs(m(0, 3));
  const double z = std::abs(m(1, 2));
  return 2.0 * std::max({0.0, z - std::sqrt(std::max(a * d, 0.0)),
                         w - std::sqrt(std::max(b * c, 0.0))});
}

// Two-setting correlation maximum over local measurement choices, from the
// two largest eigenvalues of X^T X where X is the 3x3 correlation block.
inline double chsh_max(const DensityMatrix& rho) {
  detail::require_pair(rho, "chsh_max");
  Eigen::Matrix3d x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      x(i, j) = (rho.matrix() * kron(pauli(i), pauli(j))).trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(x.transpose() * x);
  if (solver.info() != Eigen::Success)
    throw ContractError("chsh_max: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return 2.0 * std::sqrt(std::max(ev(1) + ev(2), 0.0));
}

// X-form specialization of the two-setting maximum. The published variant of
// this formula collapsed one coherence into the other; this is the corrected
// reading, with Z1/Z2 built from both coherences.
inline double chsh_x(const DensityMatrix& rho) {
  detail::require_pair(rho, "chsh_x");
  const Matrix& m = rho.matrix();
  if (!is_x_form(m))
    throw std::invalid_argument("chsh_x: state is not in X form");
  const double a = m(0, 0).real();
  const double b = m(1, 1).real();
  const double c = m(2, 2).real();
  const double d = m(3, 3).real();
  const double w = std::abs(m(0, 3));
  const double z = std::abs(m(1, 2));
  const double z1 = 4.0 * (w + z) * (w + z);
  const double z2 = 4.0 * (w - z) * (w - z);
  const double z3 = (a - b - c + d) * (a - b - c + d);
  return std::max(2.0 * std::sqrt(z1 + z2), 2.0 * std::sqrt(z1 + z3));
}

// Residual entanglement of a three-qubit state: negativity-based one-tangles
// minus pair two-tangles, averaged over the three pivots. Negativities are
// clamped at zero before squaring, and each pivot share is clamped at zero.
inline double pi_tangle(const DensityMatrix& rho) {
  detail::require_triple(rho, "pi_tangle");
  const auto negativity = [](const DensityMatrix& state, int mode) {
    return std::max(trace_norm(partial_transpose(state, mode)) - 1.0, 0.0);
  };
  std::array<double, 3> one;
  for (int mode = 0; mode < 3; ++mode) one[mode] = negativity(rho, mode);

  // pair_neg[i][j]: negativity of the (i, j) reduction transposed on i
  double pair_neg[3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const int lo = std::min(i, j), hi = std::max(i, j);
      auto pair = partial_trace(rho, {lo, hi});
      pair_neg[i][j] = negativity(pair, i == lo ? 0 : 1);
    }

  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double share = one[i] * one[i] - pair_neg[i][j] * pair_neg[i][j] -
                         pair_neg[i][k] * pair_neg[i][k];
    total += std::max(share, 0.0);
  }
  return total / 3.0;
}

// Full three-party correlation tensor t[i][j][k] = <sigma_i sigma_j sigma_k>.
struct CorrelationTensor3 {
  double t[3][3][3] = {};
};

inline CorrelationTensor3 correlation_tensor3(const DensityMatrix& rho) {
  detail::require_triple(rho, "correlation_tensor3");
  CorrelationTensor3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const cplx tr =
            (rho.matrix() * kron(kron(pauli(i), pauli(j)), pauli(k))).trace();
        if (std::abs(tr.imag()) >= 1e-10)
          throw ContractError(
              "correlation_tensor3: correlation has an imaginary residue");
        if (std::abs(tr.real()) > 1.0 + 1e-10)
          throw ContractError(
              "correlation_tensor3: correlation left the unit interval");
        out.t[i][j][k] = tr.real();
      }
  return out;
}

using Vec3 = Eigen::Vector3d;

// Two measurement directions per party. Invariant: all six unit norm to 1e-12.
struct MeasurementFrame {
  Vec3 a, a2, b, b2, c, c2;
};

inline void validate(const MeasurementFrame& f) {
  for (const Vec3* v : {&f.a, &f.a2, &f.b, &f.b2, &f.c, &f.c2})
    if (std::abs(v->norm() - 1.0) > tol::unit_norm)
      throw std::invalid_argument(
          "MeasurementFrame: directions must be unit vectors");
}

namespace detail {

// w_k = sum_ij t[i][j][k] u_i v_j
inline Vec3 contract_ab(const CorrelationTensor3& t, const Vec3& u,
                        const Vec3& v) {
  Vec3 out = Vec3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double uv = u(i) * v(j);
      for (int k = 0; k < 3; ++k) out(k) += t.t[i][j][k] * uv;
    }
  return out;
}

// u_i = sum_jk t[i][j][k] v_j w_k
inline Vec3 contract_bc(const CorrelationTensor3& t, const Vec3& v,
                        const Vec3& w) {
  Vec3 out = Vec3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out(i) += t.t[i][j][k] * v(j) * w(k);
  return out;
}

// v_j = sum_ik t[i][j][k] u_i w_k
inline Vec3 contract_ac(const CorrelationTensor3& t, const Vec3& u,
                        const Vec3& w) {
  Vec3 out = Vec3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out(j) += t.t[i][j][k] * u(i) * w(k);
  return out;
}

inline double triple(const CorrelationTensor3& t, const Vec3& u, const Vec3& v,
                     const Vec3& w) {
  return contract_ab(t, u, v).dot(w);
}

// Normalize, keeping the previous direction on a (measure-zero) zero update.
inline Vec3 normalize_or_keep(const Vec3& v, const Vec3& previous) {
  const double n = v.norm();
  if (n < 1e-300) return previous;
  return v / n;
}

// Deterministic 64-bit stream; the per-restart streams depend only on
// (seed, restart index), never on sweep order or thread schedule.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double gaussian() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }
  Vec3 unit_vec3() {
    while (true) {
      const Vec3 v(gaussian(), gaussian(), gaussian());
      const double n = v.norm();
      if (n > 1e-6) return v / n;
    }
  }
};

}  // namespace detail

// Hybrid three-setting correlation value at a fixed frame:
//   S = E(a,b,c+c2) + E(a,b2,c-c2) + E(a2,b,c-c2) - E(a2,b2,c+c2).
inline double svetlichny_value(const CorrelationTensor3& t,
                               const MeasurementFrame& f) {
  validate(f);
  const Vec3 cp = f.c + f.c2, cm = f.c - f.c2;
  return detail::triple(t, f.a, f.b, cp) + detail::triple(t, f.a, f.b2, cm) +
         detail::triple(t, f.a2, f.b, cm) - detail::triple(t, f.a2, f.b2, cp);
}

inline double svetlichny_value(const DensityMatrix& rho,
                               const MeasurementFrame& f) {
  return svetlichny_value(correlation_tensor3(rho), f);
}

struct OptimizerConfig {
  int restarts = 50;
  int max_sweeps = 500;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
};

inline void validate(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1)
    throw std::invalid_argument("OptimizerConfig: restarts must be positive");
  if (cfg.max_sweeps < 1)
    throw std::invalid_argument("OptimizerConfig: max_sweeps must be positive");
  if (!(cfg.tolerance > 0.0))
    throw std::invalid_argument("OptimizerConfig: tolerance must be positive");
}

struct SvetlichnyResult {
  double value = 0.0;        // best |S| over restarts
  MeasurementFrame frame{};  // frame realizing it
  bool converged = false;    // best two restarts agree within 1e-6
  double runner_up = 0.0;    // second best restart value
};

// Alternating closed-form ascent: each party update is the exact maximizer
// given the other two, so the objective never decreases; a decrease beyond
// rounding slack trips a contract error. Restart streams are independent of
// evaluation order, making results bitwise reproducible for a given seed.
inline SvetlichnyResult svetlichny_optimize(const CorrelationTensor3& t,
                                            const OptimizerConfig& cfg = {}) {
  validate(cfg);
  double best_val = -1.0;
  double second = -1.0;
  MeasurementFrame best_frame{};
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    detail::SplitMix64 rng{cfg.seed ^
                           (0xD1B54A32D192ED03ull *
                            static_cast<std::uint64_t>(restart + 1))};
    Vec3 a = rng.unit_vec3(), a2 = rng.unit_vec3();
    Vec3 b = rng.unit_vec3(), b2 = rng.unit_vec3();
    Vec3 c = rng.unit_vec3(), c2 = rng.unit_vec3();
    double objective = -1.0;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      const Vec3 cp = c + c2, cm = c - c2;
      const Vec3 u = detail::contract_bc(t, b, cp) + detail::contract_bc(t, b2, cm);
      const Vec3 v = detail::contract_bc(t, b, cm) - detail::contract_bc(t, b2, cp);
      a = detail::normalize_or_keep(u, a);
      a2 = detail::normalize_or_keep(v, a2);

      const Vec3 g = detail::contract_ac(t, a, cp) + detail::contract_ac(t, a2, cm);
      const Vec3 h = detail::contract_ac(t, a, cm) - detail::contract_ac(t, a2, cp);
      b = detail::normalize_or_keep(g, b);
      b2 = detail::normalize_or_keep(h, b2);

      const Vec3 tab = detail::contract_ab(t, a, b);
      const Vec3 tab2 = detail::contract_ab(t, a, b2);
      const Vec3 ta2b = detail::contract_ab(t, a2, b);
      const Vec3 ta2b2 = detail::contract_ab(t, a2, b2);
      const Vec3 mvec = tab + tab2 + ta2b - ta2b2;
      const Vec3 nvec = tab - tab2 - ta2b - ta2b2;
      c = detail::normalize_or_keep(mvec, c);
      c2 = detail::normalize_or_keep(nvec, c2);

      const double next = c.dot(mvec) + c2.dot(nvec);
      if (next < objective - 1e-9)
        throw ContractError("svetlichny_optimize: objective decreased");
      const double gain = next - objective;
      objective = next;
      if (sweep > 0 && gain < cfg.tolerance) break;
    }
    if (objective > best_val) {
      second = best_val;
      best_val = objective;
      best_frame = MeasurementFrame{a, a2, b, b2, c, c2};
    } else if (objective > second) {
      second = objective;
    }
  }
  SvetlichnyResult best;
  best.value = std::max(best_val, 0.0);
  best.frame = best_frame;
  best.runner_up = std::max(second, 0.0);
  best.converged = cfg.restarts < 2 || (best.value - best.runner_up) <= 1e-6;
  return best;
}

inline SvetlichnyResult svetlichny_optimize(const DensityMatrix& rho,
                                            const OptimizerConfig& cfg = {}) {
  return svetlichny_optimize(correlation_tensor3(rho), cfg);
}

inline double svetlichny_max(const DensityMatrix& rho,
                             const OptimizerConfig& cfg = {}) {
  return svetlichny_optimize(rho, cfg).value;
}

}  // namespace hc
