#pragma once
// Horizon-side state preparation: the mixing coefficient of a static dilaton
// black hole, its Hawking temperature, the two-mode squeezing embedding of a
// single Kruskal mode, and the five-mode register obtained by embedding both
// observer-side modes of a tripartite W state.
//
// Register order, most significant mode first: A, B_I, B_II, C_I, C_II.
// The _I modes live outside the horizon, the _II modes inside.

#include <hc/qmat.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace hc {

struct DilatonParams {
  double omega = 1.0;  // mode frequency
  double mass = 1.0;   // black hole mass
  double alpha = 0.0;  // dilaton charge parameter, 0 <= alpha <= mass
};

inline void validate(const DilatonParams& q) {
  if (!(q.omega > 0.0))
    throw std::invalid_argument("DilatonParams: omega must be positive");
  if (!(q.mass > 0.0))
    throw std::invalid_argument("DilatonParams: mass must be positive");
  if (!(q.alpha >= 0.0) || q.alpha > q.mass)
    throw std::invalid_argument("DilatonParams: alpha must lie in [0, mass]");
}

// Vacuum-branch weight of the Kruskal embedding, beta = (e^{-8 pi omega
// (mass - alpha)} + 1)^{-1/2}. Decreases from ~1 at alpha = 0 to exactly
// 2^{-1/2} at the extremal point alpha = mass.
inline double beta(const DilatonParams& q) {
  validate(q);
  return 1.0 / std::sqrt(std::exp(-8.0 * std::numbers::pi * q.omega *
                                  (q.mass - q.alpha)) + 1.0);
}

// T = 1/(8 pi (mass - alpha)); diverges as alpha -> mass, so the extremal
// point is rejected.
inline double hawking_temperature(double mass, double alpha) {
  if (!(mass > 0.0))
    throw std::invalid_argument("hawking_temperature: mass must be positive");
  if (!(alpha >= 0.0) || alpha >= mass)
    throw std::invalid_argument(
        "hawking_temperature: alpha must lie in [0, mass)");
  return 1.0 / (8.0 * std::numbers::pi * (mass - alpha));
}

// Embed one observer-side qubit mode into the (outside, inside) Kruskal pair,
// basis order |outside inside> = |00>, |01>, |10>, |11>.
//   occupancy 0  ->  beta|00> + sqrt(1 - beta^2)|11>
//   occupancy 1  ->  |10>
inline Vector kruskal_mode_embedding(double beta, int occupancy) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("kruskal_mode_embedding: beta must lie in (0, 1]");
  if (occupancy != 0 && occupancy != 1)
    throw std::invalid_argument("kruskal_mode_embedding: occupancy must be 0 or 1");
  Vector v = Vector::Zero(4);
  if (occupancy == 0) {
    v(0) = beta;
    v(3) = std::sqrt(1.0 - beta * beta);
  } else {
    v(2) = 1.0;
  }
  return v;
}

// Pure state over a register of qubit modes. Invariant: unit norm to 1e-12.
class PureState {
 public:
  PureState(std::vector<std::string> labels, Vector amplitudes)
      : labels_(std::move(labels)), amp_(std::move(amplitudes)) {
    if (labels_.empty())
      throw std::invalid_argument("PureState: labels must be nonempty");
    const Eigen::Index expected = Eigen::Index(1) << labels_.size();
    if (amp_.size() != expected)
      throw std::invalid_argument(
          "PureState: amplitude count does not match mode count");
    if (std::abs(amp_.norm() - 1.0) > tol::unit_norm)
      throw std::invalid_argument("PureState: amplitudes are not unit norm");
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const Vector& amplitudes() const { return amp_; }
  int mode_count() const { return static_cast<int>(labels_.size()); }

  DensityMatrix density() const {
    return DensityMatrix(amp_ * amp_.adjoint(),
                         std::vector<int>(labels_.size(), 2));
  }

 private:
  std::vector<std::string> labels_;
  Vector amp_;
};

inline const std::vector<std::string>& register_labels() {
  static const std::vector<std::string> labels = {"A", "B_I", "B_II", "C_I",
                                                  "C_II"};
  return labels;
}

// Five-mode register carrying the W state after both horizon-side modes are
// embedded; only eight basis amplitudes are nonzero. With s = sqrt(1-beta^2),
// basis index over (A, B_I, B_II, C_I, C_II):
//   |00010> beta/sqrt3      |01000> beta/sqrt3
//   |01011> s/sqrt3         |01110> s/sqrt3
//   |10000> beta^2/sqrt3    |10011> beta*s/sqrt3
//   |11100> beta*s/sqrt3    |11111> s^2/sqrt3
inline PureState dilaton_w_state(double beta) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("dilaton_w_state: beta must lie in (0, 1]");
  const double s = std::sqrt(1.0 - beta * beta);
  const double n = 1.0 / std::sqrt(3.0);
  Vector v = Vector::Zero(32);
  v(2) = beta * n;
  v(8) = beta * n;
  v(11) = s * n;
  v(14) = s * n;
  v(16) = beta * beta * n;
  v(19) = beta * s * n;
  v(28) = beta * s * n;
  v(31) = s * s * n;
  return PureState(register_labels(), std::move(v));
}

}  // namespace hc
