#pragma once
// Closed-form reductions of the damped five-mode register, as functions of
// the mixing coefficient beta and the channel parameters (p, r), plus
// closed-form bipartite measures built from them. Each matrix is filled
// entry-by-entry with its symmetric partner mirrored, so hermiticity holds
// by construction and the DensityMatrix contract re-checks trace and
// positivity on every call.
//
// The four A-free pair reductions carry no (p, r) dependence at all: the
// channel touches mode A only, so tracing A out removes it. Their entries
// here are literally free of p and r.

#include <hc/qmat.hpp>
#include <hc/subsystems.hpp>

#include <cmath>

namespace hc {

namespace detail {

inline void check_beta_range(double beta) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("closed form: beta must lie in (0, 1]");
}

inline void check_gad_range(double p, double r) {
  if (!(p >= 0.0) || p > 1.0)
    throw std::invalid_argument("closed form: p must lie in [0, 1]");
  if (!(r >= 0.0) || r > 1.0)
    throw std::invalid_argument("closed form: r must lie in [0, 1]");
}

}  // namespace detail

// Reduction onto the accessible modes (A, B_I, C_I).
inline DensityMatrix rho_accessible(double beta, double p, double r) {
  detail::check_beta_range(beta);
  detail::check_gad_range(p, r);
  const double b2 = beta * beta;
  const double b4 = b2 * b2;
  const double kr = std::sqrt(1.0 - r);
  Matrix m = Matrix::Zero(8, 8);
  m(0, 0) = b4 * p * r / 3.0;
  m(1, 1) = m(2, 2) = -b2 * (-1.0 + r + (b2 - 2.0) * p * r) / 3.0;
  m(1, 2) = m(2, 1) = b2 * (1.0 + (p - 1.0) * r) / 3.0;
  m(1, 4) = m(2, 4) = m(4, 1) = m(4, 2) = b2 * beta * kr / 3.0;
  m(3, 3) = (b2 - 1.0) * (((b2 - 3.0) * p + 2.0) * r - 2.0) / 3.0;
  m(3, 5) = m(3, 6) = m(5, 3) = m(6, 3) = beta * (1.0 - b2) * kr / 3.0;
  m(4, 4) = -b4 * (p * r - 1.0) / 3.0;
  m(5, 5) = m(6, 6) = b2 * (1.0 + r - 2.0 * p * r + b2 * (p * r - 1.0)) / 3.0;
  m(5, 6) = m(6, 5) = b2 * (1.0 - p) * r / 3.0;
  m(7, 7) = (b2 - 1.0) * (b2 - ((b2 - 3.0) * p + 2.0) * r - 1.0) / 3.0;
  return DensityMatrix(std::move(m), {2, 2, 2});
}

// Reduction onto (A, B_I, B_II): the observer plus both halves of one
// horizon pair.
inline DensityMatrix rho_ab1b2(double beta, double p, double r) {
  detail::check_beta_range(beta);
  detail::check_gad_range(p, r);
  const double b2 = beta * beta;
  const double s = std::sqrt(1.0 - b2);
  const double kr = std::sqrt(1.0 - r);
  Matrix m = Matrix::Zero(8, 8);
  m(0, 0) = b2 * (1.0 + (2.0 * p - 1.0) * r) / 3.0;
  m(0, 3) = m(3, 0) = beta * s * (1.0 + (2.0 * p - 1.0) * r) / 3.0;
  m(2, 2) = (1.0 + (p - 1.0) * r) / 3.0;
  m(2, 4) = m(4, 2) = beta * kr / 3.0;
  m(2, 7) = m(7, 2) = s * kr / 3.0;
  m(3, 3) = (1.0 - b2) * (1.0 + (2.0 * p - 1.0) * r) / 3.0;
  m(4, 4) = b2 * (1.0 + r - 2.0 * p * r) / 3.0;
  m(4, 7) = m(7, 4) = beta * s * (1.0 + r - 2.0 * p * r) / 3.0;
  m(6, 6) = (1.0 - p) * r / 3.0;
  m(7, 7) = (b2 - 1.0) * ((2.0 * p - 1.0) * r - 1.0) / 3.0;
  return DensityMatrix(std::move(m), {2, 2, 2});
}

// Reduction onto (A, B_II, C_II): the observer plus both inside modes.
inline DensityMatrix rho_ab2c2(double beta, double p, double r) {
  detail::check_beta_range(beta);
  detail::check_gad_range(p, r);
  const double b2 = beta * beta;
  const double b4 = b2 * b2;
  const double s2 = 1.0 - b2;
  const double s = std::sqrt(s2);
  const double kr = std::sqrt(1.0 - r);
  Matrix m = Matrix::Zero(8, 8);
  m(0, 0) = b2 * (2.0 + ((2.0 + b2) * p - 2.0) * r) / 3.0;
  m(0, 5) = m(0, 6) = m(5, 0) = m(6, 0) = b2 * s * kr / 3.0;
  m(1, 1) = m(2, 2) = s2 * (1.0 + (p * b2 + p - 1.0) * r) / 3.0;
  m(1, 2) = m(2, 1) = s2 * (1.0 + (p - 1.0) * r) / 3.0;
  m(1, 7) = m(2, 7) = m(7, 1) = m(7, 2) = s2 * s * kr / 3.0;
  m(3, 3) = s2 * s2 * p * r / 3.0;
  m(4, 4) = (b4 - b2 * ((b2 + 2.0) * p - 2.0) * r) / 3.0;
  m(5, 5) = m(6, 6) = (b2 - 1.0) * (r * (p - 1.0) + b2 * (p * r - 1.0)) / 3.0;
  m(5, 6) = m(6, 5) = s2 * (1.0 - p) * r / 3.0;
  m(7, 7) = s2 * s2 * (1.0 - p * r) / 3.0;
  return DensityMatrix(std::move(m), {2, 2, 2});
}

// Reduction onto (A, B_I, C_II): one outside mode and one inside mode.
inline DensityMatrix rho_ab1c2(double beta, double p, double r) {
  detail::check_beta_range(beta);
  detail::check_gad_range(p, r);
  const double b2 = beta * beta;
  const double b4 = b2 * b2;
  const double s2 = 1.0 - b2;
  const double s = std::sqrt(s2);
  const double kr = std::sqrt(1.0 - r);
  Matrix m = Matrix::Zero(8, 8);
  m(0, 0) = b2 * (1.0 + (b2 * p + p - 1.0) * r) / 3.0;
  m(0, 3) = m(3, 0) = beta * s * (1.0 + (p - 1.0) * r) / 3.0;
  m(0, 5) = m(5, 0) = b2 * s * kr / 3.0;
  m(1, 1) = b2 * s2 * p * r / 3.0;
  m(2, 2) = (1.0 + ((1.0 + b2 - b4) * p - 1.0) * r) / 3.0;
  m(2, 4) = m(4, 2) = b2 * beta * kr / 3.0;
  m(2, 7) = m(7, 2) = s2 * s * kr / 3.0;
  m(3, 3) = (b2 - 1.0) * (r - 1.0 + (b2 - 2.0) * p * r) / 3.0;
  m(3, 5) = m(5, 3) = beta * s2 * kr / 3.0;
  m(4, 4) = (b4 - b2 * r * (b2 * p + p - 1.0)) / 3.0;
  m(4, 7) = m(7, 4) = (1.0 - p) * r * beta * s / 3.0;
  m(5, 5) = b2 * s2 * (1.0 - p * r) / 3.0;
  m(6, 6) = (r - p * r + b2 * (b2 - 1.0) * (p * r - 1.0)) / 3.0;
  m(7, 7) = s2 * (1.0 + r - 2.0 * p * r + b2 * (p * r - 1.0)) / 3.0;
  return DensityMatrix(std::move(m), {2, 2, 2});
}

// Closed-form tripartite reduction, where one exists. The two remaining
// tripartite reductions (a-b2-c1, a-c1-c2) are mirror images of a-b1-c2 and
// a-b1-b2 under the B <-> C relabeling and have no separate closed form.
inline DensityMatrix closed_form_tripartite(Subsystem id, double beta,
                                            double p, double r) {
  switch (id) {
    case Subsystem::ab1c1: return rho_accessible(beta, p, r);
    case Subsystem::ab1b2: return rho_ab1b2(beta, p, r);
    case Subsystem::ab2c2: return rho_ab2c2(beta, p, r);
    case Subsystem::ab1c2: return rho_ab1c2(beta, p, r);
    case Subsystem::ab2c1:
    case Subsystem::ac1c2:
      throw UnsupportedSubsystem(
          "closed_form_tripartite: no closed form for " +
          std::string(name(id)) + "; use its B<->C mirror");
    default:
      throw std::invalid_argument(
          "closed_form_tripartite: subsystem is not tripartite");
  }
}

// Closed-form two-mode reduction. Pairs containing A depend on (p, r);
// the four A-free pairs do not.
inline DensityMatrix rho_pair(Subsystem id, double beta, double p, double r) {
  detail::check_beta_range(beta);
  detail::check_gad_range(p, r);
  if (is_tripartite(id))
    throw std::invalid_argument("rho_pair: subsystem is not a pair");
  const double b2 = beta * beta;
  const double b4 = b2 * b2;
  const double s = std::sqrt(1.0 - b2);
  const double kr = std::sqrt(1.0 - r);
  Matrix m = Matrix::Zero(4, 4);
  switch (id) {
    case Subsystem::ab1:
    case Subsystem::ac1:
      m(0, 0) = b2 * (1.0 + (2.0 * p - 1.0) * r) / 3.0;
      m(1, 1) = (2.0 + (3.0 * p - 2.0) * r + b2 * (r - 2.0 * p * r - 1.0)) / 3.0;
      m(1, 2) = m(2, 1) = beta * kr / 3.0;
      m(2, 2) = b2 * (r - 2.0 * p * r + 1.0) / 3.0;
      m(3, 3) = (1.0 + (2.0 - 3.0 * p) * r + b2 * ((2.0 * p - 1.0) * r - 1.0)) / 3.0;
      break;
    case Subsystem::ab2:
    case Subsystem::ac2:
      m(0, 0) = (1.0 + b2 + (p - 1.0 + b2 * (2.0 * p - 1.0)) * r) / 3.0;
      m(0, 3) = m(3, 0) = s * kr / 3.0;
      m(1, 1) = (1.0 - b2) * (1.0 + (2.0 * p - 1.0) * r) / 3.0;
      m(2, 2) = (r - p * r + b2 * (1.0 + r - 2.0 * p * r)) / 3.0;
      m(3, 3) = (1.0 - b2) * (1.0 - (2.0 * p - 1.0) * r) / 3.0;
      break;
    case Subsystem::b1c1:
      m(0, 0) = b4 / 3.0;
      m(1, 1) = m(2, 2) = b2 * (2.0 - b2) / 3.0;
      m(1, 2) = m(2, 1) = b2 / 3.0;
      m(3, 3) = (b4 - 4.0 * b2 + 3.0) / 3.0;
      break;
    case Subsystem::b1c2:
      m(0, 0) = (b2 + b4) / 3.0;
      m(0, 3) = m(3, 0) = beta * s / 3.0;
      m(1, 1) = (b2 - b4) / 3.0;
      m(2, 2) = (1.0 + b2 - b4) / 3.0;
      m(3, 3) = (2.0 - 3.0 * b2 + b4) / 3.0;
      break;
    case Subsystem::b2c1:
      m(0, 0) = (b2 + b4) / 3.0;
      m(0, 3) = m(3, 0) = beta * s / 3.0;
      m(1, 1) = (1.0 + b2 - b4) / 3.0;
      m(2, 2) = (b2 - b4) / 3.0;
      m(3, 3) = (2.0 - 3.0 * b2 + b4) / 3.0;
      break;
    case Subsystem::b1b2:
    case Subsystem::c1c2:
      m(0, 0) = 2.0 * b2 / 3.0;
      m(0, 3) = m(3, 0) = 2.0 * beta * s / 3.0;
      m(2, 2) = 1.0 / 3.0;
      m(3, 3) = 2.0 * (1.0 - b2) / 3.0;
      break;
    case Subsystem::b2c2:
      m(0, 0) = b2 * (2.0 + b2) / 3.0;
      m(1, 1) = m(2, 2) = (1.0 - b4) / 3.0;
      m(1, 2) = m(2, 1) = (1.0 - b2) / 3.0;
      m(3, 3) = (1.0 - b2) * (1.0 - b2) / 3.0;
      break;
    default:
      throw std::invalid_argument("rho_pair: unknown subsystem");
  }
  return DensityMatrix(std::move(m), {2, 2});
}

// Closed-form maximal two-setting correlation value for a pair, written as
// the published max-of-two-branches expressions. Every branch was checked
// against the general eigenvalue route; they agree, so no corrected variant
// is needed here.
inline double closed_form_bn(Subsystem id, double beta, double p, double r) {
  detail::check_beta_range(beta);
  detail::check_gad_range(p, r);
  if (is_tripartite(id))
    throw UnsupportedSubsystem(
        "closed_form_bn: no closed form for a tripartite subsystem");
  const double b2 = beta * beta;
  const double b4 = b2 * b2;
  const double s2 = 1.0 - b2;
  const double root2 = std::sqrt(2.0);
  const auto sq = [](double x) { return x * x; };
  using std::abs;
  using std::sqrt;
  switch (id) {
    case Subsystem::b1b2:
    case Subsystem::c1c2: {
      const double branch1 = (8.0 * root2 / 3.0) * sqrt(abs(b2 - b4));
      const double inner = 2.0 * abs(b2 - 1.0) - 1.0 + 2.0 * b2;
      const double branch2 = (2.0 / 3.0) * sqrt(16.0 * abs(b2 - b4) + sq(inner));
      return std::max(branch1, branch2);
    }
    case Subsystem::ab1:
    case Subsystem::ac1: {
      const double branch1 = (4.0 * root2 / 3.0) * beta * sqrt(1.0 - r);
      const double inner = abs(b2 * (r - 2.0 * p * r + 1.0)) -
                           b2 * abs(2.0 * p * r - r + 1.0) +
                           abs(2.0 + (3.0 * p - 2.0) * r +
                               b2 * (r - 2.0 * p * r - 1.0)) -
                           abs(1.0 + (2.0 - 3.0 * p) * r +
                               b2 * ((2.0 * p - 1.0) * r - 1.0));
      const double branch2 =
          (2.0 / 3.0) * sqrt(4.0 * b2 * (1.0 - r) + sq(inner));
      return std::max(branch1, branch2);
    }
    case Subsystem::b1c1: {
      const double branch1 = (4.0 * root2 / 3.0) * b2;
      const double inner =
          b4 - 2.0 * abs(b2 * (b2 - 2.0)) + abs(3.0 - 4.0 * b2 + b4);
      const double branch2 = (2.0 / 3.0) * sqrt(4.0 * b4 + sq(inner));
      return std::max(branch1, branch2);
    }
    case Subsystem::ab2:
    case Subsystem::ac2: {
      const double branch1 = (4.0 * root2 / 3.0) * sqrt(s2) * sqrt(1.0 - r);
      const double inner =
          abs((b2 - 1.0) * (r + 1.0 - 2.0 * p * r)) -
          abs((b2 - 1.0) * (1.0 - r + 2.0 * p * r)) +
          abs(b2 + 1.0 + (p - 1.0 + b2 * (2.0 * p - 1.0)) * r) -
          abs(r - p * r + b2 * (1.0 + r - 2.0 * p * r));
      const double branch2 =
          (2.0 / 3.0) * sqrt(4.0 * s2 * (1.0 - r) + sq(inner));
      return std::max(branch1, branch2);
    }
    case Subsystem::b1c2:
    case Subsystem::b2c1: {
      const double branch1 = (4.0 * root2 / 3.0) * sqrt(abs(b2 - b4));
      const double inner = abs(b2 - b4) + abs(b2 - b4 + 1.0) -
                           abs(2.0 - 3.0 * b2 + b4) - abs(b2 + b4);
      const double branch2 =
          (2.0 / 3.0) * sqrt(4.0 * abs(b2 - b4) + sq(inner));
      return std::max(branch1, branch2);
    }
    case Subsystem::b2c2: {
      const double branch1 = (4.0 * root2 / 3.0) * s2;
      const double inner = sq(b2 - 1.0) + abs(b2 * (2.0 + b2)) -
                           2.0 * abs(1.0 - b4);
      const double branch2 = (2.0 / 3.0) * sqrt(4.0 * sq(s2) + sq(inner));
      return std::max(branch1, branch2);
    }
    default:
      throw std::invalid_argument("closed_form_bn: unknown subsystem");
  }
}

// Closed-form pair concurrence: the X-state formula evaluated on the
// closed-form pair entries. This is the corrected route; the published
// expressions for the b1-b2 and b1-c2 pairs are kept only inside the
// validation report, where their deviation is logged.
inline double closed_form_concurrence(Subsystem id, double beta, double p,
                                      double r) {
  const DensityMatrix rho = rho_pair(id, beta, p, r);
  const auto& m = rho.matrix();
  const double a = m(0, 0).real();
  const double b = m(1, 1).real();
  const double c = m(2, 2).real();
  const double d = m(3, 3).real();
  const double w = std::abs(m(0, 3));
  const double z = std::abs(m(1, 2));
  const double inner = z - std::sqrt(std::max(a * d, 0.0));
  const double outer = w - std::sqrt(std::max(b * c, 0.0));
  return 2.0 * std::max({0.0, inner, outer});
}

}  // namespace hc
