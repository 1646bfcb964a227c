#pragma once
// Dense complex matrix kernel for small multi-qubit registers: a checked
// density-matrix type plus tensor products, partial trace, partial transpose,
// trace norm and Hermitian spectra. Everything here is pure and value-based,
// so results can be shared freely across worker threads.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Contract breaches (a matrix that stopped being a state, an eigensolve whose
// residual is too large) are distinct from plain argument errors so callers
// can tell sick data from a bad call.
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double trace_real = 1e-10;
inline constexpr double trace_imag = 1e-12;
inline constexpr double hermitian = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double eigen_input = 1e-10;
inline constexpr double eigen_residual = 1e-10;
inline constexpr double unit_norm = 1e-12;
}  // namespace tol

inline double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline const Matrix& pauli_x() {
  static const Matrix m = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  return m;
}

inline const Matrix& pauli_y() {
  static const Matrix m =
      (Matrix(2, 2) << 0, cplx(0, -1), cplx(0, 1), 0).finished();
  return m;
}

inline const Matrix& pauli_z() {
  static const Matrix m = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  return m;
}

// 0 -> x, 1 -> y, 2 -> z.
inline const Matrix& pauli(int i) {
  switch (i) {
    case 0: return pauli_x();
    case 1: return pauli_y();
    case 2: return pauli_z();
    default: throw std::invalid_argument("pauli: index must be 0, 1 or 2");
  }
}

// Ascending real spectrum of a Hermitian matrix. Rejects inputs whose
// hermiticity defect exceeds 1e-10 and eigensolves whose reconstruction
// residual exceeds 1e-10.
inline std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  if (hermiticity_defect(m) > tol::eigen_input)
    throw ContractError("hermitian_eigenvalues: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw ContractError("hermitian_eigenvalues: eigensolver failed");
  const Matrix recon = solver.eigenvectors() *
                       solver.eigenvalues().asDiagonal() *
                       solver.eigenvectors().adjoint();
  if ((recon - m).cwiseAbs().maxCoeff() > tol::eigen_residual)
    throw ContractError("hermitian_eigenvalues: reconstruction residual too large");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

// Sum of singular values. Equals sum of |eigenvalue| for Hermitian input.
inline double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

// Density matrix over a register of named-by-position modes. The constructor
// enforces the state contract: unit trace (1e-10 real, 1e-12 imaginary),
// hermiticity within 1e-12, smallest eigenvalue >= -1e-10.
class DensityMatrix {
 public:
  DensityMatrix(Matrix m, std::vector<int> dims)
      : m_(std::move(m)), dims_(std::move(dims)) {
    if (m_.rows() != m_.cols())
      throw std::invalid_argument("DensityMatrix: matrix must be square");
    if (dims_.empty())
      throw std::invalid_argument("DensityMatrix: dims must be nonempty");
    Eigen::Index expected = 1;
    for (int d : dims_) {
      if (d < 1) throw std::invalid_argument("DensityMatrix: dims must be positive");
      expected *= d;
    }
    if (expected != m_.rows())
      throw std::invalid_argument("DensityMatrix: dims do not match matrix size");
    const cplx tr = m_.trace();
    if (std::abs(tr.real() - 1.0) > tol::trace_real)
      throw ContractError("DensityMatrix: trace deviates from 1 by " +
                          std::to_string(std::abs(tr.real() - 1.0)));
    if (std::abs(tr.imag()) > tol::trace_imag)
      throw ContractError("DensityMatrix: trace has imaginary part");
    if (hermiticity_defect(m_) > tol::hermitian)
      throw ContractError("DensityMatrix: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw ContractError("DensityMatrix: eigensolver failed");
    if (solver.eigenvalues().minCoeff() < -tol::psd)
      throw ContractError("DensityMatrix: negative eigenvalue " +
                          std::to_string(solver.eigenvalues().minCoeff()));
  }

  const Matrix& matrix() const { return m_; }
  const std::vector<int>& dims() const { return dims_; }
  int mode_count() const { return static_cast<int>(dims_.size()); }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
  std::vector<int> dims_;
};

namespace detail {

// Flat-index strides for a mixed-radix register, most significant mode first.
inline std::vector<Eigen::Index> strides(const std::vector<int>& dims) {
  std::vector<Eigen::Index> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * dims[i + 1];
  return s;
}

// Flat offsets contributed by every joint assignment of the given modes.
inline std::vector<Eigen::Index> offsets(const std::vector<int>& modes,
                                         const std::vector<int>& dims,
                                         const std::vector<Eigen::Index>& stride) {
  Eigen::Index total = 1;
  for (int m : modes) total *= dims[m];
  std::vector<Eigen::Index> out(total, 0);
  Eigen::Index repeat = total;
  for (int m : modes) {
    repeat /= dims[m];
    Eigen::Index idx = 0;
    while (idx < total) {
      for (int v = 0; v < dims[m]; ++v)
        for (Eigen::Index k = 0; k < repeat; ++k) out[idx++] += v * stride[m];
    }
  }
  return out;
}

}  // namespace detail

// Reduce to the modes listed in keep (strictly increasing, nonempty, possibly
// all of them) by tracing out the rest.
inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   const std::vector<int>& keep) {
  const auto& dims = rho.dims();
  if (keep.empty())
    throw std::invalid_argument("partial_trace: keep must be nonempty");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= rho.mode_count())
      throw std::invalid_argument("partial_trace: mode index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep must be strictly increasing");
  }
  std::vector<int> traced;
  {
    size_t k = 0;
    for (int m = 0; m < rho.mode_count(); ++m) {
      if (k < keep.size() && keep[k] == m) { ++k; continue; }
      traced.push_back(m);
    }
  }
  if (traced.empty()) return rho;

  const auto stride = detail::strides(dims);
  const auto kept_off = detail::offsets(keep, dims, stride);
  const auto traced_off = detail::offsets(traced, dims, stride);
  const Eigen::Index n = static_cast<Eigen::Index>(kept_off.size());
  Matrix out = Matrix::Zero(n, n);
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      cplx acc = 0;
      for (Eigen::Index t : traced_off) acc += m(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = acc;
    }
  std::vector<int> kept_dims;
  kept_dims.reserve(keep.size());
  for (int k : keep) kept_dims.push_back(dims[k]);
  return DensityMatrix(std::move(out), std::move(kept_dims));
}

// Transpose the single given mode in place of the register; the result is
// generally not a state, so it is returned as a plain matrix.
inline Matrix partial_transpose(const DensityMatrix& rho, int subsystem) {
  if (subsystem < 0 || subsystem >= rho.mode_count())
    throw std::invalid_argument("partial_transpose: mode index out of range");
  const auto& dims = rho.dims();
  const auto stride = detail::strides(dims);
  const Eigen::Index n = rho.dim();
  const Eigen::Index s = stride[subsystem];
  const int d = dims[subsystem];
  const auto& m = rho.matrix();
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int vi = static_cast<int>((i / s) % d);
    const Eigen::Index base_i = i - vi * s;
    for (Eigen::Index j = 0; j < n; ++j) {
      const int vj = static_cast<int>((j / s) % d);
      const Eigen::Index base_j = j - vj * s;
      out(i, j) = m(base_i + vj * s, base_j + vi * s);
    }
  }
  return out;
}

}  // namespace hc
