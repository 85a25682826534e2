#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace collide {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Largest operator dimension handled anywhere (system + four ancilla qubits).
inline constexpr int kMaxDim = 32;

/// Numerical tolerances shared by every module.
struct Tolerances {
  static constexpr double kHerm = 1e-12;  // max |rho - rho^dagger| and |tr rho - 1|
  static constexpr double kPsd = 1e-10;   // smallest admissible eigenvalue is -kPsd
  static constexpr double kEig = 1e-10;   // Hermiticity required by herm_eigen
};

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// max_ij |m(i,j) - conj(m(j,i))|
double hermiticity_error(const CMatrix& m);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Trace norm of a Hermitian matrix (sum of absolute eigenvalues).
double trace_norm(const CMatrix& h);

/// Unit-trace Hermitian matrix. Hermiticity and trace are checked on
/// construction; positivity is checked by `check_psd` or by the consumers
/// that already diagonalize the state.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m);

  /// Pure-state projector |psi><psi|.
  static DensityMatrix from_pure(const CVector& amplitudes);

  /// Diagonal state with the given populations.
  static DensityMatrix diagonal(std::span<const double> populations);

  const CMatrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double min_eigenvalue() const;
  /// Throws NumericError if an eigenvalue lies below -Tolerances::kPsd.
  void check_psd() const;

 private:
  CMatrix m_;
};

/// Normalized state vector.
class PureState {
 public:
  explicit PureState(CVector amplitudes);

  const CVector& amplitudes() const noexcept { return v_; }
  int dim() const noexcept { return static_cast<int>(v_.size()); }
  DensityMatrix projector() const { return DensityMatrix::from_pure(v_); }

 private:
  CVector v_;
};

/// Kronecker product a (x) b. Throws CapacityError beyond kMaxDim.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Reduced state on the subsystems listed in `keep` (ascending order is not
/// required; the result is ordered as the subsystems appear in `dims`).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep,
                            std::span<const int> dims);

/// Raw-matrix variant used on hot paths; no validation of the output.
CMatrix partial_trace_raw(const CMatrix& rho, std::span<const int> keep,
                          std::span<const int> dims);

struct HermEigen {
  RVector values;  // ascending
  CMatrix vectors; // columns are eigenvectors
};

/// Eigen-decomposition of a Hermitian matrix.
HermEigen herm_eigen(const CMatrix& h);

/// Computes (op (x) I) * m where op acts on the subsystems `targets` of a
/// space with subsystem dimensions `dims`. `targets` order defines the
/// tensor ordering of op's own index.
CMatrix embed_left(const CMatrix& op, const CMatrix& m,
                   std::span<const int> targets, std::span<const int> dims);

/// op rho op^dagger with op embedded on `targets`.
CMatrix conjugate_on(const CMatrix& op, const CMatrix& rho,
                     std::span<const int> targets, std::span<const int> dims);

/// In-place qubit kernels. Qubit 0 is the most significant index bit of an
/// nq-qubit matrix (system first, then ancillas in order).
namespace kernels {
/// rho <- (u on qubit q) rho (u on qubit q)^dagger, u is 2x2.
void conjugate_1q(const CMatrix& u, CMatrix& rho, int q, int nq);
/// rho <- (u on qubits q0,q1) rho (...)^dagger, u is 4x4 with q0 as its
/// most significant factor.
void conjugate_2q(const CMatrix& u, CMatrix& rho, int q0, int q1, int nq);
/// Trace out qubit 0.
CMatrix trace_out_first(const CMatrix& rho);
}  // namespace kernels

/// Dimension list for n qubits.
std::vector<int> qubit_dims(int n);

/// Pauli and basis helpers (index 0 = |g>, index 1 = |e>).
namespace ops {
CMatrix identity(int dim);
CMatrix sigma_x();
CMatrix sigma_y();
CMatrix sigma_z();
/// sigma^- = |g><e|
CMatrix sigma_minus();
/// sigma^+ = |e><g|
CMatrix sigma_plus();
}  // namespace ops

}  // namespace collide
