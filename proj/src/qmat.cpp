#include "collide/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace collide {

double hermiticity_error(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double trace_norm(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
  }
  if (m_.rows() > kMaxDim) throw CapacityError("DensityMatrix: dimension exceeds 32");
  const double herr = hermiticity_error(m_);
  if (herr > Tolerances::kHerm) {
    throw std::invalid_argument("DensityMatrix: not Hermitian (error " + std::to_string(herr) + ")");
  }
  const double terr = std::abs(m_.trace() - Complex(1.0, 0.0));
  if (terr > Tolerances::kHerm) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1 by " + std::to_string(terr));
  }
}

DensityMatrix DensityMatrix::from_pure(const CVector& amplitudes) {
  CMatrix m = amplitudes * amplitudes.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> populations) {
  const auto n = static_cast<Eigen::Index>(populations.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = populations[static_cast<size_t>(i)];
  return DensityMatrix(std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void DensityMatrix::check_psd() const {
  const double lo = min_eigenvalue();
  if (lo < -Tolerances::kPsd) {
    throw NumericError("DensityMatrix: negative eigenvalue " + std::to_string(lo));
  }
}

PureState::PureState(CVector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw std::invalid_argument("PureState: empty amplitude vector");
  if (v_.size() > kMaxDim) throw CapacityError("PureState: dimension exceeds 32");
  const double err = std::abs(v_.squaredNorm() - 1.0);
  if (err > Tolerances::kHerm) {
    throw std::invalid_argument("PureState: squared norm differs from 1 by " + std::to_string(err));
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim) throw CapacityError("kron: result dimension exceeds 32");
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

int total_dim(std::span<const int> dims) {
  int d = 1;
  for (int x : dims) {
    if (x <= 0) throw std::invalid_argument("subsystem dimensions must be positive");
    d *= x;
  }
  return d;
}

// Row-major strides: subsystem 0 is the most significant digit.
std::vector<int> strides_of(std::span<const int> dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    s[static_cast<size_t>(k)] = s[static_cast<size_t>(k) + 1] * dims[static_cast<size_t>(k) + 1];
  }
  return s;
}

void check_subsystem_set(std::span<const int> set, std::span<const int> dims, const char* what) {
  std::vector<bool> seen(dims.size(), false);
  for (int k : set) {
    if (k < 0 || k >= static_cast<int>(dims.size()) || seen[static_cast<size_t>(k)]) {
      throw std::invalid_argument(std::string(what) + ": invalid subsystem index set");
    }
    seen[static_cast<size_t>(k)] = true;
  }
}

}  // namespace

CMatrix partial_trace_raw(const CMatrix& rho, std::span<const int> keep,
                          std::span<const int> dims) {
  check_subsystem_set(keep, dims, "partial_trace");
  const int dim = total_dim(dims);
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("partial_trace: subsystem dims do not multiply to matrix dim");
  }
  const auto strides = strides_of(dims);
  const size_t nsub = dims.size();

  std::vector<bool> kept(nsub, false);
  for (int k : keep) kept[static_cast<size_t>(k)] = true;

  // Kept subsystems in their natural order define the output ordering.
  std::vector<int> kept_idx, traced_idx;
  for (size_t k = 0; k < nsub; ++k) (kept[k] ? kept_idx : traced_idx).push_back(static_cast<int>(k));

  int out_dim = 1;
  for (int k : kept_idx) out_dim *= dims[static_cast<size_t>(k)];
  int env_dim = dim / out_dim;

  // offset of each kept multi-index and each traced multi-index in the full space
  auto offsets = [&](const std::vector<int>& subs, int count) {
    std::vector<int> off(static_cast<size_t>(count), 0);
    for (int c = 0; c < count; ++c) {
      int rem = c;
      int o = 0;
      for (int q = static_cast<int>(subs.size()) - 1; q >= 0; --q) {
        const auto s = static_cast<size_t>(subs[static_cast<size_t>(q)]);
        o += (rem % dims[s]) * strides[s];
        rem /= dims[s];
      }
      off[static_cast<size_t>(c)] = o;
    }
    return off;
  };
  const auto keep_off = offsets(kept_idx, out_dim);
  const auto env_off = offsets(traced_idx, env_dim);

  CMatrix out = CMatrix::Zero(out_dim, out_dim);
  for (int i = 0; i < out_dim; ++i) {
    for (int j = 0; j < out_dim; ++j) {
      Complex acc = 0.0;
      for (int e = 0; e < env_dim; ++e) {
        acc += rho(keep_off[static_cast<size_t>(i)] + env_off[static_cast<size_t>(e)],
                   keep_off[static_cast<size_t>(j)] + env_off[static_cast<size_t>(e)]);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep,
                            std::span<const int> dims) {
  CMatrix out = partial_trace_raw(rho.matrix(), keep, dims);
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

HermEigen herm_eigen(const CMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("herm_eigen: matrix not square");
  const double herr = hermiticity_error(h);
  if (herr > Tolerances::kEig) {
    throw std::invalid_argument("herm_eigen: matrix not Hermitian (error " + std::to_string(herr) + ")");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericError("herm_eigen: solver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix embed_left(const CMatrix& op, const CMatrix& m, std::span<const int> targets,
                   std::span<const int> dims) {
  check_subsystem_set(targets, dims, "embed_left");
  const int dim = total_dim(dims);
  if (m.rows() != dim) throw std::invalid_argument("embed_left: matrix does not match dims");
  int op_dim = 1;
  for (int t : targets) op_dim *= dims[static_cast<size_t>(t)];
  if (op.rows() != op_dim || op.cols() != op_dim) {
    throw std::invalid_argument("embed_left: operator dimension does not match target subsystems");
  }
  const auto strides = strides_of(dims);

  // Offset contributed by each value of the operator's own index.
  std::vector<int> op_off(static_cast<size_t>(op_dim), 0);
  for (int c = 0; c < op_dim; ++c) {
    int rem = c;
    int o = 0;
    for (int q = static_cast<int>(targets.size()) - 1; q >= 0; --q) {
      const auto s = static_cast<size_t>(targets[static_cast<size_t>(q)]);
      o += (rem % dims[s]) * strides[s];
      rem /= dims[s];
    }
    op_off[static_cast<size_t>(c)] = o;
  }
  // For each full row index: its op sub-index and the base with target digits cleared.
  std::vector<int> sub(static_cast<size_t>(dim)), base(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    int s = 0;
    int b = i;
    for (int t : targets) {
      const auto tt = static_cast<size_t>(t);
      const int digit = (i / strides[tt]) % dims[tt];
      s = s * dims[tt] + digit;
      b -= digit * strides[tt];
    }
    sub[static_cast<size_t>(i)] = s;
    base[static_cast<size_t>(i)] = b;
  }

  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (int i = 0; i < dim; ++i) {
    const int a = sub[static_cast<size_t>(i)];
    const int b = base[static_cast<size_t>(i)];
    for (int c = 0; c < op_dim; ++c) {
      const Complex w = op(a, c);
      if (w == Complex(0.0, 0.0)) continue;
      out.row(i) += w * m.row(b + op_off[static_cast<size_t>(c)]);
    }
  }
  return out;
}

CMatrix conjugate_on(const CMatrix& op, const CMatrix& rho, std::span<const int> targets,
                     std::span<const int> dims) {
  // (O rho O^dag) = (O (O rho)^dag)^dag
  CMatrix left = embed_left(op, rho, targets, dims);
  CMatrix left_adj = left.adjoint();
  CMatrix both = embed_left(op, left_adj, targets, dims);
  return both.adjoint();
}

std::vector<int> qubit_dims(int n) { return std::vector<int>(static_cast<size_t>(n), 2); }

namespace ops {

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix sigma_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix sigma_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix sigma_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix sigma_minus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

CMatrix sigma_plus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

}  // namespace ops

}  // namespace collide

namespace collide::kernels {

void conjugate_1q(const CMatrix& u, CMatrix& rho, int q, int nq) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index bit = Eigen::Index{1} << (nq - 1 - q);
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  // left: rows
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const Complex a = rho(i, j), b = rho(i | bit, j);
      rho(i, j) = u00 * a + u01 * b;
      rho(i | bit, j) = u10 * a + u11 * b;
    }
  }
  // right: columns, multiply by u^dagger
  const Complex c00 = std::conj(u00), c01 = std::conj(u01), c10 = std::conj(u10), c11 = std::conj(u11);
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (j & bit) continue;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Complex a = rho(i, j), b = rho(i, j | bit);
      rho(i, j) = a * c00 + b * c01;
      rho(i, j | bit) = a * c10 + b * c11;
    }
  }
}

void conjugate_2q(const CMatrix& u, CMatrix& rho, int q0, int q1, int nq) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index b0 = Eigen::Index{1} << (nq - 1 - q0);
  const Eigen::Index b1 = Eigen::Index{1} << (nq - 1 - q1);
  const Eigen::Index offs[4] = {0, b1, b0, b0 | b1};
  Complex uu[4][4], cu[4][4];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      uu[r][c] = u(r, c);
      cu[r][c] = std::conj(u(r, c));
    }
  }
  Complex v[4];
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i & (b0 | b1)) continue;
      for (int k = 0; k < 4; ++k) v[k] = rho(i | offs[k], j);
      for (int r = 0; r < 4; ++r) {
        rho(i | offs[r], j) = uu[r][0] * v[0] + uu[r][1] * v[1] + uu[r][2] * v[2] + uu[r][3] * v[3];
      }
    }
  }
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (j & (b0 | b1)) continue;
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (int k = 0; k < 4; ++k) v[k] = rho(i, j | offs[k]);
      for (int r = 0; r < 4; ++r) {
        rho(i, j | offs[r]) = v[0] * cu[r][0] + v[1] * cu[r][1] + v[2] * cu[r][2] + v[3] * cu[r][3];
      }
    }
  }
}

CMatrix trace_out_first(const CMatrix& rho) {
  const Eigen::Index half = rho.rows() / 2;
  return rho.topLeftCorner(half, half) + rho.bottomRightCorner(half, half);
}

}  // namespace collide::kernels
