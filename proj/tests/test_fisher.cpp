#include <doctest.h>

#include <numbers>

#include "collide/collision.hpp"
#include "collide/fisher.hpp"
#include "collide/optimize.hpp"
#include "test_util.hpp"

using namespace collide;
using std::numbers::pi;
using testutil::rel_diff;

namespace {

ModelParams model(Interaction kind, double nbar, double gt, double g = pi / 2) {
  ModelParams p;
  p.interaction = kind;
  p.nbar = nbar;
  p.gamma_tau_se = gt;
  p.g_tau_sa = g;
  return p;
}

DensityMatrix gibbs(double nbar) {
  const double pops[] = {(nbar + 1.0) / (2.0 * nbar + 1.0), nbar / (2.0 * nbar + 1.0)};
  return DensityMatrix::diagonal(pops);
}

AncillaBlock ket(double theta, double phi = 0.0) { return AncillaBlock(bloch_state({theta, phi})); }

CMatrix y_basis() {
  CMatrix b(2, 2);
  b << 1.0, 1.0, Complex(0.0, 1.0), Complex(0.0, -1.0);
  return b / std::sqrt(2.0);
}

}  // namespace

TEST_CASE("thermal Fisher information") {
  CHECK(thermal_fi_nbar(1.0) == doctest::Approx(1.0 / 18.0).epsilon(1e-14));
  CHECK(thermal_fi_nbar(10.0) == doctest::Approx(1.0 / 48510.0).epsilon(1e-14));
  CHECK_THROWS_AS(thermal_fi_nbar(0.0), std::invalid_argument);
  CHECK_THROWS_AS(thermal_fi_nbar(-1.0), std::invalid_argument);

  for (double nbar : {0.05, 0.5, 1.0, 4.0, 10.0}) {
    const double h = default_fd_step(nbar);
    const double f = qfi(gibbs(nbar), state_derivative(gibbs, nbar, h));
    CHECK(f == doctest::Approx(thermal_fi_nbar(nbar)).epsilon(1e-8));
  }
}

TEST_CASE("dnbar_dT") {
  CHECK(dnbar_dT(1.0, 1.0) == doctest::Approx(std::exp(1.0) / std::pow(std::exp(1.0) - 1.0, 2)).epsilon(1e-14));
  CHECK(dnbar_dT(1.0, 1.0) == doctest::Approx(0.92067).epsilon(1e-5));
  CHECK(dnbar_dT(1e4, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(dnbar_dT(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(dnbar_dT(1.0, -1.0), std::invalid_argument);

  // temperature-unit thermal FI, nbar = 1/(e^{1/T} - 1)
  const double t = 0.7;
  const double nbar = 1.0 / std::expm1(1.0 / t);
  const double fi_t = std::pow(dnbar_dT(t, 1.0), 2) * thermal_fi_nbar(nbar);
  const double x = 1.0 / t;
  const double direct = x * x / (t * t) / std::pow(std::cosh(x / 2.0), 2) / 4.0;
  CHECK(fi_t == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("state derivative") {
  const DensityMatrix fixed(testutil::random_density(4));
  const StateBuilder constant = [&](double) { return fixed; };
  CHECK(state_derivative(constant, 1.0, 1e-6).cwiseAbs().maxCoeff() == 0.0);

  const CMatrix d = state_derivative(gibbs, 1.0, default_fd_step(1.0));
  CHECK(d(1, 1).real() == doctest::Approx(1.0 / 9.0).epsilon(1e-6));
  CHECK(std::abs(d.trace()) < 1e-10);
  CHECK(hermiticity_error(d) < 1e-10);

  CHECK_THROWS_AS(state_derivative(gibbs, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("qfi examples") {
  // binary classical family
  for (double q : {0.1, 0.5, 0.83}) {
    const double dq = 0.37;
    const double pops[] = {q, 1.0 - q};
    CMatrix drho = CMatrix::Zero(2, 2);
    drho(0, 0) = dq;
    drho(1, 1) = -dq;
    CHECK(qfi(DensityMatrix::diagonal(pops), drho) == doctest::Approx(dq * dq / (q * (1.0 - q))).epsilon(1e-8));
  }

  // pure-state family: QFI = 4 (<d|d> - |<psi|d>|^2)
  const CVector psi = testutil::random_pure(4);
  const CMatrix h = testutil::random_hermitian(4);
  const CVector dpsi = Complex(0.0, -1.0) * h * psi;
  const CMatrix drho = dpsi * psi.adjoint() + psi * dpsi.adjoint();
  const double expected = 4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
  CHECK(qfi(DensityMatrix::from_pure(psi), drho) == doctest::Approx(expected).epsilon(1e-9));

  // ZZ, single |+x> ancilla: exactly the thermal FI
  const FisherResult r = fisher_for(model(Interaction::ZZ, 1.0, 0.5), ket(pi / 2), 1);
  CHECK(r.ratio_thermal == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("qfi errors") {
  const double pops[] = {1.0, 0.0};
  const DensityMatrix pure_g = DensityMatrix::diagonal(pops);
  CMatrix leak = CMatrix::Zero(2, 2);
  leak(0, 0) = -1e-3;
  leak(1, 1) = 1e-3;
  CHECK_THROWS_AS(qfi(pure_g, leak), RankChangeError);

  CMatrix not_traceless = CMatrix::Zero(2, 2);
  not_traceless(0, 0) = 1.0;
  CHECK_THROWS_AS(qfi(gibbs(1.0), not_traceless), std::invalid_argument);
  CHECK_THROWS_AS(qfi(gibbs(1.0), CMatrix::Zero(4, 4)), std::invalid_argument);
}

TEST_CASE("qfi is invariant under a fixed unitary") {
  for (int t = 0; t < 10; ++t) {
    const ModelParams p = model(Interaction::Exchange, testutil::uniform(0.2, 10.0), testutil::uniform(0.05, 2.0));
    const AncillaBlock blk = ket(testutil::uniform(0.0, pi));
    const int n = 1 + t % 3;
    const StateBuilder base = outgoing_state_builder(p, blk, n);
    CMatrix u = CMatrix::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
      const double a = testutil::uniform(0.0, 2.0 * pi);
      CMatrix rz = CMatrix::Zero(2, 2);
      rz(0, 0) = std::exp(Complex(0.0, -a / 2));
      rz(1, 1) = std::exp(Complex(0.0, a / 2));
      u = kron(u, rz);
    }
    const double h = default_fd_step(p.nbar);
    const DensityMatrix rho = base(p.nbar);
    const CMatrix drho = state_derivative(base, p.nbar, h);
    CMatrix r = u * rho.matrix() * u.adjoint();
    r = 0.5 * (r + r.adjoint()).eval();
    CMatrix dr = u * drho * u.adjoint();
    dr = 0.5 * (dr + dr.adjoint()).eval();
    const double f0 = qfi(rho, drho);
    const double f1 = qfi(DensityMatrix(r), dr);
    CHECK(f0 >= 0.0);
    CHECK(rel_diff(f1, f0) < 1e-9);
  }
}

TEST_CASE("povm validation") {
  CHECK_NOTHROW(Povm::projective(ops::identity(4)).validate());
  Povm half{{0.5 * ops::identity(2)}};
  CHECK_THROWS_AS(half.validate(), std::invalid_argument);
  Povm neg{{2.0 * ops::identity(2), -1.0 * ops::identity(2)}};
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}

TEST_CASE("cfi examples") {
  SUBCASE("Z basis on diagonal exchange states saturates the QFI") {
    for (int n = 1; n <= 4; ++n) {
      const ModelParams p = model(Interaction::Exchange, 2.0, 0.3);
      const StateBuilder b = outgoing_state_builder(p, ket(0.0), n);
      const double h = default_fd_step(p.nbar);
      const double c = cfi(b, Povm::projective(ops::identity(1 << n)), p.nbar, h);
      CHECK(rel_diff(c, fisher_for(p, ket(0.0), n).value_nbar) < 1e-6);
    }
  }
  SUBCASE("Y basis on the ZZ single-ancilla state gives the thermal FI") {
    const ModelParams p = model(Interaction::ZZ, 1.0, 0.5);
    const StateBuilder b = outgoing_state_builder(p, ket(pi / 2), 1);
    const double c = cfi(b, Povm::projective(y_basis()), 1.0, default_fd_step(1.0));
    CHECK(rel_diff(c, thermal_fi_nbar(1.0)) < 1e-6);
  }
  SUBCASE("dimension mismatch") {
    const StateBuilder b = outgoing_state_builder(model(Interaction::ZZ, 1.0, 0.5), ket(pi / 2), 1);
    CHECK_THROWS_AS(cfi(b, Povm::projective(ops::identity(4)), 1.0, 1e-6), std::invalid_argument);
  }
}

TEST_CASE("fisher_for examples") {
  SUBCASE("ground-state additivity") {
    const ModelParams p = model(Interaction::Exchange, 1.0, 0.5);
    const double f1 = fisher_for(p, ket(0.0), 1).value_nbar;
    CHECK(rel_diff(fisher_for(p, ket(0.0), 2).value_nbar, 2.0 * f1) < 1e-6);
  }
  SUBCASE("ZZ, fast thermalization") {
    const FisherResult r = fisher_for(model(Interaction::ZZ, 1.0, 1e6), ket(pi / 2), 2);
    CHECK(r.ratio_thermal == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.n_measured == 2);
    CHECK(r.block_b == 1);
  }
  SUBCASE("ZZ, nearly frozen bath") {
    const FisherResult r = fisher_for(model(Interaction::ZZ, 1.0, 1e-6), ket(pi / 2), 2);
    CHECK(r.ratio_thermal == doctest::Approx(0.5).epsilon(1e-4));
  }
  SUBCASE("degenerate fixed point") {
    CHECK_THROWS_AS(fisher_for(model(Interaction::ZZ, 1.0, 0.0), ket(pi / 2), 1), DegenerateFixedPointError);
  }
  SUBCASE("nbar must be positive") {
    CHECK_THROWS_AS(fisher_for(model(Interaction::Exchange, 0.0, 0.5), ket(0.0), 1), std::invalid_argument);
  }
}

TEST_CASE("QFI does not decrease with more ancillas") {
  for (Interaction kind : {Interaction::ZZ, Interaction::Exchange}) {
    for (int t = 0; t < 6; ++t) {
      const ModelParams p = model(kind, testutil::uniform(0.1, 10.0), testutil::uniform(0.02, 2.0),
                                  testutil::uniform(0.3, pi / 2));
      const bool pair = t % 3 == 2;
      const AncillaBlock blk(PureState(testutil::random_pure(pair ? 4 : 2)));
      const int b = blk.b();
      double prev = 0.0;
      for (int n = b; n <= kMaxMeasured; n += b) {
        const double f = fisher_for(p, blk, n).value_nbar;
        CHECK(f >= 0.0);
        CHECK(prev <= f * (1.0 + 1e-9) + 1e-12);
        prev = f;
      }
    }
  }
}

TEST_CASE("exchange QFI does not depend on the ancilla azimuth") {
  for (int n = 1; n <= 3; ++n) {
    const ModelParams p = model(Interaction::Exchange, 3.0, 0.2);
    const double theta = 1.1;
    const double f0 = fisher_for(p, ket(theta, 0.0), n).value_nbar;
    for (double phi : {pi / 3, pi / 2, pi}) {
      CHECK(rel_diff(fisher_for(p, ket(theta, phi), n).value_nbar, f0) < 1e-8);
    }
  }
}

TEST_CASE("finite-difference step convergence") {
  CHECK(fd_halving_change(model(Interaction::Exchange, 1.0, 0.5), ket(0.0), 1) < 1e-6);
  CHECK(fd_halving_change(model(Interaction::ZZ, 5.0, 0.1), ket(pi / 2), 3) < 1e-6);
  CHECK(fd_halving_change(model(Interaction::Exchange, 10.0, 0.26), ket(0.7), 2) < 1e-6);
  CHECK(default_fd_step(1.0) == 1e-6);
  CHECK(default_fd_step(100.0) == doctest::Approx(1e-4));
  CHECK(default_fd_step(1e-7) == doctest::Approx(5e-8));
}
