#include <doctest.h>

#include <numbers>

#include "collide/channels.hpp"
#include "test_util.hpp"

using namespace collide;
using std::numbers::pi;
using testutil::random_density;

namespace {

CMatrix gibbs(double nbar) {
  CMatrix g = CMatrix::Zero(2, 2);
  g(0, 0) = (nbar + 1.0) / (2.0 * nbar + 1.0);
  g(1, 1) = nbar / (2.0 * nbar + 1.0);
  return g;
}

CMatrix ket_proj(const CVector& v) { return v * v.adjoint(); }

CMatrix plus_x() {
  CVector v(2);
  v << 1.0, 1.0;
  return ket_proj(v / std::sqrt(2.0));
}

}  // namespace

TEST_CASE("thermal_kraus examples") {
  const KrausChannel id = thermal_kraus(1.3, 0.0);
  REQUIRE(id.operators.size() == 1);
  CHECK(max_abs_diff(id.operators[0], ops::identity(2)) == 0.0);

  for (double nbar : {0.0, 0.2, 1.0, 7.5}) {
    const KrausChannel full = thermal_kraus(nbar, 1e6);
    for (int t = 0; t < 5; ++t) {
      CHECK(max_abs_diff(full.apply(random_density(2)), gibbs(nbar)) < 1e-10);
    }
  }

  const CMatrix out = thermal_kraus(1.0, 0.3).apply(plus_x());
  const DensityMatrix ref = lindblad_rk4(DensityMatrix(plus_x()), 1.0, 0.3, 10000);
  CHECK(max_abs_diff(out, ref.matrix()) < 1e-8);

  CHECK_THROWS_AS(thermal_kraus(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(thermal_kraus(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("thermal channel completeness, fixed point and coherence decay") {
  for (double nbar : {0.0, 0.1, 1.0, 10.0}) {
    for (double gt : {0.0, 0.01, 0.5, 3.0}) {
      const KrausChannel k = thermal_kraus(nbar, gt);
      CHECK(k.completeness_error() < 1e-12);
      CHECK(max_abs_diff(k.apply(gibbs(nbar)), gibbs(nbar)) < 1e-14);
      CMatrix coh = CMatrix::Zero(2, 2);
      coh(0, 1) = 1.0;
      const double expected = std::exp(-0.5 * gt * (2.0 * nbar + 1.0));
      CHECK(std::abs(k.apply(coh)(0, 1) - expected) < 1e-14);
    }
  }
}

TEST_CASE("thermal channel semigroup") {
  for (int t = 0; t < 20; ++t) {
    const double nbar = testutil::uniform(0.0, 5.0);
    const double t1 = testutil::uniform(0.0, 2.0), t2 = testutil::uniform(0.0, 2.0);
    const CMatrix rho = random_density(2);
    const CMatrix two_steps = thermal_kraus(nbar, t2).apply(thermal_kraus(nbar, t1).apply(rho));
    CHECK(max_abs_diff(two_steps, thermal_kraus(nbar, t1 + t2).apply(rho)) < 1e-10);
  }
}

TEST_CASE("thermal channel matches the RK4 oracle on a random grid") {
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      const double nbar = testutil::uniform(0.0, 5.0);
      const double gt = testutil::uniform(0.0, 3.0);
      const KrausChannel k = thermal_kraus(nbar, gt);
      for (int s = 0; s < 10; ++s) {
        const CMatrix rho = random_density(2);
        const DensityMatrix ref = lindblad_rk4(DensityMatrix(rho), nbar, gt, default_rk4_steps(nbar, gt));
        CHECK(max_abs_diff(k.apply(rho), ref.matrix()) < 1e-8);
      }
    }
  }
}

TEST_CASE("lindblad_rk4 examples") {
  const DensityMatrix rho(random_density(2));
  CHECK(max_abs_diff(lindblad_rk4(rho, 1.0, 0.0, 10).matrix(), rho.matrix()) < 1e-15);

  for (double gt : {0.1, 1.0, 4.0}) {
    const DensityMatrix g(gibbs(2.0));
    CHECK(max_abs_diff(lindblad_rk4(g, 2.0, gt, 500).matrix(), g.matrix()) < 1e-10);
  }

  const double nbar = 0.5, gt = 0.7;
  CMatrix excited = CMatrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  const DensityMatrix out = lindblad_rk4(DensityMatrix(excited), nbar, gt, default_rk4_steps(nbar, gt));
  const double pe_th = nbar / (2.0 * nbar + 1.0);
  const double ratio = std::abs(out(1, 1).real() - pe_th) / std::abs(1.0 - pe_th);
  CHECK(ratio == doctest::Approx(std::exp(-gt * (2.0 * nbar + 1.0))).epsilon(1e-6));

  CHECK_THROWS_AS(lindblad_rk4(rho, 1.0, 0.5, 0), std::invalid_argument);
}

TEST_CASE("ZZ unitary") {
  CHECK(max_abs_diff(zz_unitary(0.0), ops::identity(4)) == 0.0);

  const CMatrix u = zz_unitary(1.2345);
  CHECK(max_abs_diff(u * u.adjoint(), ops::identity(4)) < 1e-14);

  // |g> (x) |+x> -> |g> (x) |+y> up to a global phase
  CVector in = CVector::Zero(4);
  in(0) = in(1) = 1.0 / std::sqrt(2.0);
  const CVector out = zz_unitary(pi / 2) * in;
  CVector plus_y = CVector::Zero(4);
  plus_y(0) = 1.0 / std::sqrt(2.0);
  plus_y(1) = Complex(0.0, 1.0) / std::sqrt(2.0);
  CHECK(std::abs(plus_y.dot(out)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("exchange unitary") {
  CHECK(max_abs_diff(exchange_unitary(0.0), ops::identity(4)) == 0.0);

  const CMatrix u = exchange_unitary(pi / 2);
  CHECK(max_abs_diff(u * u.adjoint(), ops::identity(4)) < 1e-14);
  // |ge> = index 1, |eg> = index 2
  CHECK(std::abs(u(2, 1) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(u(1, 2) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(u(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(u(3, 3) - 1.0) < 1e-15);

  const CMatrix upi = exchange_unitary(pi);
  CHECK(std::abs(upi(1, 1) + 1.0) < 1e-15);
  CHECK(std::abs(upi(2, 2) + 1.0) < 1e-15);
  CHECK(max_abs_diff(u * u, upi) < 1e-14);
}

TEST_CASE("collision unitaries commute with the bare Hamiltonian") {
  const CMatrix h = kron(ops::sigma_z(), ops::identity(2)) + kron(ops::identity(2), ops::sigma_z());
  for (double g : {0.3, pi / 2, 2.1}) {
    for (const CMatrix& u : {zz_unitary(g), exchange_unitary(g)}) {
      CHECK((u * h - h * u).norm() < 1e-13);
    }
  }
}

TEST_CASE("apply_kraus_on") {
  const auto dims = qubit_dims(2);
  const KrausChannel identity{{ops::identity(2)}};
  const DensityMatrix rho(random_density(4));
  CHECK(max_abs_diff(apply_kraus_on(identity, rho, 0, dims).matrix(), rho.matrix()) < 1e-15);

  const KrausChannel bath = thermal_kraus(0.7, 0.4);
  const CMatrix rs = random_density(2), ra = random_density(2);
  const DensityMatrix product(kron(rs, ra));
  CHECK(max_abs_diff(apply_kraus_on(bath, product, 0, dims).matrix(), kron(bath.apply(rs), ra)) < 1e-12);

  // entangled input: the ancilla marginal is untouched
  const DensityMatrix ent = DensityMatrix::from_pure(testutil::random_pure(4));
  const DensityMatrix after = apply_kraus_on(bath, ent, 0, dims);
  const int keep_a[] = {1};
  CHECK(max_abs_diff(partial_trace(after, keep_a, dims).matrix(), partial_trace(ent, keep_a, dims).matrix()) <
        1e-12);
  CHECK(std::abs(after.matrix().trace() - 1.0) < 1e-12);

  const KrausChannel wide{{ops::identity(4)}};
  CHECK_THROWS_AS(apply_kraus_on(wide, rho, 0, dims), std::invalid_argument);
}

TEST_CASE("in-place thermal action equals the Kraus sum") {
  for (int nq = 1; nq <= 5; ++nq) {
    const auto dims = qubit_dims(nq);
    for (int t = 0; t < 5; ++t) {
      const double nbar = testutil::uniform(0.0, 10.0), gt = testutil::uniform(0.0, 3.0);
      const CMatrix rho = random_density(1 << nq);
      CMatrix fast = rho;
      apply_thermal_first(fast, nbar, gt);
      CHECK(max_abs_diff(fast, apply_kraus_on_raw(thermal_kraus(nbar, gt), rho, 0, dims)) < 1e-14);
    }
  }
}

TEST_CASE("model parameters") {
  ModelParams p;
  p.nbar = 2.0;
  p.gamma_tau_se = 0.5;
  CHECK(p.big_gamma() == doctest::Approx(2.5));
  CHECK_NOTHROW(p.validate());
  p.nbar = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  CHECK(parse_interaction("zz") == Interaction::ZZ);
  CHECK(parse_interaction("exchange") == Interaction::Exchange);
  CHECK_THROWS_AS(parse_interaction("xy"), std::invalid_argument);
}
