#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ctrlfree/construction.hpp"
#include "ctrlfree/simulator.hpp"
#include "oracles.hpp"

using namespace ctrlfree;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Eigenpair pair_of(Complex lambda, ComplexVector v) {
  return make_eigenpair(lambda, StateVector(std::move(v)));
}

double stddev(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return std::sqrt(var / static_cast<double>(xs.size()));
}
}  // namespace

TEST_CASE("build_gadget: n = 1 decomposed sequence") {
  GadgetSpec spec = make_gadget_spec(gates::pauli_x(), 0, false, true);
  const Circuit c = build_gadget(spec);
  const std::vector<GateKind> expected{GateKind::CNOT, GateKind::TOFFOLI, GateKind::CNOT,
                                       GateKind::UBLOCK, GateKind::CNOT, GateKind::TOFFOLI,
                                       GateKind::CNOT};
  REQUIRE(c.gates().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(c.gates()[i].kind() == expected[i]);
  CHECK(c.wires() == WireList{"a", "s1", "e1"});
  CHECK(c.gates()[3].wires() == WireList{"e1"});
}

TEST_CASE("build_gadget: per-qubit CSWAPs, correction and wire budget") {
  const ComplexMatrix u = haar_random_unitary(2, 4);
  GadgetSpec spec = make_gadget_spec(u, 1, false, false);
  const GateCounts counts = gate_counts(build_gadget(spec));
  CHECK(counts.count(GateKind::CSWAP) == 4);
  CHECK(counts.count(GateKind::UBLOCK) == 1);
  CHECK(counts.count(GateKind::PhaseDiag) == 0);

  spec.apply_phase_correction = true;
  const Circuit corrected = build_gadget(spec);
  CHECK(corrected.gates().back().kind() == GateKind::PhaseDiag);
  CHECK(corrected.gates().back().wires() == WireList{"a"});
  CHECK(corrected.gates().back().lambda() == spec.eigenpair.eigenvalue);

  for (int n = 1; n <= caps::kMaxSystemQubits; ++n) {
    CHECK(gadget_wires(n).all().size() == static_cast<std::size_t>(2 * n + 1));
  }
}

TEST_CASE("build_gadget: invalid specs are rejected") {
  GadgetSpec spec = make_gadget_spec(gates::pauli_x(), 0);
  spec.eigenpair = pair_of(1.0, oracle::vec({1, 0}));  // |0> is not an X eigenvector
  CHECK_THROWS_AS(build_gadget(spec), ValidationError);

  spec = make_gadget_spec(gates::pauli_x(), 0);
  spec.n = 2;
  CHECK_THROWS_AS(build_gadget(spec), ArgumentError);
  CHECK_THROWS_AS(make_gadget_spec(gates::pauli_x(), 2), ArgumentError);
}

TEST_CASE("closed_form_W: identity and X") {
  CHECK(max_abs(closed_form_W(identity(2)) - identity(8)) == 0.0);
  CHECK(max_abs(closed_form_W(identity(4)) - identity(32)) == 0.0);
  CHECK(max_abs(closed_form_W(gates::pauli_x()) - oracle::gadget_block_form(gates::pauli_x())) ==
        0.0);
}

TEST_CASE("closed_form_W vs swap network vs circuit (property)") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < (n == 3 ? 3u : 6u); ++seed) {
      const ComplexMatrix u = haar_random_unitary(n, seed);
      const ComplexMatrix w = closed_form_W(u);
      CHECK(max_abs(w - oracle::gadget_block_form(u)) <= 1e-15);
      CHECK(max_abs(w - swap_network_W(u)) <= 1e-10);
      CHECK(max_abs(w - circuit_unitary(gadget_circuit(u, std::nullopt, false))) <= 1e-10);
      CHECK(max_abs(w - circuit_unitary(gadget_circuit(u, std::nullopt, true))) <= 1e-10);
    }
  }
}

TEST_CASE("phase_correction") {
  CHECK(max_abs(phase_correction(1.0) - identity(2)) == 0.0);
  CHECK(max_abs(phase_correction(Complex(0, 1)) - oracle::mat2(Complex(0, -1), 0, 0, 1)) == 0.0);
  CHECK_THROWS_AS(phase_correction(Complex(0.5, 0)), ValidationError);
  // diag(conj(lambda), 1) = e^{-i phi/2} RZ(phi)
  for (double phi : {-2.0, -0.3, 0.0, 1.0, std::numbers::pi}) {
    const ComplexMatrix expected = std::polar(1.0, -phi / 2) * gates::rz(phi);
    CHECK(max_abs(phase_correction(std::polar(1.0, phi)) - expected) <= 1e-15);
  }
}

TEST_CASE("controlled_u") {
  CHECK(max_abs(controlled_u(gates::pauli_x()) - oracle::controlled(gates::pauli_x())) == 0.0);
  CHECK(max_abs(controlled_u(identity(4)) - identity(8)) == 0.0);
  const ComplexMatrix cu = controlled_u(haar_random_unitary(2, 8));
  CHECK(max_abs(cu.adjoint() * cu - identity(8)) <= 1e-12);
}

TEST_CASE("eigen sector of W equals diag(lambda,1) C(U) (property)") {
  for (int n = 1; n <= 3; ++n) {
    const ComplexMatrix u = haar_random_unitary(n, 40 + n);
    for (const auto& pair : eig_unitary(u)) {
      CHECK(eigen_sector_deviation(u, pair) <= 1e-10);
      // Same identity through the test oracles: corrected sector == C(U) (x) e.
      const ComplexMatrix e = pair.vector.amplitudes();
      const ComplexMatrix lhs =
          oracle::gadget_block_form(u) * oracle::kron(identity(2 * u.rows()), e);
      const ComplexMatrix corrected =
          oracle::kron(oracle::kron(phase_correction(pair.eigenvalue), identity(u.rows())),
                       identity(u.rows())) *
          lhs;
      CHECK(oracle::max_abs(corrected - oracle::kron(oracle::controlled(u), e)) <= 1e-10);
    }
  }
}

TEST_CASE("check_equivalence: X with |+> (lambda = 1)") {
  const GadgetSpec spec = make_gadget_spec(gates::pauli_x(), 0);
  REQUIRE(std::abs(spec.eigenpair.eigenvalue - 1.0) < 1e-12);
  const auto report = check_equivalence(spec, 20, 1);
  CHECK(report.pass);
  CHECK(report.max_deviation <= 1e-12);
  CHECK(report.trials == 20);
}

TEST_CASE("check_equivalence: X with |-> needs the correction") {
  GadgetSpec spec{1, gates::pauli_x(), pair_of(-1.0, oracle::vec({kInvSqrt2, -kInvSqrt2})),
                  true, false};
  CHECK(check_equivalence(spec, 20, 2).pass);

  spec.apply_phase_correction = false;
  CHECK_FALSE(check_equivalence(spec, 20, 2).pass);

  // Analytic overlap oracle: without correction F = ||alpha|^2 lambda + |beta|^2|^2.
  const GadgetWires w = gadget_wires(1);
  const Circuit raw = build_gadget(spec);
  Rng rng = make_rng(5);
  for (int t = 0; t < 10; ++t) {
    const ControlState c = random_control(rng);
    const StateVector psi = haar_random_state(1, rng);
    const ComplexVector e = spec.eigenpair.vector.amplitudes();
    const ComplexVector in =
        oracle::kron(oracle::kron(oracle::vec({c.alpha, c.beta}), psi.amplitudes()), e);
    const StateVector out = run(raw, StateVector(w.all(), in));
    ComplexVector ideal_as(4);
    ideal_as << c.alpha * psi.amplitudes(), c.beta * (gates::pauli_x() * psi.amplitudes());
    const StateVector ideal(w.all(), oracle::kron(ideal_as, e));
    const double analytic = std::norm(std::norm(c.alpha) * -1.0 + std::norm(c.beta));
    CHECK(std::abs(state_fidelity(out, ideal) - analytic) <= 1e-12);
  }
}

TEST_CASE("check_equivalence: diagonal U with |1>") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int k = 0; k < 10; ++k) {
    const double theta = angle(rng);
    const ComplexMatrix u = oracle::mat2(1, 0, 0, std::polar(1.0, theta));
    const GadgetSpec spec{1, u, pair_of(std::polar(1.0, theta), oracle::vec({0, 1})), true,
                          false};
    CHECK(check_equivalence(spec, 10, k).pass);
  }
}

TEST_CASE("check_equivalence: decomposed and plain gadgets agree (property)") {
  for (int n = 1; n <= 3; ++n) {
    const ComplexMatrix u = haar_random_unitary(n, 60 + n);
    for (std::size_t idx = 0; idx < 2; ++idx) {
      GadgetSpec spec = make_gadget_spec(u, idx, true, false);
      const auto plain = check_equivalence(spec, 10, 7);
      spec.decomposed = true;
      const auto decomposed = check_equivalence(spec, 10, 7);
      CHECK(plain.pass);
      CHECK(decomposed.pass);
      CHECK(std::abs(plain.max_deviation - decomposed.max_deviation) <= 1e-12);
    }
  }
}

TEST_CASE("perturb_eigenstate") {
  const StateVector e = eig_unitary(haar_random_unitary(2, 3))[0].vector;
  const auto p0 = perturb_eigenstate(e, 0.0, 0.4, 1);
  CHECK(p0.state.amplitudes() == e.amplitudes());

  const auto p1 = perturb_eigenstate(e, 1.0, 0.4, 1);
  CHECK(std::abs(e.amplitudes().dot(p1.state.amplitudes())) <= 1e-12);
  CHECK((p1.state.amplitudes() - std::polar(1.0, 0.4) * p1.perp.amplitudes()).norm() <= 1e-15);

  const auto p = perturb_eigenstate(e, 0.1, -1.3, 2);
  CHECK(std::abs(std::norm(e.amplitudes().dot(p.state.amplitudes())) - 0.9) <= 1e-12);
  CHECK(std::abs(p.state.amplitudes().norm() - 1.0) <= 1e-10);
  CHECK(std::abs(e.amplitudes().dot(p.perp.amplitudes())) <= 1e-12);

  CHECK_THROWS_AS(perturb_eigenstate(e, -0.1, 0.0, 1), ArgumentError);
  CHECK_THROWS_AS(perturb_eigenstate(e, 1.5, 0.0, 1), ArgumentError);
  CHECK_THROWS_AS(perturb_eigenstate(StateVector(oracle::vec({1})), 0.5, 0.0, 1), ArgumentError);
  CHECK_THROWS_AS(perturb_eigenstate(e, 0.5, 0.0, e), ValidationError);
}

TEST_CASE("robustness_fidelity: closed-form values") {
  const ComplexMatrix u = haar_random_unitary(1, 17);
  const GadgetSpec spec = make_gadget_spec(u, 0);
  const StateVector psi = haar_random_state(1, 18);
  const Complex alpha(0.6, 0.0), beta(0.0, 0.8);
  const auto exact = perturb_eigenstate(spec.eigenpair.vector, 0.0, 0.0, 1);
  CHECK(std::abs(robustness_fidelity(spec, exact, psi, alpha, beta) - 1.0) <= 1e-12);
  const auto p = perturb_eigenstate(spec.eigenpair.vector, 0.1, 0.7, 1);
  CHECK(std::abs(robustness_fidelity(spec, p, psi, alpha, beta) - 0.9) <= 1e-9);

  CHECK_THROWS_AS(robustness_fidelity(spec, p, psi, 1.0, 1.0), ArgumentError);
}

TEST_CASE("robustness_fidelity: 1 - eps for random instances at n = 2 (property)") {
  for (double eps : {0.01, 0.25, 0.5, 0.9}) {
    std::vector<double> fids;
    for (std::uint64_t t = 0; t < 50; ++t) {
      Rng rng = make_rng(t, 9);
      const ComplexMatrix u = haar_random_unitary(2, rng());
      const GadgetSpec spec = make_gadget_spec(u, t % 4, true, t % 2 == 1);
      const ControlState c = random_control(rng);
      const StateVector psi = haar_random_state(2, rng);
      const auto p = perturb_eigenstate(spec.eigenpair.vector, eps, 0.1 * t, rng());
      const double f = robustness_fidelity(spec, p, psi, c.alpha, c.beta);
      CHECK(std::abs(f - (1.0 - eps)) <= 1e-9);
      fids.push_back(f);
    }
    CHECK(stddev(fids) <= 1e-10);
  }
}

TEST_CASE("robustness_fidelity: perp along another eigenvector") {
  const ComplexMatrix u = haar_random_unitary(2, 23);
  const auto pairs = eig_unitary(u);
  const GadgetSpec spec{2, u, pairs[0], true, false};
  Rng rng = make_rng(4);
  for (std::size_t other = 1; other < pairs.size(); ++other) {
    const auto p = perturb_eigenstate(pairs[0].vector, 0.3, 0.5, pairs[other].vector);
    const ControlState c = random_control(rng);
    const StateVector psi = haar_random_state(2, rng);
    CHECK(std::abs(robustness_fidelity(spec, p, psi, c.alpha, c.beta) - 0.7) <= 1e-9);
  }
}

TEST_CASE("robustness_fidelity: rejects a perturbation of a different eigenvector") {
  const ComplexMatrix u = haar_random_unitary(1, 29);
  const auto pairs = eig_unitary(u);
  const GadgetSpec spec{1, u, pairs[0], true, false};
  const auto wrong = perturb_eigenstate(pairs[1].vector, 0.2, 0.0, 3);
  CHECK_THROWS_AS(
      robustness_fidelity(spec, wrong, StateVector::basis(1, 0), 1.0, 0.0), ValidationError);
}
