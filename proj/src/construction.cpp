#include "ctrlfree/construction.hpp"

#include <cmath>
#include <numbers>

#include "ctrlfree/simulator.hpp"

namespace ctrlfree {

namespace {

// Keeps per-trial draws apart from haar_random_unitary(seed) on the same seed.
constexpr std::uint64_t kTrialStream = 1;

int system_qubits(const ComplexMatrix& u) {
  const int n = qubits_for_dim(u.rows());
  if (n < 1 || n > caps::kMaxSystemQubits) {
    throw ArgumentError("system register must have 1.." +
                        std::to_string(caps::kMaxSystemQubits) + " qubits");
  }
  return n;
}

StateVector control_state(const ControlState& c) {
  ComplexVector v(2);
  v << c.alpha, c.beta;
  return StateVector({"a"}, std::move(v));
}

// |c>|psi>|e> laid out on the gadget wires.
StateVector gadget_input(const GadgetWires& wires, const ControlState& c,
                         const StateVector& psi, const StateVector& e) {
  ComplexVector v = tensor(tensor(control_state(c).amplitudes(),
                                  psi.amplitudes()),
                           e.amplitudes());
  return StateVector(wires.all(), std::move(v));
}

// alpha|0>|psi> + beta|1>U|psi>
ComplexVector controlled_action(const ComplexMatrix& u, const ControlState& c,
                                const StateVector& psi) {
  const Eigen::Index d = psi.dim();
  ComplexVector out(2 * d);
  out.head(d) = c.alpha * psi.amplitudes();
  out.tail(d) = c.beta * (u * psi.amplitudes());
  return out;
}

}  // namespace

WireList GadgetWires::all() const {
  WireList out{ancilla};
  out.insert(out.end(), system.begin(), system.end());
  out.insert(out.end(), eigen.begin(), eigen.end());
  return out;
}

WireList GadgetWires::ancilla_system() const {
  WireList out{ancilla};
  out.insert(out.end(), system.begin(), system.end());
  return out;
}

GadgetWires gadget_wires(int n) {
  GadgetWires w;
  w.ancilla = "a";
  for (int k = 1; k <= n; ++k) {
    w.system.push_back("s" + std::to_string(k));
    w.eigen.push_back("e" + std::to_string(k));
  }
  return w;
}

void GadgetSpec::validate() const {
  require_unitary(u, "gadget unitary");
  if (system_qubits(u) != n) {
    throw ArgumentError("gadget n = " + std::to_string(n) +
                        " does not match unitary dimension " +
                        std::to_string(u.rows()));
  }
  require_eigenpair(u, eigenpair);
}

GadgetSpec make_gadget_spec(const ComplexMatrix& u, std::size_t eig_index,
                            bool apply_phase_correction, bool decomposed) {
  auto pairs = eig_unitary(u);
  if (eig_index >= pairs.size()) {
    throw ArgumentError("eigenpair index " + std::to_string(eig_index) +
                        " out of range (" + std::to_string(pairs.size()) +
                        " eigenpairs)");
  }
  return GadgetSpec{system_qubits(u), u, pairs[eig_index],
                    apply_phase_correction, decomposed};
}

Circuit gadget_circuit(const ComplexMatrix& u, std::optional<Complex> correction,
                       bool decomposed) {
  const int n = system_qubits(u);
  const GadgetWires w = gadget_wires(n);
  Circuit c(w.all());
  for (int k = 0; k < n; ++k) c.append(Gate::cswap(w.ancilla, w.system[k], w.eigen[k]));
  c.append(Gate::ublock(u, "U", w.eigen));
  for (int k = 0; k < n; ++k) c.append(Gate::cswap(w.ancilla, w.system[k], w.eigen[k]));
  if (correction) c.append(Gate::phase_diag(*correction, w.ancilla));
  return decomposed ? decompose_cswap(c) : c;
}

Circuit build_gadget(const GadgetSpec& spec) {
  spec.validate();
  std::optional<Complex> correction;
  if (spec.apply_phase_correction) correction = spec.eigenpair.eigenvalue;
  return gadget_circuit(spec.u, correction, spec.decomposed);
}

ComplexMatrix closed_form_W(const ComplexMatrix& u) {
  require_unitary(u, "closed_form_W input");
  const ComplexMatrix id = identity(u.rows());
  return tensor(gates::projector(0), tensor(id, u)) +
         tensor(gates::projector(1), tensor(u, id));
}

ComplexMatrix swap_network_W(const ComplexMatrix& u) {
  require_unitary(u, "swap_network_W input");
  const int n = qubits_for_dim(u.rows());
  const Eigen::Index d = u.rows();
  const ComplexMatrix cswap = tensor(gates::projector(0), identity(d * d)) +
                              tensor(gates::projector(1), gates::register_swap(n));
  const ComplexMatrix bare_u = tensor(identity(2), tensor(identity(d), u));
  return cswap * bare_u * cswap;
}

ComplexMatrix phase_correction(Complex lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > tol::kUnitaryInput) {
    throw ValidationError("phase_correction requires |lambda| = 1");
  }
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = std::conj(lambda);
  m(1, 1) = 1.0;
  return m;
}

ComplexMatrix controlled_u(const ComplexMatrix& u) {
  require_unitary(u, "controlled_u input");
  return tensor(gates::projector(0), identity(u.rows())) +
         tensor(gates::projector(1), u);
}

double eigen_sector_deviation(const ComplexMatrix& u, const Eigenpair& pair) {
  require_eigenpair(u, pair);
  const Eigen::Index d = u.rows();
  const ComplexMatrix e = pair.vector.amplitudes();  // d x 1
  const ComplexMatrix embed = tensor(identity(2 * d), e);
  ComplexMatrix lambda_diag = ComplexMatrix::Zero(2, 2);
  lambda_diag(0, 0) = pair.eigenvalue;
  lambda_diag(1, 1) = 1.0;
  const ComplexMatrix lhs = closed_form_W(u) * embed;
  const ComplexMatrix rhs =
      tensor(tensor(lambda_diag, identity(d)) * controlled_u(u), e);
  return max_abs(lhs - rhs);
}

ControlState random_control(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double theta = std::acos(1.0 - 2.0 * unit(rng));
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  return ControlState{Complex(std::cos(theta / 2), 0.0),
                      std::polar(std::sin(theta / 2), phi)};
}

EquivalenceReport check_equivalence(const GadgetSpec& spec, int trials,
                                    std::uint64_t seed) {
  if (trials < 0) throw ArgumentError("trials must be non-negative");
  const Circuit gadget = build_gadget(spec);
  const GadgetWires wires = gadget_wires(spec.n);
  const StateVector& e = spec.eigenpair.vector;

  EquivalenceReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed + static_cast<std::uint64_t>(t), kTrialStream);
    const ControlState c = random_control(rng);
    const StateVector psi = haar_random_state(spec.n, rng);

    const StateVector out = run(gadget, gadget_input(wires, c, psi, e));
    const StateVector expected(
        wires.all(), tensor(controlled_action(spec.u, c, psi), e.amplitudes()));
    const double deviation = 1.0 - state_fidelity(out, expected);
    report.max_deviation = std::max(report.max_deviation, deviation);
  }
  report.pass = report.max_deviation <= kEquivalenceTolerance;
  return report;
}

PerturbedEigenstate perturb_eigenstate(const StateVector& e, double epsilon,
                                       double phase, const StateVector& perp) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ArgumentError("epsilon must lie in [0, 1]");
  }
  if (perp.dim() != e.dim()) {
    throw ArgumentError("perp dimension does not match the eigenstate");
  }
  if (std::abs(e.amplitudes().dot(perp.amplitudes())) > 1e-9) {
    throw ValidationError("perp is not orthogonal to the eigenstate");
  }
  ComplexVector v = std::sqrt(1.0 - epsilon) * e.amplitudes() +
                    std::polar(std::sqrt(epsilon), phase) * perp.amplitudes();
  StateVector perp_labeled = perp.relabeled(e.layout());
  return PerturbedEigenstate{epsilon, phase, std::move(perp_labeled),
                             StateVector(e.layout(), std::move(v))};
}

PerturbedEigenstate perturb_eigenstate(const StateVector& e, double epsilon,
                                       double phase, std::uint64_t seed) {
  if (e.dim() < 2) {
    throw ArgumentError("a one-dimensional state has no orthogonal complement");
  }
  Rng rng = make_rng(seed);
  ComplexVector v = complex_gaussian(rng, e.dim());
  const ComplexVector& ev = e.amplitudes();
  // Two projection passes keep <e|perp> at rounding level.
  for (int pass = 0; pass < 2; ++pass) v -= ev.dot(v) * ev;
  v.normalize();
  return perturb_eigenstate(e, epsilon, phase, StateVector(e.layout(), v));
}

double robustness_fidelity(const GadgetSpec& spec,
                           const PerturbedEigenstate& perturbed,
                           const StateVector& psi, Complex alpha, Complex beta) {
  spec.validate();
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > tol::kNorm) {
    throw ArgumentError("control amplitudes must satisfy |alpha|^2+|beta|^2=1");
  }
  if (psi.dim() != spec.u.rows() || perturbed.state.dim() != spec.u.rows()) {
    throw ArgumentError("robustness_fidelity: dimension mismatch");
  }
  const ComplexVector& e = spec.eigenpair.vector.amplitudes();
  if (std::abs(e.dot(spec.u * perturbed.perp.amplitudes())) > 1e-9) {
    throw ValidationError("<e|U|perp> is not zero");
  }
  const double overlap = std::norm(e.dot(perturbed.state.amplitudes()));
  if (std::abs(overlap - (1.0 - perturbed.epsilon)) > 1e-9) {
    throw ValidationError("perturbed state was not built from the gadget eigenvector");
  }

  const GadgetWires wires = gadget_wires(spec.n);
  const ControlState c{alpha, beta};
  const Circuit gadget =
      gadget_circuit(spec.u, spec.eigenpair.eigenvalue, spec.decomposed);
  const StateVector out =
      run(gadget, gadget_input(wires, c, psi, perturbed.state));
  const StateVector ideal(wires.all(),
                          tensor(controlled_action(spec.u, c, psi), e));
  return state_fidelity(ideal, out);
}

}  // namespace ctrlfree
