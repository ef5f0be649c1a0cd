#include "ctrlfree/hadamard.hpp"

#include <cmath>

#include "ctrlfree/construction.hpp"
#include "ctrlfree/simulator.hpp"

namespace ctrlfree {

namespace {

// Distinct generator seeds for the X and Y shot budgets.
constexpr std::uint64_t kImagStream = 0x9E3779B97F4A7C15ULL;

void check_psi(const ComplexMatrix& u, const StateVector& psi) {
  require_unitary(u, "Hadamard-test unitary");
  if (psi.dim() != u.rows()) {
    throw ArgumentError("Hadamard test: state dimension " +
                        std::to_string(psi.dim()) +
                        " does not match unitary dimension " +
                        std::to_string(u.rows()));
  }
}

HadamardTestResult measure_ancilla(const StateVector& out,
                                   const std::string& ancilla, Scheme scheme,
                                   const EstimatorConfig& cfg) {
  HadamardTestResult r;
  r.scheme = scheme;
  r.mode = cfg.mode;
  r.seed = cfg.seed;
  MeasurementRecord x, y;
  if (cfg.mode == EstimationMode::Exact) {
    x = measure_exact(out, Observable::X, ancilla);
    y = measure_exact(out, Observable::Y, ancilla);
  } else {
    if (cfg.shots < 1) throw ArgumentError("shot mode needs shots >= 1");
    x = sample(out, Observable::X, ancilla, cfg.shots, cfg.seed);
    y = sample(out, Observable::Y, ancilla, cfg.shots, cfg.seed ^ kImagStream);
    r.shots = 2 * cfg.shots;
  }
  r.raw_x = r.re = x.estimate;
  r.raw_y = r.im = y.estimate;
  r.std_error_re = x.std_error;
  r.std_error_im = y.std_error;
  return r;
}

StateVector control_free_output(const ComplexMatrix& u,
                                const Eigenpair& eigenpair,
                                const StateVector& psi, bool with_gate) {
  check_psi(u, psi);
  require_eigenpair(u, eigenpair);
  const int n = qubits_for_dim(u.rows());
  const GadgetWires wires = gadget_wires(n);
  std::optional<Complex> correction;
  if (with_gate) correction = eigenpair.eigenvalue;

  Circuit circuit(wires.all());
  circuit.append(Gate::h(wires.ancilla));
  circuit.append(gadget_circuit(u, correction, false));

  ComplexVector zero = ComplexVector::Zero(2);
  zero[0] = 1.0;
  const StateVector input(
      wires.all(),
      tensor(tensor(zero, psi.amplitudes()), eigenpair.vector.amplitudes()));
  return run(circuit, input);
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Standard:
      return "standard";
    case Scheme::ControlFreeCorrected:
      return "control_free_corrected";
    case Scheme::ControlFreePostprocessed:
      return "control_free_postprocessed";
  }
  return "?";
}

std::string_view mode_name(EstimationMode mode) {
  return mode == EstimationMode::Exact ? "exact" : "shots";
}

HadamardTestResult standard_test(const ComplexMatrix& u, const StateVector& psi,
                                 const EstimatorConfig& config) {
  check_psi(u, psi);
  const int n = qubits_for_dim(u.rows());
  const GadgetWires w = gadget_wires(n);
  const WireList wires = w.ancilla_system();

  Circuit circuit(wires);
  circuit.append(Gate::h(w.ancilla));
  circuit.append(Gate::ublock(controlled_u(u), "C(U)", wires));

  ComplexVector zero = ComplexVector::Zero(2);
  zero[0] = 1.0;
  const StateVector out =
      run(circuit, StateVector(wires, tensor(zero, psi.amplitudes())));
  return measure_ancilla(out, w.ancilla, Scheme::Standard, config);
}

HadamardTestResult control_free_test(const ComplexMatrix& u,
                                     const Eigenpair& eigenpair,
                                     const StateVector& psi,
                                     Correction correction,
                                     const EstimatorConfig& config) {
  const bool with_gate = correction == Correction::Gate;
  const StateVector out = control_free_output(u, eigenpair, psi, with_gate);
  const Scheme scheme =
      with_gate ? Scheme::ControlFreeCorrected : Scheme::ControlFreePostprocessed;
  HadamardTestResult r = measure_ancilla(out, "a", scheme, config);
  if (!with_gate) {
    // raw <X> + i<Y> = conj(lambda) <psi|U|psi>
    const Complex lambda = eigenpair.eigenvalue;
    const Complex z = lambda * Complex(r.raw_x, r.raw_y);
    r.re = z.real();
    r.im = z.imag();
    const double a = lambda.real();
    const double b = lambda.imag();
    const double se_x = r.std_error_re;
    const double se_y = r.std_error_im;
    r.std_error_re = std::hypot(a * se_x, b * se_y);
    r.std_error_im = std::hypot(b * se_x, a * se_y);
  }
  return r;
}

AncillaDensity ancilla_density(const ComplexMatrix& u,
                               const Eigenpair& eigenpair,
                               const StateVector& psi) {
  const StateVector out = control_free_output(u, eigenpair, psi, false);
  const ComplexVector& p = psi.amplitudes();
  const Complex overlap = p.dot(u * p);  // <psi|U|psi>
  const Complex lambda = eigenpair.eigenvalue;

  AncillaDensity d;
  d.closed_form = ComplexMatrix(2, 2);
  d.closed_form << 0.5, 0.5 * lambda * std::conj(overlap),
      0.5 * std::conj(lambda) * overlap, 0.5;
  d.simulated = density(out, {"a"});
  d.max_deviation = max_abs(d.closed_form - d.simulated);
  return d;
}

}  // namespace ctrlfree
