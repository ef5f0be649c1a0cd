#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ctrlfree/circuit.hpp"
#include "ctrlfree/linalg.hpp"

namespace ctrlfree {

/// Register names of the gadget: ancilla "a", system s1..sn, eigen e1..en.
struct GadgetWires {
  std::string ancilla;
  WireList system;
  WireList eigen;

  /// [ancilla, system..., eigen...]; 2n+1 wires.
  WireList all() const;
  /// [ancilla, system...]
  WireList ancilla_system() const;
};

GadgetWires gadget_wires(int n);

struct GadgetSpec {
  int n = 1;
  ComplexMatrix u;
  Eigenpair eigenpair;
  bool apply_phase_correction = true;
  bool decomposed = false;

  /// Throws ValidationError/ArgumentError unless U is a 2^n unitary, n is in
  /// [1, caps::kMaxSystemQubits] and the eigenpair belongs to U.
  void validate() const;
};

/// Convenience: spec for U using eig_unitary(U)[eig_index].
GadgetSpec make_gadget_spec(const ComplexMatrix& u, std::size_t eig_index,
                            bool apply_phase_correction = true,
                            bool decomposed = false);

/// Circuit on gadget_wires(n).all(): n CSWAP(a, s_k, e_k), UBLOCK(U) on the
/// eigen register, n CSWAP(a, s_k, e_k), then PhaseDiag(lambda) on the
/// ancilla when requested. Validates the spec.
Circuit build_gadget(const GadgetSpec& spec);

/// Same layout as build_gadget but without eigenpair validation.
/// `correction` is the eigenvalue to undo on the ancilla, if any.
Circuit gadget_circuit(const ComplexMatrix& u, std::optional<Complex> correction,
                       bool decomposed);

/// P0 (x) (I (x) U) + P1 (x) (U (x) I), dimension 2 * 4^n.
ComplexMatrix closed_form_W(const ComplexMatrix& u);

/// CSWAP * (I_a (x) I_S (x) U_E) * CSWAP with CSWAP = P0 (x) I + P1 (x) SWAP_SE
/// assembled from explicit projector and register-swap matrices.
ComplexMatrix swap_network_W(const ComplexMatrix& u);

/// diag(conj(lambda), 1); equal to e^{-i phi/2} RZ(phi) for lambda = e^{i phi}.
ComplexMatrix phase_correction(Complex lambda);

/// P0 (x) I + P1 (x) U.
ComplexMatrix controlled_u(const ComplexMatrix& u);

/// max | W (I (x) |e>) - (diag(lambda, 1) (x) I) C(U) (x) |e> |: the gadget
/// restricted to the eigen sector against the controlled unitary.
double eigen_sector_deviation(const ComplexMatrix& u, const Eigenpair& pair);

/// Control qubit amplitudes alpha|0> + beta|1>.
struct ControlState {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
};

/// Uniform on the Bloch sphere.
ControlState random_control(Rng& rng);

struct EquivalenceReport {
  int trials = 0;
  double max_deviation = 0.0;  // max over trials of 1 - fidelity
  bool pass = false;
};

inline constexpr double kEquivalenceTolerance = 1e-9;

/// Runs the gadget on |c>|psi>|e> for `trials` random control states and
/// Haar states psi (trial t seeded with seed + t) and compares with
/// (C(U)|c>|psi>) (x) |e> up to global phase. Without the phase correction
/// the comparison is still performed and will generally fail for lambda != 1.
EquivalenceReport check_equivalence(const GadgetSpec& spec, int trials,
                                    std::uint64_t seed);

/// sqrt(1-eps)|e> + e^{i phase} sqrt(eps)|perp>.
struct PerturbedEigenstate {
  double epsilon = 0.0;
  double phase = 0.0;
  StateVector perp;
  StateVector state;
};

/// |perp> is a seeded random state with |e> projected out.
PerturbedEigenstate perturb_eigenstate(const StateVector& e, double epsilon,
                                       double phase, std::uint64_t seed);
/// Caller-supplied |perp>; must be orthogonal to |e> within 1e-9.
PerturbedEigenstate perturb_eigenstate(const StateVector& e, double epsilon,
                                       double phase, const StateVector& perp);

/// Fidelity between alpha|0>|psi>|e> + beta|1>U|psi>|e> and the phase
/// corrected gadget output on |c>|psi>|e~>. The correction is always applied
/// here, whatever spec.apply_phase_correction says.
double robustness_fidelity(const GadgetSpec& spec,
                           const PerturbedEigenstate& perturbed,
                           const StateVector& psi, Complex alpha, Complex beta);

}  // namespace ctrlfree
