#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ctrlfree/errors.hpp"

namespace ctrlfree {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Ordered wire labels. The first label is the most significant bit of an
/// amplitude index.
using WireList = std::vector<std::string>;

namespace tol {
inline constexpr double kUnitaryInput = 1e-10;
inline constexpr double kReconstruction = 1e-8;
inline constexpr double kNorm = 1e-10;
inline constexpr double kEigenResidual = 1e-9;
inline constexpr double kDensity = 1e-9;
}  // namespace tol

/// Dense-size caps. Matrices are bounded much tighter than statevectors: a
/// full gadget at the system cap has 2*10+1 = 21 wires, which is fine as a
/// 2^21 statevector but not as a 2^21 x 2^21 matrix.
namespace caps {
inline constexpr int kMaxSystemQubits = 10;
inline constexpr int kMaxStateQubits = 2 * kMaxSystemQubits + 1;
inline constexpr int kMaxMatrixQubits = 12;
}  // namespace caps

/// Default labels q0, q1, ... for n wires.
WireList default_wires(int num_qubits);

/// Returns log2(dim), throwing ArgumentError when dim is not a power of two.
int qubits_for_dim(Eigen::Index dim);

/// Normalized statevector over an explicit wire layout.
class StateVector {
 public:
  /// Validates that the layout length matches log2(size) and that the norm is
  /// one within tol::kNorm.
  StateVector(WireList layout, ComplexVector amplitudes);
  /// Uses default_wires().
  explicit StateVector(ComplexVector amplitudes);

  static StateVector basis(WireList layout, std::uint64_t index);
  static StateVector basis(int num_qubits, std::uint64_t index);

  int num_qubits() const { return static_cast<int>(layout_.size()); }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const WireList& layout() const { return layout_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  /// Same amplitudes under new labels.
  StateVector relabeled(WireList layout) const;
  /// Position of `wire` in the layout; throws ArgumentError if absent.
  int wire_index(const std::string& wire) const;

 private:
  WireList layout_;
  ComplexVector amplitudes_;
};

/// Eigenvalue lambda = exp(i*phase) of a unitary together with its eigenvector.
struct Eigenpair {
  Complex eigenvalue;
  double eigenphase;  // in (-pi, pi]
  StateVector vector;
};

/// Maps arg(lambda) into (-pi, pi].
double principal_phase(Complex lambda);

/// Max-entry norm.
double max_abs(const ComplexMatrix& m);
double unitarity_defect(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& m, double tol = tol::kUnitaryInput);
/// Throws ValidationError naming `what` if m is not square or not unitary.
void require_unitary(const ComplexMatrix& m, const std::string& what);

ComplexMatrix identity(Eigen::Index dim);
/// Kronecker product A (x) B; A indexes the high bits.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);
/// Concatenates layouts: a's wires first.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Reduced density matrix on `keep`. The kept wires appear in layout order in
/// the result regardless of their order in `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const WireList& layout,
                            const WireList& keep);

/// Throws ValidationError unless rho is Hermitian, unit trace and PSD within
/// tol::kDensity.
void require_density_matrix(const ComplexMatrix& rho);

/// Orthonormal eigenbasis of a unitary, sorted ascending by eigenphase.
std::vector<Eigenpair> eig_unitary(const ComplexMatrix& u);

/// Throws ValidationError if ||U v - lambda v|| > tol::kEigenResidual or
/// |lambda| != 1.
void require_eigenpair(const ComplexMatrix& u, const Eigenpair& pair);

/// Builds an Eigenpair from an eigenvalue and vector, deriving the phase.
Eigenpair make_eigenpair(Complex eigenvalue, StateVector vector);

/// Seeded generator. `stream` derives independent sub-streams from one seed
/// (per-trial or per-observable) without reusing state.
using Rng = std::mt19937_64;
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Entries are i.i.d. standard complex normal, E|z|^2 = 1.
ComplexVector complex_gaussian(Rng& rng, Eigen::Index dim);

/// Haar-distributed unitary on num_qubits, deterministic in seed.
ComplexMatrix haar_random_unitary(int num_qubits, std::uint64_t seed);
/// Haar-distributed pure state (normalized complex Gaussian vector).
StateVector haar_random_state(int num_qubits, std::uint64_t seed);
StateVector haar_random_state(int num_qubits, Rng& rng);

/// |<a|b>|^2
double state_fidelity(const StateVector& a, const StateVector& b);

}  // namespace ctrlfree
