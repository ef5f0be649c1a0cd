#include "ctrlfree/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace ctrlfree {

namespace {

void check_matrix_cap(Eigen::Index dim) {
  if (dim > (Eigen::Index{1} << caps::kMaxMatrixQubits)) {
    throw ResourceLimitError("matrix dimension " + std::to_string(dim) +
                             " exceeds cap 2^" +
                             std::to_string(caps::kMaxMatrixQubits));
  }
}

}  // namespace

WireList default_wires(int num_qubits) {
  WireList wires;
  wires.reserve(static_cast<std::size_t>(num_qubits));
  for (int i = 0; i < num_qubits; ++i) wires.push_back("q" + std::to_string(i));
  return wires;
}

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw ArgumentError("dimension " + std::to_string(dim) +
                        " is not a power of two");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(WireList layout, ComplexVector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<int>(layout_.size()) > caps::kMaxStateQubits) {
    throw ResourceLimitError("statevector over " +
                             std::to_string(layout_.size()) +
                             " qubits exceeds cap");
  }
  if (amplitudes_.size() != (Eigen::Index{1} << layout_.size())) {
    throw ValidationError("statevector has " +
                          std::to_string(amplitudes_.size()) +
                          " amplitudes but layout has " +
                          std::to_string(layout_.size()) + " wires");
  }
  std::set<std::string> seen(layout_.begin(), layout_.end());
  if (seen.size() != layout_.size()) {
    throw ValidationError("statevector layout has duplicate wire labels");
  }
  const double norm = amplitudes_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol::kNorm) {
    throw ValidationError("statevector norm must be 1 (got " +
                          std::to_string(norm) + ")");
  }
}

StateVector::StateVector(ComplexVector amplitudes)
    : StateVector(default_wires(qubits_for_dim(amplitudes.size())),
                  ComplexVector(amplitudes)) {}

StateVector StateVector::basis(WireList layout, std::uint64_t index) {
  const Eigen::Index dim = Eigen::Index{1} << layout.size();
  if (static_cast<Eigen::Index>(index) >= dim) {
    throw ArgumentError("basis index out of range");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(layout), std::move(v));
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  return basis(default_wires(num_qubits), index);
}

StateVector StateVector::relabeled(WireList layout) const {
  return StateVector(std::move(layout), amplitudes_);
}

int StateVector::wire_index(const std::string& wire) const {
  auto it = std::find(layout_.begin(), layout_.end(), wire);
  if (it == layout_.end()) throw ArgumentError("unknown wire '" + wire + "'");
  return static_cast<int>(it - layout_.begin());
}

// ---------------------------------------------------------------------------
// Matrix helpers

double principal_phase(Complex lambda) {
  double phase = std::arg(lambda);
  // Snap the -pi side of the cut onto +pi so that (-pi, pi] holds even for
  // eigenvalues that land a rounding error below the negative real axis.
  if (phase <= -std::numbers::pi + 1e-12) phase = std::numbers::pi;
  return phase;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m.adjoint() * m - identity(m.rows()));
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && m.rows() >= 1 && unitarity_defect(m) <= tol;
}

void require_unitary(const ComplexMatrix& m, const std::string& what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw ValidationError(what + " must be a non-empty square matrix");
  }
  if (!m.allFinite()) throw ValidationError(what + " has non-finite entries");
  const double defect = unitarity_defect(m);
  if (defect > tol::kUnitaryInput) {
    throw ValidationError(what + " is not unitary: max|U^dag U - I| = " +
                          std::to_string(defect));
  }
}

ComplexMatrix identity(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  check_matrix_cap(std::max(rows, cols));
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() * b.size() > (Eigen::Index{1} << caps::kMaxStateQubits)) {
    throw ResourceLimitError("tensor product vector exceeds statevector cap");
  }
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  WireList layout = a.layout();
  layout.insert(layout.end(), b.layout().begin(), b.layout().end());
  return StateVector(std::move(layout),
                     tensor(a.amplitudes(), b.amplitudes()));
}

// ---------------------------------------------------------------------------
// Partial trace

void require_density_matrix(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) {
    throw ValidationError("density matrix must be square and non-empty");
  }
  if (max_abs(rho - rho.adjoint()) > tol::kDensity) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > tol::kDensity) {
    throw ValidationError("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol::kDensity) {
    throw ValidationError("density matrix is not positive semidefinite");
  }
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const WireList& layout,
                            const WireList& keep) {
  const int m = static_cast<int>(layout.size());
  if (rho.rows() != (Eigen::Index{1} << m)) {
    throw ArgumentError("density matrix dimension does not match layout");
  }
  std::vector<int> kept;
  for (const auto& w : keep) {
    auto it = std::find(layout.begin(), layout.end(), w);
    if (it == layout.end()) {
      throw ArgumentError("keep wire '" + w + "' is not in the layout");
    }
    kept.push_back(static_cast<int>(it - layout.begin()));
  }
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw ArgumentError("keep set lists a wire twice");
  }
  require_density_matrix(rho);

  std::vector<int> traced;
  for (int p = 0; p < m; ++p) {
    if (!std::binary_search(kept.begin(), kept.end(), p)) traced.push_back(p);
  }
  // Scatter the bits of a sub-index onto the full-register bit positions.
  auto scatter = [m](const std::vector<int>& positions) {
    const std::size_t k = positions.size();
    std::vector<Eigen::Index> offsets(std::size_t{1} << k);
    for (std::size_t sub = 0; sub < offsets.size(); ++sub) {
      Eigen::Index full = 0;
      for (std::size_t b = 0; b < k; ++b) {
        if ((sub >> (k - 1 - b)) & 1u) {
          full |= Eigen::Index{1} << (m - 1 - positions[b]);
        }
      }
      offsets[sub] = full;
    }
    return offsets;
  };
  const auto keep_off = scatter(kept);
  const auto trace_off = scatter(traced);

  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index r : trace_off) {
        acc += rho(keep_off[i] | r, keep_off[j] | r);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Eigendecomposition

Eigenpair make_eigenpair(Complex eigenvalue, StateVector vector) {
  return Eigenpair{eigenvalue, principal_phase(eigenvalue), std::move(vector)};
}

void require_eigenpair(const ComplexMatrix& u, const Eigenpair& pair) {
  if (u.rows() != pair.vector.dim()) {
    throw ValidationError("eigenvector dimension does not match the unitary");
  }
  if (std::abs(std::abs(pair.eigenvalue) - 1.0) > tol::kUnitaryInput) {
    throw ValidationError("eigenvalue does not have unit modulus");
  }
  const ComplexVector& v = pair.vector.amplitudes();
  const double residual = (u * v - pair.eigenvalue * v).norm();
  if (residual > tol::kEigenResidual) {
    throw ValidationError("eigenpair residual ||U e - lambda e|| = " +
                          std::to_string(residual) + " exceeds tolerance");
  }
}

std::vector<Eigenpair> eig_unitary(const ComplexMatrix& u) {
  require_unitary(u, "eig_unitary input");
  const Eigen::Index dim = u.rows();
  const int nq = qubits_for_dim(dim);

  // A unitary is normal, so its complex Schur form is diagonal up to rounding
  // and the Schur vectors already form an orthonormal eigenbasis.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  if (schur.info() != Eigen::Success) {
    throw ValidationError("Schur iteration did not converge");
  }
  const ComplexMatrix& t = schur.matrixT();
  ComplexMatrix q = schur.matrixU();

  std::vector<Complex> lambdas(static_cast<std::size_t>(dim));
  std::vector<double> phases(lambdas.size());
  for (Eigen::Index k = 0; k < dim; ++k) {
    lambdas[k] = t(k, k) / std::abs(t(k, k));
    phases[k] = principal_phase(lambdas[k]);
  }

  std::vector<Eigen::Index> order(lambdas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return phases[a] < phases[b];
  });

  // Group (near-)degenerate eigenvalues; chains with gaps below the
  // reconstruction tolerance form one eigenspace.
  std::vector<std::vector<Eigen::Index>> clusters;
  for (Eigen::Index k : order) {
    if (!clusters.empty() &&
        std::abs(lambdas[k] - lambdas[clusters.back().back()]) <
            tol::kReconstruction) {
      clusters.back().push_back(k);
    } else {
      clusters.push_back({k});
    }
  }

  auto first_nonzero = [](const ComplexVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) > 1e-8) return i;
    }
    return Eigen::Index{0};
  };

  std::vector<Eigenpair> pairs;
  pairs.reserve(lambdas.size());
  for (auto& cluster : clusters) {
    // Modified Gram-Schmidt in Schur column order.
    std::vector<Eigen::Index> cols = cluster;
    std::sort(cols.begin(), cols.end());
    std::vector<ComplexVector> basis;
    for (Eigen::Index c : cols) {
      ComplexVector v = q.col(c);
      for (const auto& b : basis) v -= b.dot(v) * b;
      v.normalize();
      // Gauge: first non-negligible amplitude real and positive.
      const Complex lead = v[first_nonzero(v)];
      v *= std::conj(lead) / std::abs(lead);
      basis.push_back(std::move(v));
    }
    std::vector<std::size_t> idx(basis.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) {
      return first_nonzero(basis[a]) < first_nonzero(basis[b]);
    });
    for (std::size_t i : idx) {
      const Eigen::Index c = cols[i];
      pairs.push_back(Eigenpair{lambdas[c], phases[c],
                                StateVector(default_wires(nq), basis[i])});
    }
  }
  for (const auto& p : pairs) require_eigenpair(u, p);
  return pairs;
}

// ---------------------------------------------------------------------------
// Random instances

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

ComplexVector complex_gaussian(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = Complex(re, im);
  }
  return v;
}

ComplexMatrix haar_random_unitary(int num_qubits, std::uint64_t seed) {
  if (num_qubits < 0 || num_qubits > caps::kMaxMatrixQubits) {
    throw ResourceLimitError("haar_random_unitary: num_qubits out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Rng rng = make_rng(seed);
  ComplexMatrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    z.row(i) = complex_gaussian(rng, dim).transpose();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * identity(dim);
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

StateVector haar_random_state(int num_qubits, Rng& rng) {
  if (num_qubits < 0 || num_qubits > caps::kMaxStateQubits) {
    throw ResourceLimitError("haar_random_state: num_qubits out of range");
  }
  ComplexVector v = complex_gaussian(rng, Eigen::Index{1} << num_qubits);
  v.normalize();
  return StateVector(std::move(v));
}

StateVector haar_random_state(int num_qubits, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return haar_random_state(num_qubits, rng);
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw ArgumentError("state_fidelity: dimension mismatch");
  }
  const double f = std::norm(a.amplitudes().dot(b.amplitudes()));
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace ctrlfree
