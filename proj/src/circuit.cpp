#include "ctrlfree/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

namespace ctrlfree {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 10> kNames{{
    {GateKind::H, "H"},
    {GateKind::S, "S"},
    {GateKind::Sdg, "Sdg"},
    {GateKind::RZ, "RZ"},
    {GateKind::PhaseDiag, "PhaseDiag"},
    {GateKind::X, "X"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::TOFFOLI, "TOFFOLI"},
    {GateKind::CSWAP, "CSWAP"},
    {GateKind::UBLOCK, "UBLOCK"},
}};

// Permutation matrix over k local bits for a classical reversible map.
template <typename F>
ComplexMatrix permutation(int k, F map) {
  const Eigen::Index dim = Eigen::Index{1} << k;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index in = 0; in < dim; ++in) m(map(in), in) = 1.0;
  return m;
}

}  // namespace

std::string_view kind_name(GateKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

GateKind parse_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw ArgumentError("unknown gate kind '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Gate

Gate::Gate(GateKind kind, WireList wires)
    : kind_(kind), wires_(std::move(wires)) {
  std::set<std::string> seen(wires_.begin(), wires_.end());
  if (seen.size() != wires_.size()) {
    throw ArgumentError(std::string(kind_name(kind_)) +
                        " gate touches the same wire twice");
  }
}

Gate Gate::h(std::string wire) { return Gate(GateKind::H, {std::move(wire)}); }
Gate Gate::s(std::string wire) { return Gate(GateKind::S, {std::move(wire)}); }
Gate Gate::sdg(std::string wire) {
  return Gate(GateKind::Sdg, {std::move(wire)});
}
Gate Gate::x(std::string wire) { return Gate(GateKind::X, {std::move(wire)}); }

Gate Gate::rz(double theta, std::string wire) {
  if (!std::isfinite(theta)) throw ArgumentError("RZ angle must be finite");
  Gate g(GateKind::RZ, {std::move(wire)});
  g.theta_ = theta;
  return g;
}

Gate Gate::phase_diag(Complex lambda, std::string wire) {
  if (std::abs(std::abs(lambda) - 1.0) > tol::kUnitaryInput) {
    throw ValidationError("PhaseDiag requires a unit-modulus lambda");
  }
  Gate g(GateKind::PhaseDiag, {std::move(wire)});
  g.lambda_ = lambda;
  return g;
}

Gate Gate::cnot(std::string control, std::string target) {
  return Gate(GateKind::CNOT, {std::move(control), std::move(target)});
}

Gate Gate::toffoli(std::string c1, std::string c2, std::string target) {
  return Gate(GateKind::TOFFOLI,
              {std::move(c1), std::move(c2), std::move(target)});
}

Gate Gate::cswap(std::string control, std::string a, std::string b) {
  return Gate(GateKind::CSWAP, {std::move(control), std::move(a), std::move(b)});
}

Gate Gate::ublock(ComplexMatrix matrix, std::string label, WireList wires) {
  if (wires.empty()) throw ArgumentError("UBLOCK needs at least one wire");
  if (matrix.rows() != (Eigen::Index{1} << wires.size())) {
    throw ArgumentError("UBLOCK '" + label + "' matrix dimension " +
                        std::to_string(matrix.rows()) + " does not match " +
                        std::to_string(wires.size()) + " wires");
  }
  require_unitary(matrix, "UBLOCK '" + label + "' matrix");
  Gate g(GateKind::UBLOCK, std::move(wires));
  g.label_ = std::move(label);
  g.matrix_ = std::make_shared<const ComplexMatrix>(std::move(matrix));
  return g;
}

ComplexMatrix Gate::local_matrix() const {
  switch (kind_) {
    case GateKind::H:
      return gates::hadamard();
    case GateKind::S:
      return gates::s();
    case GateKind::Sdg:
      return gates::s().adjoint();
    case GateKind::RZ:
      return gates::rz(theta_);
    case GateKind::PhaseDiag: {
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      m(0, 0) = std::conj(lambda_);
      m(1, 1) = 1.0;
      return m;
    }
    case GateKind::X:
      return gates::pauli_x();
    case GateKind::CNOT:
      return permutation(2, [](Eigen::Index i) { return (i & 2) ? i ^ 1 : i; });
    case GateKind::TOFFOLI:
      return permutation(3, [](Eigen::Index i) {
        return ((i & 6) == 6) ? i ^ 1 : i;
      });
    case GateKind::CSWAP:
      return permutation(3, [](Eigen::Index i) {
        if (!(i & 4)) return i;
        const Eigen::Index a = (i >> 1) & 1;
        const Eigen::Index b = i & 1;
        return 4 | (b << 1) | a;
      });
    case GateKind::UBLOCK:
      return *matrix_;
  }
  throw ArgumentError("unhandled gate kind");
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(WireList wires) : wires_(std::move(wires)) {
  std::set<std::string> seen(wires_.begin(), wires_.end());
  if (seen.size() != wires_.size()) {
    throw ArgumentError("circuit wire list has duplicates");
  }
}

Circuit::Circuit(WireList wires, std::vector<Gate> gates)
    : Circuit(std::move(wires)) {
  for (auto& g : gates) append(std::move(g));
}

int Circuit::wire_index(const std::string& wire) const {
  auto it = std::find(wires_.begin(), wires_.end(), wire);
  if (it == wires_.end()) throw ArgumentError("unknown wire '" + wire + "'");
  return static_cast<int>(it - wires_.begin());
}

void Circuit::check_gate(const Gate& gate) const {
  for (const auto& w : gate.wires()) wire_index(w);
}

Circuit& Circuit::append(Gate gate) {
  check_gate(gate);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  for (const auto& g : other.gates()) append(g);
  return *this;
}

Circuit concatenate(const Circuit& first, const Circuit& second) {
  if (first.wires() != second.wires()) {
    throw ArgumentError("concatenate: wire lists differ");
  }
  Circuit out = first;
  out.append(second);
  return out;
}

Circuit decompose_cswap(const Circuit& circuit) {
  Circuit out(circuit.wires());
  for (const auto& g : circuit.gates()) {
    if (g.kind() != GateKind::CSWAP) {
      out.append(g);
      continue;
    }
    const auto& c = g.wires()[0];
    const auto& a = g.wires()[1];
    const auto& b = g.wires()[2];
    out.append(Gate::cnot(b, a));
    out.append(Gate::toffoli(c, a, b));
    out.append(Gate::cnot(b, a));
  }
  return out;
}

GateCounts gate_counts(const Circuit& circuit, int toffoli_cost) {
  if (toffoli_cost < 1) throw ArgumentError("toffoli_cost must be >= 1");
  GateCounts counts;
  std::vector<int> last_layer(static_cast<std::size_t>(circuit.num_wires()), 0);
  for (const auto& g : circuit.gates()) {
    ++counts.per_kind[g.kind()];
    switch (g.kind()) {
      case GateKind::CNOT:
        counts.two_qubit_effective += 1;
        break;
      case GateKind::TOFFOLI:
        counts.two_qubit_effective += toffoli_cost;
        break;
      case GateKind::CSWAP:
        counts.two_qubit_effective += 2 + toffoli_cost;
        break;
      default:
        break;
    }
    int layer = 0;
    for (const auto& w : g.wires()) {
      layer = std::max(layer, last_layer[circuit.wire_index(w)]);
    }
    ++layer;
    for (const auto& w : g.wires()) last_layer[circuit.wire_index(w)] = layer;
    counts.depth = std::max(counts.depth, layer);
  }
  return counts;
}

ComplexMatrix circuit_unitary(const Circuit& circuit) {
  const int m = circuit.num_wires();
  if (m > caps::kMaxMatrixQubits) {
    throw ResourceLimitError("circuit_unitary: " + std::to_string(m) +
                             " wires exceeds matrix cap");
  }
  const Eigen::Index dim = Eigen::Index{1} << m;
  ComplexMatrix total = identity(dim);
  for (const auto& g : circuit.gates()) {
    const ComplexMatrix local = g.local_matrix();
    const int k = static_cast<int>(g.arity());
    std::vector<Eigen::Index> masks(static_cast<std::size_t>(k));
    Eigen::Index gate_mask = 0;
    for (int b = 0; b < k; ++b) {
      masks[b] = Eigen::Index{1} << (m - 1 - circuit.wire_index(g.wires()[b]));
      gate_mask |= masks[b];
    }
    auto local_index = [&](Eigen::Index full) {
      Eigen::Index sub = 0;
      for (int b = 0; b < k; ++b) {
        sub = (sub << 1) | ((full & masks[b]) ? 1 : 0);
      }
      return sub;
    };
    auto with_local = [&](Eigen::Index full, Eigen::Index sub) {
      Eigen::Index out = full & ~gate_mask;
      for (int b = 0; b < k; ++b) {
        if ((sub >> (k - 1 - b)) & 1) out |= masks[b];
      }
      return out;
    };
    ComplexMatrix embedded = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
      const Eigen::Index in = local_index(col);
      for (Eigen::Index r = 0; r < local.rows(); ++r) {
        embedded(with_local(col, r), col) = local(r, in);
      }
    }
    total = embedded * total;
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace gates {

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  const double r = 1.0 / std::numbers::sqrt2;
  m << r, r, r, -r;
  return m;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix s() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, Complex(0, 1);
  return m;
}

ComplexMatrix t() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4);
  return m;
}

ComplexMatrix rz(double theta) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -theta / 2);
  m(1, 1) = std::polar(1.0, theta / 2);
  return m;
}

ComplexMatrix projector(int bit) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(bit, bit) = 1.0;
  return m;
}

ComplexMatrix register_swap(int qubits) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  if (2 * qubits > caps::kMaxMatrixQubits) {
    throw ResourceLimitError("register_swap exceeds matrix cap");
  }
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index s = 0; s < d; ++s) {
    for (Eigen::Index e = 0; e < d; ++e) m(e * d + s, s * d + e) = 1.0;
  }
  return m;
}

}  // namespace gates

}  // namespace ctrlfree
