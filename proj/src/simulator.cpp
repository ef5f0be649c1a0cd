#include "ctrlfree/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

namespace ctrlfree {

namespace {

using Index = Eigen::Index;

void apply_1q(ComplexVector& amp, Index mask, const ComplexMatrix& g) {
  const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
  for (Index i = 0; i < amp.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = amp[i];
    const Complex a1 = amp[i | mask];
    amp[i] = g00 * a0 + g01 * a1;
    amp[i | mask] = g10 * a0 + g11 * a1;
  }
}

void apply_controlled_x(ComplexVector& amp, Index controls, Index target) {
  for (Index i = 0; i < amp.size(); ++i) {
    if ((i & controls) == controls && !(i & target)) {
      std::swap(amp[i], amp[i | target]);
    }
  }
}

void apply_cswap(ComplexVector& amp, Index control, Index a, Index b) {
  for (Index i = 0; i < amp.size(); ++i) {
    if ((i & control) && (i & a) && !(i & b)) {
      std::swap(amp[i], amp[(i & ~a) | b]);
    }
  }
}

void apply_block(ComplexVector& amp, const std::vector<Index>& masks,
                 const ComplexMatrix& block) {
  const int k = static_cast<int>(masks.size());
  const Index sub_dim = Index{1} << k;
  Index gate_mask = 0;
  for (Index m : masks) gate_mask |= m;

  std::vector<Index> offsets(static_cast<std::size_t>(sub_dim));
  for (Index sub = 0; sub < sub_dim; ++sub) {
    Index off = 0;
    for (int b = 0; b < k; ++b) {
      if ((sub >> (k - 1 - b)) & 1) off |= masks[b];
    }
    offsets[sub] = off;
  }
  ComplexVector gathered(sub_dim);
  for (Index base = 0; base < amp.size(); ++base) {
    if (base & gate_mask) continue;
    for (Index sub = 0; sub < sub_dim; ++sub) {
      gathered[sub] = amp[base | offsets[sub]];
    }
    const ComplexVector out = block * gathered;
    for (Index sub = 0; sub < sub_dim; ++sub) {
      amp[base | offsets[sub]] = out[sub];
    }
  }
}

Index bit_mask(const StateVector& s, const std::string& wire) {
  return Index{1} << (s.num_qubits() - 1 - s.wire_index(wire));
}

}  // namespace

std::string_view observable_name(Observable obs) {
  switch (obs) {
    case Observable::X:
      return "X";
    case Observable::Y:
      return "Y";
    case Observable::Z:
      return "Z";
  }
  return "?";
}

Observable parse_observable(std::string_view name) {
  if (name == "X") return Observable::X;
  if (name == "Y") return Observable::Y;
  if (name == "Z") return Observable::Z;
  throw ArgumentError("unknown observable '" + std::string(name) + "'");
}

StateVector run(const Circuit& circuit, const StateVector& input) {
  if (input.layout() != circuit.wires()) {
    throw ArgumentError("run: input layout does not match circuit wires");
  }
  const int m = circuit.num_wires();
  auto mask_of = [&](const std::string& w) {
    return Index{1} << (m - 1 - circuit.wire_index(w));
  };
  ComplexVector amp = input.amplitudes();
  for (const auto& g : circuit.gates()) {
    const auto& w = g.wires();
    switch (g.kind()) {
      case GateKind::CNOT:
        apply_controlled_x(amp, mask_of(w[0]), mask_of(w[1]));
        break;
      case GateKind::TOFFOLI:
        apply_controlled_x(amp, mask_of(w[0]) | mask_of(w[1]), mask_of(w[2]));
        break;
      case GateKind::CSWAP:
        apply_cswap(amp, mask_of(w[0]), mask_of(w[1]), mask_of(w[2]));
        break;
      case GateKind::UBLOCK: {
        std::vector<Index> masks;
        for (const auto& wire : w) masks.push_back(mask_of(wire));
        apply_block(amp, masks, g.matrix());
        break;
      }
      default:
        apply_1q(amp, mask_of(w[0]), g.local_matrix());
        break;
    }
  }
  return StateVector(input.layout(), std::move(amp));
}

double expectation(const StateVector& state, Observable obs,
                   const std::string& wire) {
  const Index mask = bit_mask(state, wire);
  const ComplexVector& a = state.amplitudes();
  double acc = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = a[i];
    const Complex a1 = a[i | mask];
    switch (obs) {
      case Observable::Z:
        acc += std::norm(a0) - std::norm(a1);
        break;
      case Observable::X:
        acc += 2.0 * (std::conj(a0) * a1).real();
        break;
      case Observable::Y:
        acc += 2.0 * (std::conj(a0) * a1).imag();
        break;
    }
  }
  return std::clamp(acc, -1.0, 1.0);
}

MeasurementRecord measure_exact(const StateVector& state, Observable obs,
                                const std::string& wire) {
  return MeasurementRecord{obs, wire, 0, expectation(state, obs, wire), 0.0, 0};
}

MeasurementRecord sample(const StateVector& state, Observable obs,
                         const std::string& wire, int shots,
                         std::uint64_t seed) {
  if (shots < 1) throw ArgumentError("sample: shots must be >= 1");
  Circuit rotation(state.layout());
  if (obs == Observable::Y) rotation.append(Gate::sdg(wire));
  if (obs != Observable::Z) rotation.append(Gate::h(wire));
  const StateVector rotated = run(rotation, state);

  const Index mask = bit_mask(rotated, wire);
  double p_plus = 0.0;
  for (Index i = 0; i < rotated.dim(); ++i) {
    if (!(i & mask)) p_plus += std::norm(rotated[i]);
  }
  p_plus = std::clamp(p_plus, 0.0, 1.0);

  Rng rng = make_rng(seed);
  std::binomial_distribution<int> draw(shots, p_plus);
  const int n_plus = draw(rng);
  const double estimate =
      static_cast<double>(2 * n_plus - shots) / static_cast<double>(shots);
  const double se =
      std::sqrt(std::max(0.0, 1.0 - estimate * estimate) / shots);
  return MeasurementRecord{obs, wire, shots, estimate, se, seed};
}

ComplexMatrix density(const StateVector& state, const WireList& keep) {
  const int m = state.num_qubits();
  std::vector<int> kept;
  for (const auto& w : keep) kept.push_back(state.wire_index(w));
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw ArgumentError("density: keep set lists a wire twice");
  }
  const int k = static_cast<int>(kept.size());
  if (k > caps::kMaxMatrixQubits) {
    throw ResourceLimitError("density: reduced matrix exceeds matrix cap");
  }
  Index keep_mask = 0;
  std::vector<Index> offsets(std::size_t{1} << k);
  for (Index sub = 0; sub < static_cast<Index>(offsets.size()); ++sub) {
    Index off = 0;
    for (int b = 0; b < k; ++b) {
      if ((sub >> (k - 1 - b)) & 1) off |= Index{1} << (m - 1 - kept[b]);
    }
    offsets[sub] = off;
  }
  for (int p : kept) keep_mask |= Index{1} << (m - 1 - p);

  const Index dk = static_cast<Index>(offsets.size());
  ComplexMatrix rho = ComplexMatrix::Zero(dk, dk);
  const ComplexVector& a = state.amplitudes();
  for (Index rest = 0; rest < a.size(); ++rest) {
    if (rest & keep_mask) continue;
    for (Index i = 0; i < dk; ++i) {
      const Complex ai = a[rest | offsets[i]];
      if (ai == Complex(0.0)) continue;
      for (Index j = 0; j < dk; ++j) {
        rho(i, j) += ai * std::conj(a[rest | offsets[j]]);
      }
    }
  }
  return rho;
}

}  // namespace ctrlfree
