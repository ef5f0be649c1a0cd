#pragma once

#include <algorithm>
#include <random>

#include "ctrlfree/circuit.hpp"

namespace testgen {

/// Random circuit over `wires` drawing every gate kind, UBLOCKs included.
inline ctrlfree::Circuit random_circuit(const ctrlfree::WireList& wires,
                                        int num_gates, std::uint64_t seed) {
  using namespace ctrlfree;
  Rng rng = make_rng(seed, 77);
  std::uniform_int_distribution<int> kind_dist(0, 9);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  Circuit c(wires);
  const int m = static_cast<int>(wires.size());
  auto pick = [&](int k) {
    WireList w = wires;
    std::shuffle(w.begin(), w.end(), rng);
    w.resize(static_cast<std::size_t>(k));
    return w;
  };
  for (int i = 0; i < num_gates; ++i) {
    int kind = kind_dist(rng);
    if (m < 3 && kind >= 7) kind = 6;
    if (m < 2 && kind >= 6) kind = 0;
    switch (kind) {
      case 0: c.append(Gate::h(pick(1)[0])); break;
      case 1: c.append(Gate::s(pick(1)[0])); break;
      case 2: c.append(Gate::sdg(pick(1)[0])); break;
      case 3: c.append(Gate::rz(angle(rng), pick(1)[0])); break;
      case 4: c.append(Gate::phase_diag(std::polar(1.0, angle(rng)), pick(1)[0])); break;
      case 5: c.append(Gate::x(pick(1)[0])); break;
      case 6: {
        auto w = pick(2);
        c.append(Gate::cnot(w[0], w[1]));
        break;
      }
      case 7: {
        auto w = pick(3);
        c.append(Gate::toffoli(w[0], w[1], w[2]));
        break;
      }
      case 8: {
        auto w = pick(3);
        c.append(Gate::cswap(w[0], w[1], w[2]));
        break;
      }
      default: {
        const int k = std::min(m, 1 + static_cast<int>(rng() % 2));
        c.append(Gate::ublock(haar_random_unitary(k, rng()), "R", pick(k)));
        break;
      }
    }
  }
  return c;
}

}  // namespace testgen
