#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ctrlfree/linalg.hpp"

namespace ctrlfree::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Resolves a unitary source: "haar" (seeded by `seed`), "haar:<seed>",
/// "preset:<X|Z|S|T|I|QFT>" (single-qubit presets are raised to the n-fold
/// tensor power) or a path to a matrix JSON file.
ComplexMatrix resolve_unitary(const std::string& source, int n,
                              std::uint64_t seed);

/// Resolves a state source: "zero", "plus", "haar:<seed>" or a state file.
StateVector resolve_state(const std::string& source, int n);

/// Quantum Fourier transform on n qubits, F_jk = w^{jk} / sqrt(2^n).
ComplexMatrix qft_matrix(int n);

/// Full command-line entry point. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ctrlfree::cli
