#pragma once

#include <cstdint>
#include <string_view>

#include "ctrlfree/linalg.hpp"

namespace ctrlfree {

enum class Scheme { Standard, ControlFreeCorrected, ControlFreePostprocessed };
enum class EstimationMode { Exact, Shots };
/// How the control-free scheme removes the eigenvalue factor.
enum class Correction { Gate, Postprocess };

std::string_view scheme_name(Scheme scheme);
std::string_view mode_name(EstimationMode mode);

struct EstimatorConfig {
  EstimationMode mode = EstimationMode::Exact;
  /// Shots per observable; Re and Im each get their own budget.
  int shots = 0;
  std::uint64_t seed = 0;
};

/// Estimate of <psi|U|psi>.
struct HadamardTestResult {
  Scheme scheme = Scheme::Standard;
  EstimationMode mode = EstimationMode::Exact;
  int shots = 0;  // total over both observables
  double re = 0.0;
  double im = 0.0;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  std::uint64_t seed = 0;
  /// Ancilla <X>, <Y> as measured, before any classical post-processing.
  double raw_x = 0.0;
  double raw_y = 0.0;
};

/// H on the ancilla, C(U) as one dense block, then <X> and <Y> on the ancilla.
HadamardTestResult standard_test(const ComplexMatrix& u, const StateVector& psi,
                                 const EstimatorConfig& config);

/// H on the ancilla, CSWAP-U-CSWAP with the eigen register in |e>, then either
/// the PhaseDiag(lambda) gate before measuring or multiplication of the raw
/// estimate by lambda afterwards.
HadamardTestResult control_free_test(const ComplexMatrix& u,
                                     const Eigenpair& eigenpair,
                                     const StateVector& psi,
                                     Correction correction,
                                     const EstimatorConfig& config);

struct AncillaDensity {
  ComplexMatrix closed_form;  // (1/2)[[1, lambda<U^dag>], [lambda* <U>, 1]]
  ComplexMatrix simulated;    // partial trace of the control-free output
  double max_deviation = 0.0;
};

AncillaDensity ancilla_density(const ComplexMatrix& u,
                               const Eigenpair& eigenpair,
                               const StateVector& psi);

}  // namespace ctrlfree
