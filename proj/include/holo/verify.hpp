#pragma once

#include <string>
#include <vector>

namespace holo {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Built-in invariant checks; all deterministic (fixed seeds).
CheckResult verify_unitarity();          // 100 random 224x224 fields, |dE|/E < 1e-10
CheckResult verify_inverse_pairing();    // back(prop(O)) = O, max error < 1e-10
CheckResult verify_adjoint_identity();   // <Px,y> = <x,P*y>, 100 pairs on 64x64
CheckResult verify_gradient_fd();        // central differences vs adjoint gradient
CheckResult verify_twin_scaling();       // residual ~ O(|o|^2), twin defocused
CheckResult verify_noise_statistics();   // shot/read/dark/speckle moments

/// Runs all checks in the order above.
std::vector<CheckResult> run_verification();

} // namespace holo
