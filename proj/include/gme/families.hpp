#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gme/density.hpp"

namespace gme {

/// Named state families. Parameter meaning per family:
///   ghz, ghz_noise    p |GHZ_{d,n}><GHZ_{d,n}| + (1-p) I/d^n      (p defaults to 1)
///   w                 (p/2^n) I + (1-p) |W_n><W_n|                (p defaults to 0)
///   ghz_w_mix         (1-a-b)/8 I + a GHZ + b W, three qubits
///   gghz_qutrit_mix   (1-a-b)/27 I + a bisep + b GHZ(3,3)
///   smolin            four-qudit family with local dimension d
///   custom-file       density matrix loaded from state_file (JSON)
struct StateFamily {
  std::string id = "ghz";
  int d = 2;
  int n = 3;
  std::optional<double> p;
  double alpha = 0;
  double beta = 0;
  std::string state_file;

  bool two_parameter() const;
};

const std::vector<std::string>& family_ids();

/// Sets "p", "alpha" or "beta"; anything else is a PreconditionError.
void set_param(StateFamily& family, const std::string& name, double value);

/// Builds and validates the state. Invalid parameters raise
/// PreconditionError, invalid files ValidationError.
DensityMatrixd build_state(const StateFamily& family);

}  // namespace gme
