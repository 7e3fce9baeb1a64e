#include "gme/families.hpp"

#include <algorithm>

#include "gme/io.hpp"
#include "gme/states.hpp"

namespace gme {

const std::vector<std::string>& family_ids() {
  static const std::vector<std::string> ids{"ghz", "ghz_noise", "w", "ghz_w_mix", "gghz_qutrit_mix", "smolin",
                                            "custom-file"};
  return ids;
}

bool StateFamily::two_parameter() const { return id == "ghz_w_mix" || id == "gghz_qutrit_mix" || id == "smolin"; }

void set_param(StateFamily& family, const std::string& name, double value) {
  if (name == "p") {
    family.p = value;
  } else if (name == "alpha") {
    family.alpha = value;
  } else if (name == "beta") {
    family.beta = value;
  } else {
    throw PreconditionError("unknown family parameter '" + name + "' (expected p, alpha or beta)");
  }
}

namespace {

void check_weight(double w, const char* name) {
  if (!(w >= 0.0 && w <= 1.0)) throw PreconditionError(std::string("family parameter ") + name + " must be in [0, 1]");
}

void check_pair(double alpha, double beta) {
  check_weight(alpha, "alpha");
  check_weight(beta, "beta");
  if (alpha + beta > 1.0 + 1e-12) throw PreconditionError("family parameters need alpha + beta <= 1");
}

}  // namespace

DensityMatrixd build_state(const StateFamily& f) {
  if (f.id == "ghz" || f.id == "ghz_noise") {
    const double p = f.p.value_or(1.0);
    check_weight(p, "p");
    return states::ghz_noise(f.d, f.n, p);
  }
  if (f.id == "w") {
    if (f.d != 2) throw PreconditionError("family w is defined for qubits only");
    const double p = f.p.value_or(0.0);
    check_weight(p, "p");
    return states::w_noise(f.n, p);
  }
  if (f.id == "ghz_w_mix") {
    check_pair(f.alpha, f.beta);
    return states::ghz_w_mix(f.alpha, f.beta);
  }
  if (f.id == "gghz_qutrit_mix") {
    check_pair(f.alpha, f.beta);
    return states::gghz_qutrit_mix(f.alpha, f.beta);
  }
  if (f.id == "smolin") {
    check_pair(f.alpha, f.beta);
    return states::smolin_family(f.d, f.alpha, f.beta);
  }
  if (f.id == "custom-file") {
    if (f.state_file.empty()) throw PreconditionError("family custom-file needs a state file");
    return io::load_density(f.state_file);
  }
  throw PreconditionError("unknown family '" + f.id + "'");
}

}  // namespace gme
