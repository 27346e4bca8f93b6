#pragma once

namespace qdist {

/// Physical constants used by the dimensional formulas. Defaults are natural
/// units (all one); set SI values to evaluate the thermal expressions in SI.
struct Constants {
  double hbar = 1.0;
  double c = 1.0;
  double k_B = 1.0;
  double G = 1.0;

  static Constants natural() { return {}; }
  static Constants si() { return {1.054571817e-34, 2.99792458e8, 1.380649e-23, 6.67430e-11}; }
};

}  // namespace qdist
