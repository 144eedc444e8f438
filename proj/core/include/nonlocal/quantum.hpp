#pragma once

#include <array>
#include <complex>

#include "nonlocal/behavior.hpp"

namespace nonlocal {

/// Parameters of the two-qutrit model: state coefficient gamma, white-noise
/// mixing parameter lambda, and the Fourier-basis phase settings. Defaults
/// are the standard CGLMP settings alpha = (0, 1/2), beta = (1/4, -1/4).
struct QutritModel {
  double gamma = 1.0;
  double lambda = 1.0;
  std::array<double, 2> alpha = {0.0, 0.5};
  std::array<double, 2> beta = {0.25, -0.25};
  static constexpr int d = 3;

  void validate() const;
};

/// Two-qutrit state in the product basis |j>_A |j'>_B, length d*d; only the
/// diagonal j == j' amplitudes are nonzero for the gamma family.
struct StateVector {
  std::array<std::complex<double>, 9> amps{};
};

enum class Side { A, B };

/// (|00> + gamma|11> + |22>)/sqrt(2 + gamma^2). Throws InvalidParameter for
/// gamma < 0.
StateVector qutrit_state(double gamma);

/// Fourier-phase measurement vector, unit norm. setting is 1-based (1 or 2),
/// outcome 0-based (0..2). Side A uses phases exp(i 2pi/3 j(a + alpha_x)),
/// side B uses exp(i 2pi/3 j(-b + beta_y)).
std::array<std::complex<double>, 3> measurement_vector(Side side, int setting,
                                                       int outcome,
                                                       const QutritModel& model);

/// Behavior of the noisy state under the model's settings:
/// P = lambda * |<chi_ab|psi>|^2 / N(x,y) + (1 - lambda)/9, dims (2,2,3,3).
/// N(x,y) renormalizes each pure-state block (analytically 1; recomputed).
BehaviorTable born_behavior(const QutritModel& model);

/// Convenience overload with default settings.
BehaviorTable born_behavior(double gamma, double lambda);

}  // namespace nonlocal
