#include "nonlocal/quantum.hpp"

#include <cmath>
#include <string>

namespace nonlocal {

namespace {
const double kPi = std::acos(-1.0);
}

void QutritModel::validate() const {
  if (gamma < 0.0)
    throw InvalidParameter("QutritModel: gamma must be >= 0, got " +
                           std::to_string(gamma));
  if (lambda < 0.0 || lambda > 1.0)
    throw InvalidParameter("QutritModel: lambda must be in [0,1], got " +
                           std::to_string(lambda));
}

StateVector qutrit_state(double gamma) {
  if (gamma < 0.0)
    throw InvalidParameter("qutrit_state: gamma must be >= 0, got " +
                           std::to_string(gamma));
  const double norm = std::sqrt(2.0 + gamma * gamma);
  StateVector psi;
  psi.amps[0 * 3 + 0] = 1.0 / norm;
  psi.amps[1 * 3 + 1] = gamma / norm;
  psi.amps[2 * 3 + 2] = 1.0 / norm;
  return psi;
}

std::array<std::complex<double>, 3> measurement_vector(Side side, int setting,
                                                       int outcome,
                                                       const QutritModel& model) {
  if (setting < 1 || setting > 2)
    throw InvalidParameter("measurement_vector: setting must be 1 or 2");
  if (outcome < 0 || outcome > 2)
    throw InvalidParameter("measurement_vector: outcome must be 0..2");
  const double offset = (side == Side::A) ? model.alpha[setting - 1]
                                          : model.beta[setting - 1];
  const double sign = (side == Side::A) ? 1.0 : -1.0;
  std::array<std::complex<double>, 3> v;
  for (int j = 0; j < 3; ++j) {
    double phase = 2.0 * kPi / 3.0 * j * (sign * outcome + offset);
    v[j] = std::polar(1.0 / std::sqrt(3.0), phase);
  }
  return v;
}

BehaviorTable born_behavior(const QutritModel& model) {
  model.validate();
  const Dims dims{2, 2, 3, 3};
  const StateVector psi = qutrit_state(model.gamma);

  std::vector<double> e(dims.entries(), 0.0);
  for (int x = 1; x <= 2; ++x)
    for (int y = 1; y <= 2; ++y) {
      double raw[3][3];
      double block = 0.0;
      for (int a = 0; a < 3; ++a) {
        auto va = measurement_vector(Side::A, x, a, model);
        for (int b = 0; b < 3; ++b) {
          auto vb = measurement_vector(Side::B, y, b, model);
          std::complex<double> amp = 0.0;
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
              amp += std::conj(va[j]) * std::conj(vb[k]) * psi.amps[j * 3 + k];
          raw[a][b] = std::norm(amp);
          block += raw[a][b];
        }
      }
      // Bases are complete, so block == 1 analytically; renormalizing keeps
      // that a live assertion rather than an assumption.
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          e[dims.index(x - 1, y - 1, a, b)] =
              model.lambda * raw[a][b] / block + (1.0 - model.lambda) / 9.0;
    }
  return BehaviorTable(dims, std::move(e));
}

BehaviorTable born_behavior(double gamma, double lambda) {
  QutritModel m;
  m.gamma = gamma;
  m.lambda = lambda;
  return born_behavior(m);
}

}  // namespace nonlocal
