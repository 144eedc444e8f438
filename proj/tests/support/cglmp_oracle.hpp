// Test-only brute-force oracle for the qutrit Bell setup. Kept independent
// of the library code paths it is used to check: joint amplitudes are built
// directly from the published basis phases and the eight CGLMP probability
// terms are accumulated by explicit outcome loops.
#pragma once

#include <cmath>
#include <complex>

namespace oracle {

struct Joint {
  double p[2][2][3][3];
};

// P(a,b|x,y) for the state (1, g, 1)/sqrt(2+g^2) under settings
// alpha = (0, 1/2), beta = (1/4, -1/4), mixed with white noise.
inline Joint joint_distribution(double g, double lambda) {
  const double pi = std::acos(-1.0);
  const double alpha[2] = {0.0, 0.5};
  const double beta[2] = {0.25, -0.25};
  const double norm = std::sqrt(2.0 + g * g);
  const double c[3] = {1.0 / norm, g / norm, 1.0 / norm};

  Joint out;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double raw[3][3];
      double block = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          std::complex<double> amp = 0.0;
          for (int j = 0; j < 3; ++j) {
            const double phase =
                -2.0 * pi / 3.0 * j * (a - b + alpha[x] + beta[y]);
            amp += c[j] * std::polar(1.0, phase);
          }
          raw[a][b] = std::norm(amp / 3.0);
          block += raw[a][b];
        }
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          out.p[x][y][a][b] = lambda * raw[a][b] / block + (1.0 - lambda) / 9.0;
    }
  return out;
}

// P(A_x = B_y + k mod 3), settings 1-based.
inline double shift_prob(const Joint& j, int x, int y, int k) {
  double s = 0.0;
  for (int b = 0; b < 3; ++b) s += j.p[x - 1][y - 1][(b + k) % 3][b];
  return s;
}

inline double i3_value(double g, double lambda) {
  const Joint j = joint_distribution(g, lambda);
  const double pos = shift_prob(j, 1, 1, 0) + shift_prob(j, 2, 1, 2) +
                     shift_prob(j, 2, 2, 0) + shift_prob(j, 1, 2, 0);
  const double neg = shift_prob(j, 1, 1, 2) + shift_prob(j, 2, 1, 0) +
                     shift_prob(j, 2, 2, 2) + shift_prob(j, 1, 2, 1);
  return std::abs(pos - neg);
}

// Independent algebraic route: I3 of the pure state in closed form.
inline double i3_closed_form(double g) {
  return 4.0 * (2.0 * std::sqrt(3.0) * g + 3.0) / (3.0 * g * g + 6.0);
}

}  // namespace oracle
