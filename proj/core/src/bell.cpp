#include "nonlocal/bell.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nonlocal/quantum.hpp"

namespace nonlocal {

namespace {

void require_dims(const BehaviorTable& p, Dims want, const char* who) {
  if (!(p.dims() == want))
    throw ShapeMismatch(std::string(who) + ": requires dims (" +
                        std::to_string(want.nx) + "," + std::to_string(want.ny) +
                        "," + std::to_string(want.na) + "," +
                        std::to_string(want.nb) + ")");
}

// P(A_x = B_y + k mod na) for 0-based settings.
double equal_shift_prob(const BehaviorTable& p, int x, int y, int k) {
  const Dims& d = p.dims();
  double s = 0.0;
  for (int b = 0; b < d.nb; ++b) s += p(x, y, (b + k) % d.na, b);
  return s;
}

}  // namespace

double i2_signed(const BehaviorTable& p) {
  require_dims(p, Dims{2, 2, 2, 2}, "i2");
  auto corr = [&](int x, int y) {
    double e = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) e += (a == b ? 1.0 : -1.0) * p(x, y, a, b);
    return e;
  };
  return corr(0, 0) + corr(0, 1) + corr(1, 0) - corr(1, 1);
}

BellValue i2(const BehaviorTable& p) {
  return BellValue{std::abs(i2_signed(p)), BellFunctional::I2, 2.0};
}

double i3_signed(const BehaviorTable& p) {
  require_dims(p, Dims{2, 2, 3, 3}, "i3");
  // P(A1=B1) + P(B1=A2+1) + P(A2=B2) + P(B2=A1)
  // - P(A1=B1-1) - P(B1=A2) - P(A2=B2-1) - P(B2=A1-1), all mod 3.
  return equal_shift_prob(p, 0, 0, 0) + equal_shift_prob(p, 1, 0, 2) +
         equal_shift_prob(p, 1, 1, 0) + equal_shift_prob(p, 0, 1, 0) -
         equal_shift_prob(p, 0, 0, 2) - equal_shift_prob(p, 1, 0, 0) -
         equal_shift_prob(p, 1, 1, 2) - equal_shift_prob(p, 0, 1, 1);
}

BellValue i3(const BehaviorTable& p) {
  return BellValue{std::abs(i3_signed(p)), BellFunctional::I3, 2.0};
}

double i3_theory(double gamma) {
  return i3(born_behavior(gamma, 1.0)).value;
}

MixingFit fit_mixing_parameter(std::span<const FitPoint> points) {
  if (points.empty()) throw EmptyInput("fit_mixing_parameter: no points");
  double swty = 0.0, swtt = 0.0;
  for (const FitPoint& pt : points) {
    if (pt.weight <= 0.0)
      throw InvalidParameter("fit_mixing_parameter: weights must be > 0");
    const double t = i3_theory(pt.gamma);
    swty += pt.weight * t * pt.measured_i3;
    swtt += pt.weight * t * t;
  }
  if (swtt <= 0.0)
    throw DegenerateFit("fit_mixing_parameter: all theory values vanish");

  MixingFit fit;
  fit.n_points = static_cast<int>(points.size());
  fit.lambda_hat = swty / swtt;
  fit.stderr_value = std::sqrt(1.0 / swtt);
  if (fit.lambda_hat < 0.0 || fit.lambda_hat > 1.0) {
    fit.clipped = true;
    fit.lambda_hat = std::clamp(fit.lambda_hat, 0.0, 1.0);
  }
  return fit;
}

}  // namespace nonlocal
