#pragma once

#include <span>
#include <vector>

#include "nonlocal/behavior.hpp"

namespace nonlocal {

enum class BellFunctional { I2, I3 };

struct BellValue {
  double value = 0.0;
  BellFunctional functional = BellFunctional::I3;
  double local_bound = 2.0;
};

/// Signed CHSH functional E11 + E12 + E21 - E22 on dims (2,2,2,2), where
/// E(x,y) = P(a=b|xy) - P(a!=b|xy). The PR box scores +4.
double i2_signed(const BehaviorTable& p);

/// |i2_signed|. Throws ShapeMismatch unless dims are (2,2,2,2).
BellValue i2(const BehaviorTable& p);

/// Signed CGLMP functional for d=3 on dims (2,2,3,3):
///   P(A1=B1) + P(B1=A2+1) + P(A2=B2) + P(B2=A1)
/// - P(A1=B1-1) - P(B1=A2) - P(A2=B2-1) - P(B2=A1-1),
/// outcome relations mod 3.
double i3_signed(const BehaviorTable& p);

/// |i3_signed|. Throws ShapeMismatch unless dims are (2,2,3,3).
/// The local bound applies to the signed form: local strategies satisfy
/// i3_signed <= 2, but anti-correlating strategies reach -4, so the
/// magnitude alone does not certify non-locality.
BellValue i3(const BehaviorTable& p);

/// I3 of the pure-state model at the standard settings, computed on demand.
double i3_theory(double gamma);

struct FitPoint {
  double gamma = 0.0;
  double measured_i3 = 0.0;
  double weight = 1.0;
};

struct MixingFit {
  double lambda_hat = 0.0;
  double stderr_value = 0.0;
  bool clipped = false;  // true if the raw estimate fell outside [0, 1]
  int n_points = 0;
};

/// Weighted least-squares fit of measured_I3 ~ lambda * i3_theory(gamma)
/// through the origin. Weights are treated as inverse variances;
/// stderr = 1/sqrt(sum w T^2). Estimates outside [0,1] are clipped and
/// flagged. Throws EmptyInput and DegenerateFit.
MixingFit fit_mixing_parameter(std::span<const FitPoint> points);

}  // namespace nonlocal
