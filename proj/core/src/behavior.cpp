#include "nonlocal/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nonlocal {

void Dims::validate() const {
  if (nx < 1 || ny < 1)
    throw InvalidParameter("Dims: setting counts must be >= 1, got nx=" +
                           std::to_string(nx) + " ny=" + std::to_string(ny));
  if (na < 2 || nb < 2)
    throw InvalidParameter("Dims: outcome counts must be >= 2, got na=" +
                           std::to_string(na) + " nb=" + std::to_string(nb));
}

BehaviorTable::BehaviorTable(Dims dims, std::vector<double> entries)
    : dims_(dims), entries_(std::move(entries)) {
  dims_.validate();
  if (static_cast<int>(entries_.size()) != dims_.entries())
    throw ShapeMismatch("BehaviorTable: expected " +
                        std::to_string(dims_.entries()) + " entries, got " +
                        std::to_string(entries_.size()));
  for (double& v : entries_) {
    if (v < 0.0) {
      if (v < -1e-9)
        throw InvalidParameter("BehaviorTable: negative entry " +
                               std::to_string(v));
      v = 0.0;  // numerical dust from LP solutions
    }
  }
  for (int x = 0; x < dims_.nx; ++x)
    for (int y = 0; y < dims_.ny; ++y) {
      double s = 0.0;
      for (int a = 0; a < dims_.na; ++a)
        for (int b = 0; b < dims_.nb; ++b) s += (*this)(x, y, a, b);
      if (std::abs(s - 1.0) > 1e-9)
        throw InvalidParameter("BehaviorTable: block (" + std::to_string(x + 1) +
                               "," + std::to_string(y + 1) + ") sums to " +
                               std::to_string(s));
    }
}

BehaviorTable BehaviorTable::uniform(Dims dims) {
  dims.validate();
  std::vector<double> e(dims.entries(), 1.0 / (dims.na * dims.nb));
  return BehaviorTable(dims, std::move(e));
}

BehaviorTable BehaviorTable::deterministic(Dims dims, const std::vector<int>& f,
                                           const std::vector<int>& g) {
  dims.validate();
  if (static_cast<int>(f.size()) != dims.nx ||
      static_cast<int>(g.size()) != dims.ny)
    throw ShapeMismatch("deterministic: strategy length mismatch");
  std::vector<double> e(dims.entries(), 0.0);
  for (int x = 0; x < dims.nx; ++x)
    for (int y = 0; y < dims.ny; ++y) e[dims.index(x, y, f[x], g[y])] = 1.0;
  return BehaviorTable(dims, std::move(e));
}

BehaviorTable BehaviorTable::pr_box() {
  Dims dims{2, 2, 2, 2};
  std::vector<double> e(dims.entries(), 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y)) e[dims.index(x, y, a, b)] = 0.5;
  return BehaviorTable(dims, std::move(e));
}

BehaviorTable normalize_counts(const CountsRecord& c) {
  c.dims.validate();
  const int n = c.dims.entries();
  if (static_cast<int>(c.counts.size()) != n)
    throw ShapeMismatch("normalize_counts: counts array has " +
                        std::to_string(c.counts.size()) + " entries, dims need " +
                        std::to_string(n));
  if (c.background && static_cast<int>(c.background->size()) != n)
    throw ShapeMismatch("normalize_counts: background shape differs from counts");

  std::vector<double> e(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double v = static_cast<double>(c.counts[i]);
    if (c.background) v -= (*c.background)[i];
    e[i] = std::max(v, 0.0);  // Poisson-subtraction artifacts clamp to 0
  }
  for (int x = 0; x < c.dims.nx; ++x)
    for (int y = 0; y < c.dims.ny; ++y) {
      double s = 0.0;
      for (int a = 0; a < c.dims.na; ++a)
        for (int b = 0; b < c.dims.nb; ++b) s += e[c.dims.index(x, y, a, b)];
      if (s <= 0.0)
        throw ZeroBlock("normalize_counts: block (" + std::to_string(x + 1) +
                        "," + std::to_string(y + 1) +
                        ") has zero total signal after background subtraction");
      for (int a = 0; a < c.dims.na; ++a)
        for (int b = 0; b < c.dims.nb; ++b) e[c.dims.index(x, y, a, b)] /= s;
    }
  return BehaviorTable(c.dims, std::move(e));
}

namespace {

// Total variation = half the L1 distance between two distributions.
double tv(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i] - v[i]);
  return 0.5 * s;
}

}  // namespace

double signaling_deficit(const BehaviorTable& p) {
  const Dims& d = p.dims();
  double worst = 0.0;
  // Alice's marginal must not depend on y.
  for (int x = 0; x < d.nx; ++x) {
    std::vector<std::vector<double>> marg(d.ny, std::vector<double>(d.na, 0.0));
    for (int y = 0; y < d.ny; ++y)
      for (int a = 0; a < d.na; ++a)
        for (int b = 0; b < d.nb; ++b) marg[y][a] += p(x, y, a, b);
    for (int y = 0; y < d.ny; ++y)
      for (int y2 = y + 1; y2 < d.ny; ++y2)
        worst = std::max(worst, tv(marg[y], marg[y2]));
  }
  // Bob's marginal must not depend on x.
  for (int y = 0; y < d.ny; ++y) {
    std::vector<std::vector<double>> marg(d.nx, std::vector<double>(d.nb, 0.0));
    for (int x = 0; x < d.nx; ++x)
      for (int a = 0; a < d.na; ++a)
        for (int b = 0; b < d.nb; ++b) marg[x][b] += p(x, y, a, b);
    for (int x = 0; x < d.nx; ++x)
      for (int x2 = x + 1; x2 < d.nx; ++x2)
        worst = std::max(worst, tv(marg[x], marg[x2]));
  }
  return worst;
}

double l1_distance(const BehaviorTable& p, const BehaviorTable& q) {
  if (!(p.dims() == q.dims()))
    throw ShapeMismatch("l1_distance: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < p.dims().entries(); ++i)
    s += std::abs(p.entries()[i] - q.entries()[i]);
  return s;
}

BehaviorTable mix(const BehaviorTable& p, const BehaviorTable& q, double mu) {
  if (!(p.dims() == q.dims())) throw ShapeMismatch("mix: dimension mismatch");
  if (mu < 0.0 || mu > 1.0)
    throw InvalidParameter("mix: mu must be in [0,1], got " + std::to_string(mu));
  std::vector<double> e(p.dims().entries());
  for (int i = 0; i < p.dims().entries(); ++i)
    e[i] = mu * p.entries()[i] + (1.0 - mu) * q.entries()[i];
  return BehaviorTable(p.dims(), std::move(e));
}

}  // namespace nonlocal
