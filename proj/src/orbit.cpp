#include "qmat/orbit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qmat {

namespace {

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("q must lie in (0, 1)");
}

void check_window(int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
}

}  // namespace

std::string orbit_class_name(OrbitClass c) {
  switch (c) {
    case OrbitClass::Omega00: return "Omega00";
    case OrbitClass::Omega10: return "Omega10";
    case OrbitClass::Omega01: return "Omega01";
    case OrbitClass::Inadmissible: return "Inadmissible";
  }
  throw std::logic_error("unreachable");
}

OrbitPoint step(const OrbitPoint& p, int k, StepDirection dir, double q) {
  check_q(q);
  if (k != 1 && k != 2)
    throw std::invalid_argument("step index must be 1 or 2");
  const double q2 = q * q, q4 = q2 * q2;
  if (k == 1) {
    if (dir == StepDirection::fwd)
      return {q2 * p.x1 + (1.0 - q2) * (1.0 - p.x2), p.x2};
    return {(p.x1 - (1.0 - q2) * (1.0 - p.x2)) / q2, p.x2};
  }
  if (dir == StepDirection::fwd)
    return {q4 * p.x1, q4 * p.x2 + 1.0 - q4};
  return {p.x1 / q4, (p.x2 - (1.0 - q4)) / q4};
}

OrbitPoint orbit_point(const OrbitPoint& seed, int m, int n, double q) {
  check_q(q);
  const double qm = std::pow(q, 2 * m), qn = std::pow(q, 4 * n);
  // The height form 1 - q^{4n}(1 - x2) is exact at the identity and loses
  // nothing near the accumulation height x2 = 1.
  return {qm * qn * seed.x1 - qn * (1.0 - qm) * (seed.x2 - 1.0),
          1.0 - qn * (1.0 - seed.x2)};
}

Classification classify_seed(const OrbitPoint& seed, double q, int window,
                             double tol) {
  check_q(q);
  check_window(window);

  Classification out;

  // Height stage: 1 - x2 must be 0 (x2 = 1) or q^{4n}. The lattice
  // accumulates at x2 = 1, so any height below tol is unresolvable and
  // belongs to the (0, 1) fixed point; every deep-lattice alternative
  // would demand x1 below tol as well, so no admissible point is lost.
  const double h = 1.0 - seed.x2;
  if (std::abs(h) <= tol) {
    out.distance = std::max(std::abs(h), std::abs(seed.x1));
    if (std::abs(seed.x1) <= tol) out.cls = OrbitClass::Omega01;
    return out;
  }

  double best = std::abs(h - 1.0);
  int n = 0;
  for (int k = 1; k <= window; ++k) {
    const double d = std::abs(h - std::pow(q, 4 * k));
    if (d < best) {
      best = d;
      n = k;
    }
  }
  if (best > tol) {
    out.distance = best;
    return out;
  }

  // Width stage at height q^{4n}: the F1 fixed point x1 = 1 - x2 first,
  // then the terminating family x1 = q^{4n}(1 - q^{2m}).
  const double s = std::pow(q, 4 * n);
  const double dfix = std::abs(seed.x1 - s);
  if (dfix <= tol) {
    out.cls = OrbitClass::Omega10;
    out.n = n;
    out.distance = std::max(best, dfix);
    return out;
  }
  double bestm = dfix;
  int m = -1;
  for (int k = 0; k <= window; ++k) {
    const double d = std::abs(seed.x1 - s * (1.0 - std::pow(q, 2 * k)));
    if (d < bestm) {
      bestm = d;
      m = k;
    }
  }
  out.distance = std::max(best, bestm);
  if (m >= 0 && bestm <= tol) {
    out.cls = OrbitClass::Omega00;
    out.m = m;
    out.n = n;
  }
  return out;
}

Classification classify_seed_exact(const ExactOrbitPoint& seed, int window) {
  check_window(window);

  Classification out;
  const LaurentScalar one(1);
  const LaurentScalar h = one - seed.x2;

  if (h.is_zero()) {
    if (seed.x1.is_zero()) out.cls = OrbitClass::Omega01;
    return out;
  }

  int n = -1;
  for (int k = 0; k <= window; ++k)
    if (h == LaurentScalar::q_power(4 * k)) {
      n = k;
      break;
    }
  if (n < 0) return out;

  const LaurentScalar s = LaurentScalar::q_power(4 * n);
  if (seed.x1 == s) {
    out.cls = OrbitClass::Omega10;
    out.n = n;
    return out;
  }
  for (int k = 0; k <= window; ++k)
    if (seed.x1 == s * (one - LaurentScalar::q_power(2 * k))) {
      out.cls = OrbitClass::Omega00;
      out.m = k;
      out.n = n;
      return out;
    }
  return out;
}

SpectrumMatch match_spectrum(
    const std::vector<std::pair<double, double>>& points, double q,
    int window, double tol) {
  if (points.empty())
    throw std::invalid_argument("match_spectrum needs at least one point");

  SpectrumMatch out;
  int counts[3] = {0, 0, 0};
  bool failed = false;
  for (const auto& [x1, x2] : points) {
    const Classification c = classify_seed({x1, x2}, q, window, tol);
    out.residual = std::max(out.residual, c.distance);
    if (c.cls == OrbitClass::Inadmissible)
      failed = true;
    else
      ++counts[static_cast<int>(c.cls)];
  }
  if (failed) return out;

  int argmax = 0;
  for (int k = 1; k < 3; ++k)
    if (counts[k] > counts[argmax]) argmax = k;
  out.cls = static_cast<OrbitClass>(argmax);
  return out;
}

std::string orbit_sweep_csv(const std::vector<OrbitPoint>& seeds, double q,
                            int window, double tol) {
  std::ostringstream os;
  os.precision(17);
  os << "x1,x2,class,m,n\n";
  for (const OrbitPoint& seed : seeds) {
    const Classification c = classify_seed(seed, q, window, tol);
    os << seed.x1 << ',' << seed.x2 << ',' << orbit_class_name(c.cls) << ','
       << c.m << ',' << c.n << '\n';
  }
  return os.str();
}

}  // namespace qmat
