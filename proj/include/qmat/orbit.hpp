#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmat/laurent.hpp"

namespace qmat {

// Joint spectral point of (z21 z21*, z22 z22*).
struct OrbitPoint {
  double x1 = 0.0;
  double x2 = 0.0;
};

// The three spectral orbits realized by bounded representations, plus the
// verdict for everything else.
enum class OrbitClass { Omega00, Omega10, Omega01, Inadmissible };
std::string orbit_class_name(OrbitClass c);

enum class StepDirection { fwd, inv };

// One application of the commuting plane maps
//   F1(x1, x2) = (q^2 x1 + (1 - q^2)(1 - x2), x2)
//   F2(x1, x2) = (q^4 x1, q^4 x2 + 1 - q^4)
// or of their exact inverses. k picks the map.
OrbitPoint step(const OrbitPoint& p, int k, StepDirection dir, double q);

// Closed form of the (m, n) lattice point of the orbit through seed; agrees
// with m forward F1 steps followed by n forward F2 steps (negative values
// walk the inverses).
OrbitPoint orbit_point(const OrbitPoint& seed, int m, int n, double q);

struct Classification {
  OrbitClass cls = OrbitClass::Inadmissible;
  int m = -1;  // backward F1 termination index; -1 when not defined
  int n = -1;  // backward F2 termination index; -1 when not defined
  double distance = 0.0;  // worst set-membership distance behind the verdict
};

// Backward-termination test: bounded nonnegative spectra force the backward
// F2 chain of x2 to reach 0 exactly (x2 = 1 - q^{4n}) or to sit at x2 = 1,
// and, at height 1 - x2 = q^{4n}, the backward F1 chain of x1 to reach 0
// exactly (x1 = q^{4n}(1 - q^{2m})) or to sit at the F1 fixed point
// x1 = 1 - x2. The verdicts, in precedence order: Omega01 for (0, 1),
// Omega10 for the fixed-point family, Omega00 for the terminating family,
// Inadmissible otherwise. Membership is tested to tol against exponents up
// to window.
Classification classify_seed(const OrbitPoint& seed, double q,
                             int window = 20, double tol = 1e-9);

// Exact twin of classify_seed: coordinates are Laurent expressions in q and
// membership becomes polynomial identity, one verdict for every q in (0,1).
struct ExactOrbitPoint {
  LaurentScalar x1, x2;
};
Classification classify_seed_exact(const ExactOrbitPoint& seed,
                                   int window = 20);

struct SpectrumMatch {
  OrbitClass cls = OrbitClass::Inadmissible;
  double residual = 0.0;  // max membership distance over all points
};

// Classifies every joint-spectrum point and returns the majority class,
// or Inadmissible as soon as any point lies off the admissible sets.
// Throws on empty input.
SpectrumMatch match_spectrum(
    const std::vector<std::pair<double, double>>& points, double q,
    int window = 20, double tol = 1e-9);

// One line per seed: "x1,x2,class,m,n" with a header row, full precision.
std::string orbit_sweep_csv(const std::vector<OrbitPoint>& seeds, double q,
                            int window = 20, double tol = 1e-9);

}  // namespace qmat
