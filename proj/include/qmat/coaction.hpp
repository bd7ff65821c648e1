#pragma once

#include <string>
#include <vector>

#include "qmat/catalog.hpp"

namespace qmat {

// Composite of a symmetric-algebra representation with one SU(2) leg
// through the matrix coproduct:
//   out(z_jk) = base(z11) (x) leg(t_1j t_1k) + q base(z21) (x) leg(t_1j t_2k)
//             + base(z21) (x) leg(t_2j t_1k) + base(z22) (x) leg(t_2j t_2k).
// Leg entry products are formed by operator composition. A counit leg
// collapses exactly: no tensor factor is appended and no floating
// arithmetic touches the base operators.
RepInstance coact_sym(const RepInstance& base, const Su2Rep& leg);

// Composite of a full-algebra representation with two SU(2) legs:
//   out(z_j^i) = sum_{a,b} base(z_b^a) (x) leg_a(t_bj) (x) leg_b(t_ai).
// Counit legs collapse exactly, factor by factor.
RepInstance coact_mat2(const RepInstance& base, const Su2Rep& leg_a,
                       const Su2Rep& leg_b);

// Diagonal torus action by generator phases. The symmetric algebra takes
// two angles and scales z_jk by e^{i(th_j + th_k)}; the full algebra takes
// four angles (th_1, th_2, ps_1, ps_2) and scales z_j^i by e^{i(th_i -
// ps_j)}. Every defining relation is homogeneous under these phases, so
// residual suites are invariant under any twist.
RepInstance torus_twist(const RepInstance& rep,
                        const std::vector<double>& angles);

std::string su2_kind_name(Su2Kind kind);
Su2Kind su2_kind_from_name(const std::string& name);
std::string simplest_name(SimplestKind kind);
SimplestKind simplest_from_name(const std::string& name);

// Declarative description of one composite: the simplest base, the leg
// kinds (one for the symmetric algebra, two for the full one), the
// deformation parameter, per-factor truncations (base size first, then one
// entry per shift leg), and optional twist angles applied to the finished
// composite.
struct CompositeSpec {
  Algebra algebra = Algebra::sym2;
  SimplestKind base = SimplestKind::f0;
  std::vector<Su2Kind> legs;
  double q = 0.5;
  std::vector<int> dims;
  std::vector<double> angles;

  void validate() const;
  std::string to_json() const;
  static CompositeSpec from_json(const std::string& text);
};

RepInstance build_composite(const CompositeSpec& spec);

}  // namespace qmat
