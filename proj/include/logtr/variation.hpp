#pragma once

#include <functional>

#include "logtr/identities.hpp"

namespace logtr {

enum class DeformKind { IrregularTime, MonodromyPair, VitalPosition };

struct DeformationSpec {
  DeformKind kind;
  SpherePt a, b;         // singular points for time/monodromy deformations
  long k = 1;            // irregular-time index
  size_t vital_index = 0;
  std::string str() const;
};

// The deformed curve at magnitude t. IrregularTime adds t * B_{a,k} to y dx
// (at fixed x), MonodromyPair adds t * (dq/(q-a) - dq/(q-b)), VitalPosition
// moves the log point a_r by t.
CurveSpec deform_curve(const Curve& base, const DeformationSpec& d, const Rat& t);

// A finite-t family is usable for finite differences only if it keeps the
// recursion structure: same ramification points with dy regular there, and
// the same vital set (shifted for VitalPosition). Throws
// DeformationBreaksStructure / CollisionOfSpecialPoints otherwise.
void validate_deformation(const Curve& base, const DeformationSpec& d, const Rat& probe);
bool deformation_family_ok(const Curve& base, const DeformationSpec& d);

// ---- exact residue right-hand sides ----

// standard-time correlator variation: integral of Lambda against omega_{h,m+1}
PoleSum variation_rhs_standard(const Engine& e, const DeformationSpec& d, long h, long m);
// vital-position correlator variation, per unit displacement of vital point r
PoleSum variation_rhs_vital(const Engine& e, size_t r, long h, long n);
// free-energy variation under standard times (h >= 2, and h = 1 on curves
// without ramification)
Rat variation_free_energy_standard(const Engine& e, const DeformationSpec& d, long h);
// free-energy variation under a vital move: both formulations (must agree)
std::pair<Rat, Rat> variation_free_energy_vital(const Engine& e, size_t r, long h);
// F_1 variation under a vital move
Rat variation_f1_vital(const Engine& e, size_t r);

// ---- finite-difference oracle ----

struct FDOptions {
  std::vector<Rat> eps_schedule = {Rat(1, 1000), Rat(1, 10000), Rat(1, 100000)};
  Rat tolerance = Rat(1, 10000000000L);  // 1e-10 relative
  EngineConfig engine;
};

struct FDResult {
  std::vector<Rat> central_diffs;  // one per epsilon
  Rat value;                       // Richardson-extrapolated
  Rat error_estimate;
};

struct FDResultNumeric {
  Dec value;
  Dec error_estimate;
};

using ScalarTarget = std::function<Rat(const Engine&)>;
using LogTarget = std::function<LogValue(const Engine&)>;

// Central differences in exact rational arithmetic followed by Richardson
// (Neville in eps^2). InconclusiveFD when the raw increments fail to
// contract by at least 4x per refinement.
FDResult fd_derivative(const Curve& base, const DeformationSpec& d, const ScalarTarget& target,
                       const FDOptions& opt);
// Log-combination targets: the i*pi parts must cancel between +eps and -eps;
// the real parts go through the same tableau in high-precision decimals.
FDResultNumeric fd_derivative_log(const Curve& base, const DeformationSpec& d,
                                  const LogTarget& target, const FDOptions& opt);

// |fd - rhs| <= tol * max(1, |rhs|), compared in decimals
bool fd_matches(const Rat& fd, const Rat& rhs, const Rat& tol);
bool fd_matches(const Dec& fd, const Rat& rhs, const Rat& tol);

// sample points away from every pole of the curve's correlators
std::vector<Rat> sample_points(const Curve& c, long count);

// the ramification-plus-vital right-hand side of the dilaton equation, as a
// pole sum (used by the variational compatibility cross-check)
PoleSum dilaton_rhs_main(const Engine& e, long h, long k);

// one verdict: RHS residue formula vs FD for a named target
CheckReport check_variational_omega(const Curve& base, const DeformationSpec& d, long h, long m,
                                    const FDOptions& opt);
CheckReport check_variational_free_energy(const Curve& base, const DeformationSpec& d, long h,
                                          const FDOptions& opt);
CheckReport check_variational_f1(const Curve& base, const DeformationSpec& d, const FDOptions& opt);
// FD applied to both sides of the dilaton equation
CheckReport check_dilaton_variation_compat(const Curve& base, const DeformationSpec& d, long h,
                                           long k, const FDOptions& opt);

// deformations on this curve usable for FD checks
std::vector<DeformationSpec> usable_deformations(const Curve& c);

}  // namespace logtr
