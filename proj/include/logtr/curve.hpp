#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logtr/poly.hpp"
#include "logtr/rat.hpp"
#include "logtr/series.hpp"

namespace logtr {

// weight * [log(z - point) - log(norm)]; norm defaults to 1 and only shifts
// values (never differentials), so it matters for F_1 alone.
struct LogTerm {
  Rat point;
  Rat weight;
  Rat norm{1};
};

struct CurveSpec {
  RatFun x_rat, y_rat;
  std::vector<LogTerm> x_logs, y_logs;
  std::optional<Rat> basepoint;
  std::vector<Rat> declared_ramification;
  std::optional<long> truncation_hint;
  std::string variable{"z"};
};

struct AdmissCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct AdmissReport {
  std::vector<AdmissCheck> checks;
  bool admissible = false;
  bool unsupported = false;  // a check failed for lack of support, not inadmissibility
  std::string str() const;
};

// A point of P^1: finite rational z or infinity.
struct SpherePt {
  bool infinite = false;
  Rat z;
  static SpherePt inf() { return SpherePt{true, Rat(0)}; }
  static SpherePt at(Rat v) { return SpherePt{false, std::move(v)}; }
  friend bool operator==(const SpherePt& a, const SpherePt& b) {
    return a.infinite == b.infinite && (a.infinite || a.z == b.z);
  }
  friend bool operator<(const SpherePt& a, const SpherePt& b) {
    if (a.infinite != b.infinite) return b.infinite;
    return !a.infinite && a.z < b.z;
  }
  std::string str() const { return infinite ? "inf" : z.str(); }
};

struct RamPoint {
  Rat p;
  Rat x_lead;  // x - x(p) = x_lead t^2 + ...
  // dy/dzeta at p; empty when x_lead has no rational square root (F_1 needs
  // it, the recursion itself does not)
  std::optional<Rat> y_prime;
};

struct VitalPoint {
  Rat a;
  Rat weight;   // y_a = Res dy
  Rat x_prime;  // x'(a), nonzero
  Rat norm;
};

enum class LocalCoordKind { XShift, InverseRoot, ExpOverResidue };

struct TimesData {
  SpherePt location;
  LocalCoordKind kind;
  long local_degree;        // d_a (InverseRoot), otherwise 1 resp. 0 by convention
  long order;               // R_a
  Rat monodromy;            // t~_{a,0}
  std::vector<Rat> irregular;  // t~_{a,k}, k = 1..R_a
  bool experimental = false;   // ExpOverResidue normalization flag
};

class Curve {
public:
  static AdmissReport validate(const CurveSpec& spec);
  static Curve analyze(const CurveSpec& spec);  // throws Error when not admissible

  const CurveSpec& spec() const { return spec_; }
  const RatFun& dx() const { return dx_; }
  const RatFun& dy() const { return dy_; }
  const std::vector<RamPoint>& ram() const { return ram_; }
  const std::vector<VitalPoint>& vital() const { return vital_; }
  const Rat& basepoint() const { return basepoint_; }
  const std::string& var() const { return spec_.variable; }

  // --- local expansions in t = z - a (formal log constants dropped) ---
  Series x_minus_x_at(const Rat& a, long T) const;
  Series xprime_at(const Rat& a, long T) const;   // series of dx/dz
  Series dyfun_at(const Rat& a, long T) const;    // series of dy/dz (Laurent at y-poles)
  // local antiderivative of dy: exact rational part, log constants dropped;
  // requires dy regular at a (used at ramification points)
  Series y_loc_at(const Rat& a, long T) const;

  // local involution sigma at ram point i, as a series in t (sigma(p+t) - p)
  Series sigma_at(size_t i, long T) const;
  Series zeta_at(size_t i, long T) const;  // sqrt(x - x(p_i))

  // --- global one-form helpers ---
  // y~ dx = y_rat dx: the log-subtracted one-form of the decomposition
  RatFun ytilde_dx() const;
  // singular points of y~ dx (finite den roots and possibly infinity)
  std::vector<SpherePt> ytilde_dx_poles() const;
  // series of a one-form's coefficient in the local coordinate at p
  // (at infinity: in w = 1/z, including the dz = -dw/w^2 factor)
  Series form_series(const RatFun& coeff, const SpherePt& p, const std::string& tag, long T) const;
  // canonical local coordinate z_a at a singular point of y~ dx
  std::pair<Series, LocalCoordKind> local_coordinate(const SpherePt& a, long T) const;

  TimesData extract_times(const SpherePt& a, long extra_order = 0) const;
  std::vector<TimesData> all_times() const;
  // B_{a,k} and B_{a,0,o'} as rational one-form coefficients
  RatFun b_form(const SpherePt& a, long k, const Rat& oprime) const;
  // genus-0 global decomposition: reassemble y~ dx from the extracted
  // times; returns (lhs, rhs) for exact comparison
  std::pair<RatFun, RatFun> decomposition_roundtrip(const Rat& oprime) const;

  long default_truncation(long h, long n) const;

private:
  Curve() = default;
  CurveSpec spec_;
  RatFun dx_, dy_;
  std::vector<RamPoint> ram_;
  std::vector<VitalPoint> vital_;
  Rat basepoint_;
};

// Built-in example curves.
CurveSpec sw_half_curve(const std::vector<Rat>& a, const std::vector<Rat>& y, const Rat& lambda);
CurveSpec strip_curve(const std::vector<Rat>& a, const std::vector<Rat>& y);
CurveSpec airy_curve();
CurveSpec mixed_curve();

}  // namespace logtr
