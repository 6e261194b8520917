#pragma once

#include "logtr/correlator.hpp"
#include "logtr/decimal.hpp"
#include "logtr/logvalue.hpp"

namespace logtr {

struct CheckReport {
  std::string name;
  std::string params;
  bool pass = false;
  std::string witness;  // exact difference rendered when failing
  std::string str() const {
    return std::string(pass ? "pass" : "FAIL") + "  " + name + (params.empty() ? "" : " " + params) +
           (pass || witness.empty() ? "" : "  witness: " + witness);
  }
};

// Verifiers for the dilaton equations, loop equations, projection properties
// and the free energies, all running over one engine's cache.
class Checker {
public:
  explicit Checker(const Engine& engine) : e_(engine), c_(engine.curve()) {}

  // dilaton equation for omega_{h,k}, both formulations
  CheckReport dilaton(long h, long k) const;
  // linear / quadratic loop equations at every ramification point
  CheckReport linear_loop(long h, long m) const;
  CheckReport quadratic_loop(long h, long m) const;
  // projection property; for n >= 2 also checks the vital points drop out
  CheckReport projection(long h, long n) const;
  // the three representations of the vital-singularity projection agree
  CheckReport vital_loop(long h) const;
  // residue and derivative vital routes give the same omega_{h,1}
  CheckReport route_equivalence(long h) const;
  CheckReport symmetry(long h, long n) const;

  // Lemma 3.1 identities at vital point s for holomorphic F (a series in
  // z - a_s), plus the Bergman-kernel specialization
  CheckReport lemma31(long h, size_t s, const Series& F) const;
  CheckReport lemma31_bergman(long h, size_t s) const;
  // the two residue identities for a one-form F regular at a
  CheckReport residue_tricks(const Rat& a, const Series& F_form, long k) const;

  Rat free_energy(long h) const;  // h >= 2
  Rat free_energy_with_basepoint(long h, const Rat& basepoint) const;
  struct F1Result {
    LogValue value;
    bool tau_omitted = false;
  };
  F1Result free_energy_f1() const;

  // residue sum over ramification points of Phi * w-slot plus the vanishing
  // of the log-constant companions (fails the check if they survive)
  struct PhiResidues {
    PoleSum value;
    bool companions_vanish = true;
  };
  PhiResidues phi_residues(const PoleSum& w, long T) const;

private:
  const Engine& e_;
  const Curve& c_;
};

// value of y minus its log singularity at vital point s, log constants formal
LogValue y_regular_value_at(const Curve& c, size_t s);

// numeric rendering of a log combination: (real part, coefficient of i*pi)
std::pair<Dec, Rat> numeric_log_value(const LogValue& v);

// ---- closed forms of the built-in example families (independent oracle path) ----
namespace oracle {
PoleSum sw_half_omega_h1(const std::vector<Rat>& a, const std::vector<Rat>& y, long h);
Rat sw_half_f(const std::vector<Rat>& a, const std::vector<Rat>& y, long h);
LogValue sw_half_f1(const std::vector<Rat>& a, const std::vector<Rat>& y, const Rat& lambda);
PoleSum strip_omega_h1(const std::vector<Rat>& a, const std::vector<Rat>& y, long h);
Rat strip_f(const std::vector<Rat>& a, const std::vector<Rat>& y, long h);
LogValue strip_f1(const std::vector<Rat>& a, const std::vector<Rat>& y);
}  // namespace oracle

}  // namespace logtr
