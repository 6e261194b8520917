#pragma once

#include <map>
#include <mutex>

#include "logtr/curve.hpp"
#include "logtr/polesum.hpp"

namespace logtr {

struct EngineConfig {
  long h_max = 4;
  long n_max = 4;
  long truncation_override = 0;  // 0 = use the curve default
  int max_retries = 4;           // order-doubling retries, env LOGTR_MAX_RETRIES
};

EngineConfig engine_config_from_env(EngineConfig base = {});

// --- slot expansion helpers (shared with the identity checkers) ---

// series of 1/(z - pole)^order with z = a + pos(t); pos must have positive
// valuation (pass the identity for a plain expansion around a)
Series factor_series(const Factor& f, const Rat& a, const Series& pos);

// expansion of slot `slot` of W at z = a + pos(t); each entry maps the factors
// of the remaining slots (in order) to the coefficient series. jacobian
// multiplies by pos'(t) (set for pulled-back slots, the dz of that slot).
std::map<Term, Series> expand_slot(const PoleSum& w, long slot, const Rat& a, const Series& pos,
                                   bool jacobian);

// both first slots evaluated (z, sigma(z))-style; pos2 always carries the
// jacobian of its substitution
std::map<Term, Series> expand_two_slots(const PoleSum& w, const Rat& a, const Series& pos1,
                                        const Series& pos2, bool jacobian2);

// full evaluation of an arity-1 sum along z = a + pos(t)
Series expand_full(const PoleSum& w, const Rat& a, const Series& pos, bool jacobian);

// expansion of slot 0 of omega_{hh,nn} at a (plain expansion, no pullback),
// with omega_{0,2} = B special-cased into generated pole factors at a
std::map<Term, Series> expand_omega_or_bergman(const class Engine& e, long hh, long nn,
                                               const Rat& a, long T);

// The LogTR engine: computes omega_{h,n} by the residue recursion with the
// vital-singularity term, caching exact pole sums per (h, n).
class Engine {
public:
  Engine(const Curve& curve, EngineConfig cfg = engine_config_from_env());

  const Curve& curve() const { return c_; }
  const EngineConfig& config() const { return cfg_; }

  // the correlator for 2h + n - 2 > 0
  const PoleSum& omega(long h, long n) const;

  // omega_{h,1} with the vital part computed by the derivative form instead
  // of the residue form; must agree with omega(h, 1)
  PoleSum omega_derivative_route(long h) const;

  PoleSum vital_term_residue(long h, size_t s) const;     // Def-2.5-style
  PoleSum vital_term_derivative(long h, size_t s) const;  // Def-2.7-style

  // reconstruction of omega_{h,n} from its residues against int B at the
  // ramification (and optionally vital) points
  PoleSum lpp_projection(long h, long n, bool include_vital) const;
  // the single-point projection at vital point s (arity 1)
  PoleSum lpp_projection_at_vital(long h, size_t s) const;

  long working_truncation(long h, long n) const;

  // test hook: corrupt one cached coefficient (exercises failure paths)
  void corrupt_cache(long h, long n);

private:
  PoleSum compute(long h, long n) const;
  PoleSum compute_at(long h, long n, long T) const;
  PoleSum vital_term_residue_at(long h, size_t s, long T) const;

  const Curve& c_;
  EngineConfig cfg_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<long, long>, PoleSum> cache_;
};

}  // namespace logtr
