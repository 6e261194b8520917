#include "logtr/correlator.hpp"

#include <algorithm>
#include <cstdlib>

#include "logtr/special.hpp"

namespace logtr {

namespace {
const Factor kUnset{Rat(0), 0};

bool is_unset(const Factor& f) { return f.order == 0; }

Term merge_disjoint(const Term& a, const Term& b) {
  Term out = a;
  for (size_t i = 0; i < b.size(); ++i) {
    if (is_unset(b[i])) continue;
    if (!is_unset(out[i])) fail(Err::Internal, "overlapping slot assignment");
    out[i] = b[i];
  }
  return out;
}

}  // namespace

EngineConfig engine_config_from_env(EngineConfig base) {
  if (const char* v = std::getenv("LOGTR_MAX_RETRIES")) base.max_retries = std::atoi(v);
  return base;
}

Series factor_series(const Factor& f, const Rat& a, const Series& pos) {
  if (f.pole == a) return pos.pow_int(-f.order);
  return pos.plus_const(a - f.pole).pow_int(-f.order);
}

std::map<Term, Series> expand_slot(const PoleSum& w, long slot, const Rat& a, const Series& pos,
                                   bool jacobian) {
  std::map<Term, Series> out;
  Series jac = jacobian ? pos.derivative() : Series();
  for (auto& [t, c] : w.terms()) {
    Series ser = factor_series(t[slot], a, pos).scaled(c);
    if (jacobian) ser = ser * jac;
    Term rest;
    rest.reserve(t.size() - 1);
    for (long i = 0; i < static_cast<long>(t.size()); ++i)
      if (i != slot) rest.push_back(t[i]);
    auto it = out.find(rest);
    if (it == out.end())
      out.emplace(std::move(rest), std::move(ser));
    else
      it->second = it->second + ser;
  }
  return out;
}

std::map<Term, Series> expand_two_slots(const PoleSum& w, const Rat& a, const Series& pos1,
                                        const Series& pos2, bool jacobian2) {
  std::map<Term, Series> out;
  Series jac2 = jacobian2 ? pos2.derivative() : Series();
  for (auto& [t, c] : w.terms()) {
    Series ser = factor_series(t[0], a, pos1) * factor_series(t[1], a, pos2);
    if (jacobian2) ser = ser * jac2;
    ser = ser.scaled(c);
    Term rest(t.begin() + 2, t.end());
    auto it = out.find(rest);
    if (it == out.end())
      out.emplace(std::move(rest), std::move(ser));
    else
      it->second = it->second + ser;
  }
  return out;
}

Series expand_full(const PoleSum& w, const Rat& a, const Series& pos, bool jacobian) {
  if (w.arity() != 1) fail(Err::Internal, "expand_full needs arity 1");
  Series acc = Series::zero(pos.tag(), pos.truncation());
  for (auto& [t, c] : w.terms()) acc = acc + factor_series(t[0], a, pos).scaled(c);
  if (jacobian) acc = acc * pos.derivative();
  return acc;
}

std::map<Term, Series> expand_omega_or_bergman(const Engine& e, long hh, long nn, const Rat& a,
                                               long T) {
  const std::string& tag = e.curve().var();
  if (hh == 0 && nn == 2) {
    std::map<Term, Series> out;
    Series ident = Series::identity(tag, T);
    Series pk = Series::constant(tag, Rat(1), T);
    for (long k = 0; k <= T; ++k) {
      if (k > 0) pk = pk * ident;
      out.emplace(Term{Factor{a, k + 2}}, pk.scaled(Rat(k + 1)));
    }
    return out;
  }
  return expand_slot(e.omega(hh, nn), 0, a, Series::identity(tag, T), false);
}

Engine::Engine(const Curve& curve, EngineConfig cfg) : c_(curve), cfg_(cfg) {}

long Engine::working_truncation(long h, long n) const {
  if (cfg_.truncation_override > 0) return cfg_.truncation_override;
  return c_.default_truncation(h, n);
}

const PoleSum& Engine::omega(long h, long n) const {
  if (h < 0 || n < 1 || 2 * h + n - 2 <= 0)
    fail(Err::Internal, "omega outside the stable range");
  if (h > cfg_.h_max || n > cfg_.n_max)
    fail(Err::Unsupported, "(h,n) = (" + std::to_string(h) + "," + std::to_string(n) +
                               ") beyond configured limits");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({h, n});
    if (it != cache_.end()) return it->second;
  }
  PoleSum w = compute(h, n);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.emplace(std::make_pair(h, n), std::move(w));
  return it->second;  // first writer wins; recomputation is deterministic
}

void Engine::corrupt_cache(long h, long n) {
  const PoleSum& w = omega(h, n);
  PoleSum bad(w.arity());
  for (auto& [t, c] : w.terms()) bad.add_term(t, c * Rat(2));
  std::lock_guard<std::mutex> lock(mu_);
  cache_[{h, n}] = bad;
}

PoleSum Engine::compute(long h, long n) const {
  long T = working_truncation(h, n);
  for (int attempt = 0;; ++attempt) {
    try {
      return compute_at(h, n, T);
    } catch (const Error& e) {
      if ((e.kind() != Err::OutOfRange && e.kind() != Err::TruncationExhausted) ||
          attempt >= cfg_.max_retries)
        throw;
      T *= 2;
    }
  }
}

PoleSum Engine::compute_at(long h, long n, long T) const {
  const long m = n;
  PoleSum result(m);
  const std::string& tag = c_.var();

  for (size_t i = 0; i < c_.ram().size(); ++i) {
    const Rat& p = c_.ram()[i].p;
    Series sig = c_.sigma_at(i, T);
    Series ident = Series::identity(tag, T);
    Series yloc = c_.y_loc_at(p, T + 1);
    Series denom = (yloc.compose(sig) - yloc) * c_.xprime_at(p, T);
    Series invK = denom.pow_int(-1).scaled(Rat(1, 2));

    // bracket: map from the factors of slots z_2..z_m to series in t
    std::map<Term, Series> bracket;
    auto add_to = [&](std::map<Term, Series>& dst, const Term& key, const Series& ser) {
      auto it = dst.find(key);
      if (it == dst.end())
        dst.emplace(key, ser);
      else
        it->second = it->second + ser;
    };

    // omega_{h-1, m+1}(z, sigma(z), rest)
    if (h >= 1) {
      if (h - 1 == 0 && m + 1 == 2) {
        // B(z, sigma z) on the diagonal
        Series b = sig.derivative() / (ident - sig).pow_int(2);
        add_to(bracket, Term{}, b);
      } else {
        const PoleSum& w = omega(h - 1, m + 1);
        for (auto& [ser_key, ser] : expand_two_slots(w, p, ident, sig, true))
          add_to(bracket, ser_key, ser);
      }
    }

    // pair sums over h_1 + h_2 = h, I_1 disjoint-union I_2 = rest slots
    long rest_count = m - 1;
    for (long mask = 0; mask < (1L << rest_count); ++mask) {
      std::vector<long> idx1, idx2;
      for (long b = 0; b < rest_count; ++b) ((mask >> b) & 1 ? idx1 : idx2).push_back(b);
      for (long h1 = 0; h1 <= h; ++h1) {
        long h2 = h - h1;
        if (h1 == 0 && idx1.empty()) continue;
        if (h2 == 0 && idx2.empty()) continue;
        // expansion of omega_{h', |I|+1} with its first slot at z = p + pos
        auto piece = [&](long hh, const std::vector<long>& idx, const Series& pos,
                         bool jac) -> std::map<Term, Series> {
          std::map<Term, Series> out;
          Term base(rest_count, kUnset);
          if (hh == 0 && idx.size() == 1) {
            // B(z_slot, z_j): pole factors at p of increasing order
            Series jacser = jac ? pos.derivative() : Series();
            Series pk = Series::constant(tag, Rat(1), T);
            for (long k = 0; k <= T; ++k) {
              if (k > 0) pk = pk * pos;
              if (pk.is_zero_upto_trunc()) break;
              Series ser = pk.scaled(Rat(k + 1));
              if (jac) ser = ser * jacser;
              Term key = base;
              key[idx[0]] = Factor{p, k + 2};
              out.emplace(std::move(key), std::move(ser));
            }
            return out;
          }
          const PoleSum& w = omega(hh, static_cast<long>(idx.size()) + 1);
          for (auto& [rest, ser] : expand_slot(w, 0, p, pos, jac)) {
            Term key = base;
            for (size_t q = 0; q < rest.size(); ++q) key[idx[q]] = rest[q];
            add_to(out, key, ser);
          }
          return out;
        };
        auto part1 = piece(h1, idx1, ident, false);
        auto part2 = piece(h2, idx2, sig, true);
        for (auto& [k1, s1] : part1)
          for (auto& [k2, s2] : part2) add_to(bracket, merge_disjoint(k1, k2), s1 * s2);
      }
    }

    // residues against the kernel
    std::vector<Series> sig_pow = {Series::constant(tag, Rat(1), T), sig};
    for (auto& [rest, g] : bracket) {
      Series hser = invK * g;
      if (hser.is_zero_upto_trunc()) continue;
      long jmax = -1 - hser.valuation();
      while (static_cast<long>(sig_pow.size()) <= jmax) sig_pow.push_back(sig_pow.back() * sig);
      for (long j = 1; j <= jmax; ++j) {
        Series numer = Series::monomial(tag, j, Rat(1), T) - sig_pow[j];
        Rat r = (numer * hser).residue();
        if (r.is_zero()) continue;
        Term full;
        full.reserve(m);
        full.push_back(Factor{p, j + 1});
        for (auto& f : rest) full.push_back(f);
        result.add_term(full, r);
      }
    }
  }

  if (m == 1 && h >= 1) {
    for (size_t s = 0; s < c_.vital().size(); ++s) result += vital_term_residue_at(h, s, T);
  }

  if (m >= 2 && !result.is_symmetric()) fail(Err::Internal, "correlator came out asymmetric");
  if (!result.is_residue_free()) fail(Err::Internal, "correlator carries a residue");
  return result;
}

PoleSum Engine::vital_term_residue_at(long h, size_t s, long T) const {
  const VitalPoint& v = c_.vital()[s];
  const std::string& tag = c_.var();
  Series xp = c_.xprime_at(v.a, T + 2 * h);
  Series xp_inv = xp.pow_int(-1);
  // L_1 = d_x log(z - a) = 1/(x'(z)(z - a)), then L_{k+1} = (1/x') L_k'
  Series L = xp_inv * Series::monomial(tag, -1, Rat(1), T + 2 * h);
  for (long k = 1; k < 2 * h; ++k) L = xp_inv * L.derivative();
  Series g = xp * L;
  Rat pref = beta_coeff(h) * v.weight.pow(1 - 2 * h);
  PoleSum out(1);
  for (long j = 1; -1 - j >= g.valuation(); ++j) {
    Rat cj = g.coeff(-1 - j);
    if (!cj.is_zero()) out.add_term({Factor{v.a, j + 1}}, pref * cj);
  }
  return out;
}

PoleSum Engine::vital_term_residue(long h, size_t s) const {
  return vital_term_residue_at(h, s, working_truncation(h, 1));
}

PoleSum Engine::vital_term_derivative(long h, size_t s) const {
  const VitalPoint& v = c_.vital()[s];
  const std::string& tag = c_.var();
  long T = 2 * h + 4;
  Series xp_inv = c_.xprime_at(v.a, T).pow_int(-1);
  // oriented to agree with the residue route (README, Conventions)
  Rat pref = -beta_coeff(h) * v.weight.pow(1 - 2 * h);
  PoleSum out(1);
  for (long k = 1; k <= 2 * h - 1; ++k) {
    Series g = Series::monomial(tag, k - 1, Rat(k), T) * xp_inv;
    for (long j = 0; j < 2 * h - 2; ++j) g = xp_inv * g.derivative();
    Rat val = g.coeff(0);
    if (!val.is_zero()) out.add_term({Factor{v.a, k + 1}}, pref * val);
  }
  return out;
}

PoleSum Engine::omega_derivative_route(long h) const {
  if (h < 1) fail(Err::Internal, "derivative route needs h >= 1");
  PoleSum w = omega(h, 1);
  for (size_t s = 0; s < c_.vital().size(); ++s) {
    w -= vital_term_residue(h, s);
    w += vital_term_derivative(h, s);
  }
  return w;
}

PoleSum Engine::lpp_projection(long h, long n, bool include_vital) const {
  const PoleSum& w = omega(h, n);
  long T = working_truncation(h, n);
  const std::string& tag = c_.var();
  PoleSum out(n);
  auto project_at = [&](const Rat& p) {
    Series ident = Series::identity(tag, T);
    for (auto& [rest, g] : expand_slot(w, 0, p, ident, false)) {
      if (g.is_zero_upto_trunc()) continue;
      for (long j = 1; -1 - j >= g.valuation(); ++j) {
        Rat cj = g.coeff(-1 - j);
        if (cj.is_zero()) continue;
        Term full;
        full.reserve(n);
        full.push_back(Factor{p, j + 1});
        for (auto& f : rest) full.push_back(f);
        out.add_term(full, cj);
      }
    }
  };
  for (auto& r : c_.ram()) project_at(r.p);
  if (include_vital)
    for (auto& v : c_.vital()) project_at(v.a);
  return out;
}

PoleSum Engine::lpp_projection_at_vital(long h, size_t s) const {
  const PoleSum& w = omega(h, 1);
  long T = working_truncation(h, 1);
  const Rat& a = c_.vital()[s].a;
  PoleSum out(1);
  Series g = expand_full(w, a, Series::identity(c_.var(), T), false);
  if (g.is_zero_upto_trunc()) return out;
  for (long j = 1; -1 - j >= g.valuation(); ++j) {
    Rat cj = g.coeff(-1 - j);
    if (!cj.is_zero()) out.add_term({Factor{a, j + 1}}, cj);
  }
  return out;
}

}  // namespace logtr
