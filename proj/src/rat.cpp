#include "logtr/rat.hpp"

namespace logtr {

const char* err_name(Err e) {
  switch (e) {
    case Err::TagMismatch: return "TagMismatch";
    case Err::DivisionByZeroSeries: return "DivisionByZeroSeries";
    case Err::TruncationExhausted: return "TruncationExhausted";
    case Err::InvalidValuation: return "InvalidValuation";
    case Err::NotInvertible: return "NotInvertible";
    case Err::NonSquareLeading: return "NonSquareLeading";
    case Err::OutOfRange: return "OutOfRange";
    case Err::ResidueObstruction: return "ResidueObstruction";
    case Err::NonSimpleRamification: return "NonSimpleRamification";
    case Err::DySingularAtRamification: return "DySingularAtRamification";
    case Err::SharedZeroLoci: return "SharedZeroLoci";
    case Err::IrrationalRamification: return "IrrationalRamification";
    case Err::VitalAtLogCutConflict: return "VitalAtLogCutConflict";
    case Err::RamificationAtInfinity: return "RamificationAtInfinity";
    case Err::UnsupportedLocalModel: return "UnsupportedLocalModel";
    case Err::EvaluationAtPole: return "EvaluationAtPole";
    case Err::CollisionOfSpecialPoints: return "CollisionOfSpecialPoints";
    case Err::DeformationBreaksStructure: return "DeformationBreaksStructure";
    case Err::InconclusiveFD: return "InconclusiveFD";
    case Err::TauUnsupported: return "TauUnsupported";
    case Err::ParseError: return "ParseError";
    case Err::Unsupported: return "Unsupported";
    case Err::Internal: return "Internal";
  }
  return "UnknownError";
}

Rat::Rat(long n, long d) {
  if (d == 0) fail(Err::Internal, "rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat Rat::parse(const std::string& s) {
  if (s.empty()) fail(Err::ParseError, "empty rational literal");
  auto bad = s.find_first_not_of("0123456789+-/ ");
  if (bad != std::string::npos)
    fail(Err::ParseError, "invalid character in rational literal '" + s + "'");
  try {
    mpq_class v(s);
    if (v.get_den() == 0) fail(Err::ParseError, "zero denominator in '" + s + "'");
    v.canonicalize();
    return Rat(std::move(v));
  } catch (const std::invalid_argument&) {
    fail(Err::ParseError, "cannot parse rational '" + s + "'");
  }
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) fail(Err::Internal, "rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::inv() const {
  if (is_zero()) fail(Err::Internal, "inverse of zero");
  return Rat(mpq_class(1) / v_);
}

Rat Rat::pow(long e) const {
  if (e == 0) return Rat(1);
  Rat base = e < 0 ? inv() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.v_.get_num().get_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), base.v_.get_den().get_mpz_t(), k);
  return Rat(mpq_class(n, d));
}

std::optional<Rat> Rat::sqrt_exact() const { return nth_root_exact(2); }

std::optional<Rat> Rat::nth_root_exact(unsigned long n) const {
  if (n == 0) fail(Err::Internal, "0th root");
  if (sign() < 0 && n % 2 == 0) return std::nullopt;
  mpz_class rn, rd;
  int exact_n = mpz_root(rn.get_mpz_t(), v_.get_num().get_mpz_t(), n);
  int exact_d = mpz_root(rd.get_mpz_t(), v_.get_den().get_mpz_t(), n);
  if (!exact_n || !exact_d) return std::nullopt;
  return Rat(mpq_class(rn, rd));
}

std::string Rat::str() const {
  std::string s = v_.get_num().get_str();
  if (v_.get_den() != 1) s += "/" + v_.get_den().get_str();
  return s;
}

size_t RatHash::operator()(const Rat& r) const {
  std::hash<std::string> h;
  return h(r.str());
}

}  // namespace logtr
