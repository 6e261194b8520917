#include "logtr/logvalue.hpp"

namespace logtr {

LogValue LogValue::log_term(const Rat& argument, const Rat& coefficient) {
  if (argument.is_zero()) fail(Err::Internal, "log(0)");
  LogValue v;
  v.add_log(argument, coefficient);
  return v;
}

void LogValue::add_log(const Rat& arg, const Rat& coeff) {
  if (coeff.is_zero() || arg.is_one()) return;
  auto it = logs_.find(arg);
  if (it == logs_.end()) {
    logs_.emplace(arg, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) logs_.erase(it);
  }
}

LogValue LogValue::operator-() const {
  LogValue v;
  v.rat_ = -rat_;
  for (auto& [a, c] : logs_) v.logs_.emplace(a, -c);
  return v;
}

LogValue& LogValue::operator+=(const LogValue& o) {
  rat_ += o.rat_;
  for (auto& [a, c] : o.logs_) add_log(a, c);
  return *this;
}

LogValue& LogValue::operator-=(const LogValue& o) {
  rat_ -= o.rat_;
  for (auto& [a, c] : o.logs_) add_log(a, -c);
  return *this;
}

LogValue& LogValue::operator*=(const Rat& c) {
  if (c.is_zero()) {
    rat_ = Rat(0);
    logs_.clear();
    return *this;
  }
  rat_ *= c;
  for (auto& [a, co] : logs_) co *= c;
  return *this;
}

std::string LogValue::str() const {
  std::string out;
  if (!rat_.is_zero() || logs_.empty()) out = rat_.str();
  for (auto& [a, c] : logs_) {
    std::string piece;
    Rat ac = c.abs();
    if (!ac.is_one()) piece = ac.str() + "*";
    piece += "log(" + a.str() + ")";
    if (out.empty())
      out = (c.sign() < 0 ? "-" : "") + piece;
    else
      out += (c.sign() < 0 ? " - " : " + ") + piece;
  }
  return out;
}

}  // namespace logtr
