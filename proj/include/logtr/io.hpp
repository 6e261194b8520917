#pragma once

#include <string>
#include <vector>

#include "logtr/curve.hpp"
#include "logtr/identities.hpp"
#include "logtr/polesum.hpp"

namespace logtr {

enum class OutputFormat { Text, Json, Latex };
OutputFormat parse_format(const std::string& s);

struct RunConfig {
  long h_max = 4;
  long n_max = 4;
  long truncation = 0;  // 0 = curve default
  Rat tolerance = Rat(1, 10000000000L);
  std::vector<Rat> eps_schedule = {Rat(1, 1000), Rat(1, 10000), Rat(1, 100000)};
  OutputFormat format = OutputFormat::Text;
};

// Strict curve-file schema: unknown fields are rejected, all scalars are
// exact-fraction strings.
CurveSpec parse_curve_file(const std::string& json_text);
std::string curve_spec_to_json(const CurveSpec& spec);

std::string polesum_to_json(const PoleSum& w, const std::string& var);
PoleSum polesum_from_json(const std::string& json_text);

std::string reports_to_json(const std::vector<CheckReport>& reports);
std::string admissibility_to_json(const AdmissReport& rep);

std::vector<Rat> parse_eps_schedule(const std::string& s);  // "1/1000,1/10000"

}  // namespace logtr
