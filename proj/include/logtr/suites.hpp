#pragma once

#include "logtr/variation.hpp"

namespace logtr {

struct SuiteConfig {
  long hk_bound = 6;  // dilaton grid: 2h + k <= hk_bound
  long loop_bound = 5;
  long var_bound = 5;  // correlator FD grid: 2h + m <= var_bound
  FDOptions fd;
  int threads = 1;  // 1 = serial reference; 0 = all hardware threads
};

// independent checks fanned out over the grid; identical results for any
// thread count (the engine cache is first-writer-wins deterministic)
std::vector<CheckReport> run_loop_suite(const Curve& c, const SuiteConfig& cfg);
std::vector<CheckReport> run_projection_suite(const Curve& c, const SuiteConfig& cfg);
std::vector<CheckReport> run_dilaton_suite(const Curve& c, const SuiteConfig& cfg);
std::vector<CheckReport> run_lemma31_suite(const Curve& c, const SuiteConfig& cfg);
std::vector<CheckReport> run_variational_suite(const Curve& c, const SuiteConfig& cfg,
                                               bool vital_positions, bool standard_times);

// engine omega_{h,1} and F_h against the closed forms for the built-in
// sw-half / strip families over the acceptance grid
std::vector<CheckReport> run_paper_examples(const std::string& only, const SuiteConfig& cfg);

bool all_pass(const std::vector<CheckReport>& reps);

}  // namespace logtr
