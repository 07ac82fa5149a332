#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgw/serialize.hpp"

namespace dgw {

struct SuiteConfig {
  std::string suite;  // wfs, lifting, two-of-six, kunneth, barcobar, two-sided-bar, distlaw, counterexample, reedy
  std::optional<Ring> ring;
  std::uint64_t seed = 1;
  std::size_t cases = 0;  // 0: suite default
  std::optional<std::size_t> max_rank;
  std::optional<int> deg_lo, deg_hi;
  std::size_t max_weight = 6;
  int m = 2;
  std::string shape = "delta-op-2";  // reedy: delta-N, delta-op-N
  std::optional<Json> category, algebra, coalgebra;
  unsigned threads = 0;  // 0: DGW_THREADS, else hardware concurrency
  bool timing = false;   // add wall time to the JSON report
};

struct CaseRecord {
  std::string id;
  std::string digest;
  bool pass = false;
  Json detail;
};

struct Report {
  std::string suite;
  Json config;
  std::vector<CaseRecord> cases;  // sorted by id
  double seconds = 0;
  bool timing = false;
  bool pass() const;
  std::size_t failed() const;
  Json to_json() const;
  std::string summary(bool windows = false) const;
};

const std::vector<std::string>& suite_names();
Report run_suite(const SuiteConfig& config);
unsigned thread_count(unsigned requested);

}  // namespace dgw
