#pragma once

#include "qb/examples.hpp"

namespace qb {

struct CheckResult {
  std::string status = "pass";  // pass | fail | skipped
  std::string witness;          // failure details or skip reason
  int budget = -1;              // truncation budget when applicable
};

struct CheckRecord {
  std::string id;
  std::string ref;  // identity label from the suite catalog
  std::string suite;
  CheckResult result;
};

struct SuiteReport {
  std::string schema = "qbundle-report-1";
  std::string engine_version;
  std::string example;
  std::string suite;
  std::string convention =
      "gauge composition: (f1*f2) acts as f2 after f1; F_{f1*f2} = F_{f2} o F_{f1}";
  std::vector<CheckRecord> checks;
  double runtime_seconds = 0;

  bool ok() const;
  std::string to_text() const;
  std::string to_json() const;
};

extern const char* kEngineVersion;

struct CheckDef {
  std::string id;
  std::string ref;
  std::string suite;
  std::function<CheckResult()> fn;
};

// The full identity catalog for one example. Budget controls the horizontal
// truncation degree used by regularity-style checks.
std::vector<CheckDef> build_catalog(const std::shared_ptr<Example>& ex, int budget);

// Run the checks of one suite ("all" for every suite), optionally in
// parallel; the report order is the catalog order regardless of jobs.
SuiteReport run_suite(const std::shared_ptr<Example>& ex, const std::string& suite,
                      int budget = 4, int jobs = 1);

std::vector<std::string> suite_names();

}  // namespace qb
