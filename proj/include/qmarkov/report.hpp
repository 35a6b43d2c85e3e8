// Copyright 2026 The qmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Structured results of a verification run.

#ifndef QMARKOV_REPORT_HPP
#define QMARKOV_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmarkov/serialization.hpp"

namespace qmarkov {

inline constexpr int kReportSchema = 1;

/// LHS - RHS of one inequality in one trial. Non-strict margins pass when
/// value >= -tolerance; strict ones need value > tolerance.
struct Margin {
  std::string inequality;
  std::size_t trial = 0;
  double value = 0.0;
  double tolerance = 0.0;
  bool strict = false;

  bool passes() const;
};

struct Quantity {
  std::string name;
  std::size_t trial = 0;
  double value = 0.0;
  std::string anchor;
};

/// Margin statistics of one inequality across trials.
struct MarginSummary {
  std::string inequality;
  std::size_t count = 0;
  std::size_t failures = 0;
  double min = 0.0;
  double median = 0.0;
  double tolerance = 0.0;
  bool strict = false;
};

/// Everything one trial produced; the harness merges these in trial order.
struct TrialOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string family;
  std::vector<Quantity> quantities;
  std::vector<Margin> margins;
  std::vector<std::string> notes;
  /// Set when the trial could not be evaluated (for example a solver failure).
  std::optional<std::string> error;
  /// Instance data for replay, attached when the trial fails.
  std::optional<Json> instance;

  bool passes() const;
  void quantity(std::string name, double value, std::string anchor = {});
  void margin(std::string inequality, double value, double tolerance, bool strict = false);
};

class VerificationReport {
 public:
  VerificationReport(std::string experiment, std::uint64_t seed, std::string description);

  const std::string& experiment() const noexcept { return experiment_; }
  std::uint64_t seed() const noexcept { return seed_; }

  void set_parameters(Json params) { params_ = std::move(params); }
  void set_tolerance(const std::string& name, double value) { tolerances_[name] = value; }
  void set_runtime(double seconds) { runtime_ = seconds; }
  std::optional<double> runtime() const noexcept { return runtime_; }

  /// Appends a trial; trials must arrive in index order.
  void add_trial(TrialOutcome trial);
  /// Attaches a casebook report's quantities and flags; false flags fail the
  /// report unless they are listed in `informational`.
  void add_closed_forms(const ClosedFormReport& report,
                        const std::vector<std::string>& informational = {});
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  const std::vector<TrialOutcome>& trials() const noexcept { return trials_; }
  std::vector<Margin> margins() const;
  std::vector<MarginSummary> summaries() const;
  std::size_t failed_trials() const;
  bool pass() const;

  /// Margin of a named inequality in a given trial; throws std::out_of_range.
  double margin(const std::string& inequality, std::size_t trial = 0) const;
  /// Quantity by name in a given trial; throws std::out_of_range.
  double quantity(const std::string& name, std::size_t trial = 0) const;

  /// The runtime is only written when include_runtime is set, so two runs
  /// with the same configuration give identical documents.
  Json to_json(bool include_runtime = false) const;
  /// experiment,trial,family,inequality,margin,tolerance,strict,pass
  std::string to_csv() const;

 private:
  std::string experiment_;
  std::uint64_t seed_;
  std::string description_;
  Json params_ = Json::object();
  std::map<std::string, double> tolerances_;
  std::optional<double> runtime_;
  std::vector<TrialOutcome> trials_;
  std::vector<Json> closed_forms_;
  std::map<std::string, bool> required_flags_;
  std::vector<std::string> notes_;
};

}  // namespace qmarkov

#endif  // QMARKOV_REPORT_HPP
