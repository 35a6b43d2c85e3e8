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


#include "qmarkov/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qmarkov {

namespace {

std::string csv_number(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

}  // namespace

bool Margin::passes() const {
  if (strict) return value > tolerance;
  return value >= -tolerance;
}

bool TrialOutcome::passes() const {
  if (error) return false;
  return std::all_of(margins.begin(), margins.end(), [](const Margin& m) { return m.passes(); });
}

void TrialOutcome::quantity(std::string name, double value, std::string anchor) {
  quantities.push_back({std::move(name), index, value, std::move(anchor)});
}

void TrialOutcome::margin(std::string inequality, double value, double tolerance, bool strict) {
  margins.push_back({std::move(inequality), index, value, tolerance, strict});
}

VerificationReport::VerificationReport(std::string experiment, std::uint64_t seed,
                                       std::string description)
    : experiment_(std::move(experiment)), seed_(seed), description_(std::move(description)) {}

void VerificationReport::add_trial(TrialOutcome trial) {
  if (trial.index != trials_.size()) {
    throw std::invalid_argument("VerificationReport: trials must be added in index order");
  }
  trials_.push_back(std::move(trial));
}

void VerificationReport::add_closed_forms(const ClosedFormReport& report,
                                          const std::vector<std::string>& informational) {
  closed_forms_.push_back(qmarkov::to_json(report));
  for (const auto& [key, value] : report.flags) {
    if (std::find(informational.begin(), informational.end(), key) != informational.end()) continue;
    required_flags_[report.experiment + "." + key] = value;
  }
}

std::vector<Margin> VerificationReport::margins() const {
  std::vector<Margin> out;
  for (const auto& t : trials_) out.insert(out.end(), t.margins.begin(), t.margins.end());
  return out;
}

std::vector<MarginSummary> VerificationReport::summaries() const {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const Margin*>> groups;
  for (const auto& t : trials_) {
    for (const auto& m : t.margins) {
      if (!groups.count(m.inequality)) order.push_back(m.inequality);
      groups[m.inequality].push_back(&m);
    }
  }
  std::vector<MarginSummary> out;
  for (const auto& name : order) {
    const auto& group = groups[name];
    std::vector<double> values;
    MarginSummary s;
    s.inequality = name;
    s.count = group.size();
    s.tolerance = group.front()->tolerance;
    s.strict = group.front()->strict;
    for (const Margin* m : group) {
      values.push_back(m->value);
      if (!m->passes()) ++s.failures;
    }
    std::sort(values.begin(), values.end());
    s.min = values.front();
    const std::size_t mid = values.size() / 2;
    s.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    out.push_back(s);
  }
  return out;
}

std::size_t VerificationReport::failed_trials() const {
  return static_cast<std::size_t>(
      std::count_if(trials_.begin(), trials_.end(), [](const auto& t) { return !t.passes(); }));
}

bool VerificationReport::pass() const {
  if (trials_.empty() && closed_forms_.empty()) return false;
  if (failed_trials() > 0) return false;
  return std::all_of(required_flags_.begin(), required_flags_.end(),
                     [](const auto& kv) { return kv.second; });
}

double VerificationReport::margin(const std::string& inequality, std::size_t trial) const {
  if (trial < trials_.size()) {
    for (const auto& m : trials_[trial].margins) {
      if (m.inequality == inequality) return m.value;
    }
  }
  throw std::out_of_range("VerificationReport: no margin '" + inequality + "' in trial " +
                          std::to_string(trial));
}

double VerificationReport::quantity(const std::string& name, std::size_t trial) const {
  if (trial < trials_.size()) {
    for (const auto& q : trials_[trial].quantities) {
      if (q.name == name) return q.value;
    }
  }
  throw std::out_of_range("VerificationReport: no quantity '" + name + "' in trial " +
                          std::to_string(trial));
}

Json VerificationReport::to_json(bool include_runtime) const {
  Json j;
  j["schema"] = kReportSchema;
  j["experiment"] = experiment_;
  j["seed"] = seed_;
  j["description"] = description_;
  j["parameters"] = params_;
  j["pass"] = pass();
  j["trial_count"] = trials_.size();
  j["failed_trials"] = failed_trials();

  Json tol = Json::object();
  for (const auto& [k, v] : tolerances_) tol[k] = v;
  j["tolerances"] = std::move(tol);

  Json sums = Json::array();
  for (const auto& s : summaries()) {
    Json item;
    item["inequality"] = s.inequality;
    item["count"] = s.count;
    item["failures"] = s.failures;
    item["min"] = number_to_json(s.min);
    item["median"] = number_to_json(s.median);
    item["tolerance"] = s.tolerance;
    item["strict"] = s.strict;
    sums.push_back(std::move(item));
  }
  j["margin_summary"] = std::move(sums);

  Json trials = Json::array();
  for (const auto& t : trials_) {
    Json item;
    item["index"] = t.index;
    item["seed"] = t.seed;
    if (!t.family.empty()) item["family"] = t.family;
    item["pass"] = t.passes();
    Json q = Json::object();
    for (const auto& x : t.quantities) q[x.name] = number_to_json(x.value);
    item["quantities"] = std::move(q);
    Json m = Json::object();
    for (const auto& x : t.margins) m[x.inequality] = number_to_json(x.value);
    item["margins"] = std::move(m);
    if (!t.notes.empty()) item["notes"] = t.notes;
    if (t.error) item["error"] = *t.error;
    if (t.instance) item["instance"] = *t.instance;
    trials.push_back(std::move(item));
  }
  j["trials"] = std::move(trials);

  if (!closed_forms_.empty()) j["closed_forms"] = closed_forms_;
  if (!required_flags_.empty()) {
    Json f = Json::object();
    for (const auto& [k, v] : required_flags_) f[k] = v;
    j["required_flags"] = std::move(f);
  }
  if (!notes_.empty()) j["notes"] = notes_;
  if (include_runtime && runtime_) j["runtime_seconds"] = *runtime_;
  return j;
}

std::string VerificationReport::to_csv() const {
  std::ostringstream out;
  out << "experiment,trial,family,inequality,margin,tolerance,strict,pass\n";
  for (const auto& t : trials_) {
    for (const auto& m : t.margins) {
      out << experiment_ << ',' << t.index << ',' << t.family << ',' << m.inequality << ','
          << csv_number(m.value) << ',' << csv_number(m.tolerance) << ',' << (m.strict ? 1 : 0)
          << ',' << (m.passes() ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

}  // namespace qmarkov
