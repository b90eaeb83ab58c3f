#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace diracsol {

struct ReportValue {
  std::string name;
  double value = 0.0;
};

struct ReportCheck {
  std::string name;
  std::string identity;  // the relation being checked, in words
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Named scalars plus identity residuals with their declared tolerances.
class FunctionalReport {
 public:
  explicit FunctionalReport(std::string title = "") : title_(std::move(title)) {}

  const std::string& title() const { return title_; }
  void add_value(const std::string& name, double value);
  /// pass = residual <= tolerance (NaN fails).
  void add_check(const std::string& name, const std::string& identity, double residual,
                 double tolerance);
  /// Appends every value and check of `other`, prefixing names.
  void merge(const FunctionalReport& other, const std::string& prefix = "");

  const std::vector<ReportValue>& values() const { return values_; }
  const std::vector<ReportCheck>& checks() const { return checks_; }
  double value(const std::string& name) const;
  const ReportCheck& check(const std::string& name) const;
  bool has_value(const std::string& name) const;
  bool all_pass() const;
  std::vector<std::string> failures() const;

  nlohmann::json& meta() { return meta_; }
  const nlohmann::json& meta() const { return meta_; }

  /// `key = value` lines, %.17g.
  std::string to_text() const;
  /// {"title", "meta", "values": [...], "checks": [{name, value/residual, tolerance, pass}]}.
  nlohmann::json to_json() const;

 private:
  std::string title_;
  std::vector<ReportValue> values_;
  std::vector<ReportCheck> checks_;
  nlohmann::json meta_ = nlohmann::json::object();
};

/// Relative difference |a - b| / max(|a|, |b|, floor).
double rel_diff(double a, double b, double floor = 1e-300);

}  // namespace diracsol
