#include "diracsol/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "diracsol/errors.hpp"

namespace diracsol {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double rel_diff(double a, double b, double floor) {
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  return std::abs(a - b) / scale;
}

void FunctionalReport::add_value(const std::string& name, double value) {
  values_.push_back({name, value});
}

void FunctionalReport::add_check(const std::string& name, const std::string& identity,
                                 double residual, double tolerance) {
  checks_.push_back({name, identity, residual, tolerance, residual <= tolerance});
}

void FunctionalReport::merge(const FunctionalReport& other, const std::string& prefix) {
  for (const auto& v : other.values_) values_.push_back({prefix + v.name, v.value});
  for (auto c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(c);
  }
}

bool FunctionalReport::has_value(const std::string& name) const {
  for (const auto& v : values_) {
    if (v.name == name) return true;
  }
  return false;
}

double FunctionalReport::value(const std::string& name) const {
  for (const auto& v : values_) {
    if (v.name == name) return v.value;
  }
  throw FormatError("report '" + title_ + "' has no value '" + name + "'");
}

const ReportCheck& FunctionalReport::check(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return c;
  }
  throw FormatError("report '" + title_ + "' has no check '" + name + "'");
}

bool FunctionalReport::all_pass() const {
  for (const auto& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<std::string> FunctionalReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks_) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

std::string FunctionalReport::to_text() const {
  std::ostringstream out;
  out << "# report " << title_ << "\n";
  for (const auto& v : values_) out << v.name << " = " << fmt(v.value) << "\n";
  for (const auto& c : checks_) {
    out << "check." << c.name << " = " << fmt(c.residual) << " tol " << fmt(c.tolerance) << " "
        << (c.pass ? "pass" : "FAIL") << "  # " << c.identity << "\n";
  }
  out << "pass = " << (all_pass() ? "true" : "false") << "\n";
  return out.str();
}

nlohmann::json FunctionalReport::to_json() const {
  nlohmann::json j;
  j["title"] = title_;
  j["meta"] = meta_;
  j["values"] = nlohmann::json::array();
  for (const auto& v : values_) j["values"].push_back({{"name", v.name}, {"value", v.value}});
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks_) {
    j["checks"].push_back({{"name", c.name},
                           {"identity", c.identity},
                           {"residual", c.residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  }
  j["pass"] = all_pass();
  return j;
}

}  // namespace diracsol
