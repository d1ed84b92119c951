#pragma once

// Minimal check harness used by `spinbell validate` and the acceptance test.
// A check returns one or more measurements, each a deviation compared against
// a tolerance; the harness applies the global tolerance scale, times the
// check, and turns exceptions into failures.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "format.hpp"

namespace spinbell {

struct Measurement {
  std::string id;       ///< appended to the check id, e.g. "crossing"
  std::string what;     ///< short description of the measured quantity
  double deviation = 0.0;
  double tolerance = 0.0;
  bool strict = false;  ///< pass requires deviation < tolerance instead of <=
  double value = 0.0;   ///< raw measured value, for the report
  bool passed = false;  ///< filled by the harness
};

struct Check {
  std::string id;
  std::string group;
  std::string title;
  std::function<std::vector<Measurement>()> run;
};

struct CheckResult {
  std::string id;
  std::string group;
  std::string title;
  std::vector<Measurement> parts;
  std::string error;
  double seconds = 0.0;

  bool passed() const {
    if (!error.empty() || parts.empty()) return false;
    for (const auto& p : parts)
      if (!p.passed) return false;
    return true;
  }
};

inline Measurement at_most(std::string id, std::string what, double deviation, double tolerance, double value) {
  return {std::move(id), std::move(what), deviation, tolerance, false, value, false};
}

/// Count-type checks: number of violations, tolerance zero.
inline Measurement no_violations(std::string id, std::string what, std::size_t violations) {
  const double v = static_cast<double>(violations);
  return {std::move(id), std::move(what), v, 0.0, false, v, false};
}

inline CheckResult run_check(const Check& c, double tol_scale) {
  CheckResult r{c.id, c.group, c.title, {}, {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.parts = c.run();
    for (auto& p : r.parts) {
      const double tol = p.tolerance * tol_scale;
      p.tolerance = tol;
      p.passed = p.strict ? p.deviation < tol : p.deviation <= tol;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string part_id(const CheckResult& r, const Measurement& m) { return m.id.empty() ? r.id : r.id + "." + m.id; }

inline void print_result(std::ostream& os, const CheckResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f s", r.seconds);
  os << (r.passed() ? "PASS " : "FAIL ") << r.id << "  " << r.title << "  (" << buf << ")\n";
  if (!r.error.empty()) os << "       error: " << r.error << '\n';
  for (const auto& p : r.parts) {
    os << "       " << (p.passed ? "ok   " : "FAIL ") << part_id(r, p) << ": " << p.what << " = " << format_double(p.value)
       << ", deviation " << format_double(p.deviation) << (p.strict ? " < " : " <= ") << format_double(p.tolerance) << '\n';
  }
}

inline nlohmann::json result_json(const CheckResult& r) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : r.parts)
    parts.push_back({{"id", part_id(r, p)}, {"what", p.what}, {"value", format_double(p.value)},
                     {"deviation", format_double(p.deviation)}, {"tolerance", format_double(p.tolerance)},
                     {"strict", p.strict}, {"passed", p.passed}});
  return {{"id", r.id}, {"group", r.group}, {"title", r.title}, {"passed", r.passed()},
          {"seconds", r.seconds}, {"error", r.error}, {"parts", parts}};
}

}  // namespace spinbell
