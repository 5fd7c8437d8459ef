#pragma once

#include <string>
#include <utility>
#include <vector>

namespace abtrap::report {

struct Criterion {
  int id = 0;
  std::string title;
  bool passed = false;
  /// deterministic measurements, in insertion order
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, std::string>> notes;
  /// wall time, kept out of serialized output
  double seconds = 0.0;
};

namespace tolerance {
inline constexpr int kRandomBrackets = 50;
inline constexpr double kSpectrumRelative = 1e-6;
inline constexpr double kSpectrumSeconds = 60.0;
inline constexpr double kSlowBranchFactor = 2.0;  ///< gap <= factor (omega_P / omega_c)^2
inline constexpr double kResidualSlack = 1e-9;
inline constexpr double kPureGauge = 1e-12;
inline constexpr int kGaugeSamples = 64;
inline constexpr double kCirculationRelative = 1e-8;
inline constexpr double kSecularAt20 = 5e-2;
inline constexpr double kSecularAt100 = 5e-3;
inline constexpr double kAngularMomentumRelative = 1e-6;
}  // namespace tolerance

/// Criteria 1 to 9.  Criterion 10 needs the output tree and is added by the caller.
std::vector<Criterion> evaluate_criteria(unsigned threads);

Criterion criterion_determinism(bool identical, const std::string& detail);

/// "PASS  3  title  key=value ..." style line
std::string summary_line(const Criterion& c);

}  // namespace abtrap::report
