#pragma once

#include <istream>
#include <string>
#include <vector>

#include "rbci/assignment_space.hpp"
#include "rbci/statistics.hpp"

namespace rbci {

/// One row per unit: treatment indicator and observed outcome.
struct TrialData {
  Assignment z;
  std::vector<double> y;

  std::size_t size() const noexcept { return z.size(); }
};

/// Parses a `z,y` CSV (header required, no quoting, no extra columns).
/// Throws InvalidInput with the offending line number.
TrialData read_trial_csv(std::istream& in);
TrialData read_trial_file(const std::string& path);  // "-" reads stdin

/// At least 4 units; two per arm for the t statistic.
void validate_trial(const TrialData& trial, Statistic statistic);

std::string format_number(double v);  // 12 significant digits

}  // namespace rbci
