#include "rbci/trial_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "rbci/errors.hpp"

namespace rbci {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

TrialData read_trial_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  TrialData trial;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "z" || fields[1] != "y")
        bad(lineno, "expected header 'z,y'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) bad(lineno, "expected exactly 2 columns, found " + std::to_string(fields.size()));
    if (fields[0] != "0" && fields[0] != "1") bad(lineno, "z must be 0 or 1, got '" + fields[0] + "'");
    const char* begin = fields[1].c_str();
    char* end = nullptr;
    errno = 0;
    const double y = std::strtod(begin, &end);
    if (fields[1].empty() || *end != '\0' || errno == ERANGE || !std::isfinite(y))
      bad(lineno, "y must be a finite number, got '" + fields[1] + "'");
    trial.z.push_back(fields[0] == "1" ? 1 : 0);
    trial.y.push_back(y);
  }
  if (!header_seen) throw Error(ErrorCode::InvalidInput, "empty input: expected header 'z,y'");
  return trial;
}

TrialData read_trial_file(const std::string& path) {
  if (path == "-") return read_trial_csv(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  return read_trial_csv(in);
}

void validate_trial(const TrialData& trial, Statistic statistic) {
  if (trial.size() < 4)
    throw Error(ErrorCode::InvalidInput, "need at least 4 units, found " + std::to_string(trial.size()));
  const std::size_t n1 = treated_count(trial.z);
  const std::size_t per_arm = statistic == Statistic::StudentizedT ? 2 : 1;
  if (n1 < per_arm || trial.size() - n1 < per_arm)
    throw Error(ErrorCode::InvalidInput, "each arm needs at least " + std::to_string(per_arm) +
                                             " unit(s) for statistic '" + to_string(statistic) + "'");
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace rbci
