#include "lrl/check_report.hpp"

#include <algorithm>

namespace lrl {

void CheckReport::merge(const CheckReport& other) {
  passed = passed && other.passed;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  for (const auto& [k, v] : other.checked) checked[k] += v;
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool CheckReport::failed(const std::string& identity) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.identity == identity; });
}

}  // namespace lrl
