#pragma once

#include "lrl/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lrl {

/// One failed instance of an identity.
struct Violation {
  std::string identity;
  std::vector<int> indices;
  /// Exact residual measure (squared Frobenius norm, or "nonzero" for function identities).
  std::string residual;
  /// Rational point at which a function identity was observed to fail.
  std::optional<std::vector<Rational>> witness;
};

struct CheckReport {
  bool passed = true;
  std::vector<Violation> violations;
  /// Number of instances checked per identity label; ordered for deterministic output.
  std::map<std::string, std::size_t> checked;
  /// Free-form notes, e.g. a recorded skip reason.
  std::vector<std::string> notes;

  void count(const std::string& identity, std::size_t n = 1) { checked[identity] += n; }
  void fail(Violation v) {
    passed = false;
    violations.push_back(std::move(v));
  }
  void merge(const CheckReport& other);
  bool failed(const std::string& identity) const;
};

}  // namespace lrl
