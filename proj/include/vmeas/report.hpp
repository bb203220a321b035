#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace vmeas {

/// Outcome of checking one law over a battery of instances.
struct LawResult {
  std::string name;
  bool holds = true;
  std::size_t checked = 0;
  /// First counterexample, if any.
  std::string witness;
  /// False for laws that are known not to hold for the operator under test
  /// (e.g. union preservation of a lower density that is not a lifting).
  bool expected = true;

  bool as_expected() const { return holds == expected; }
  std::string status() const;
};

struct LawReport {
  std::string suite;
  std::vector<LawResult> laws;

  bool all_as_expected() const;
  const LawResult& law(const std::string& name) const;
  LawResult& add(std::string name, bool expected = true);
  /// Accumulates other's laws into the ones of the same (prefixed) name,
  /// appending the rest; `context` labels a newly recorded witness.
  void merge(const LawReport& other, const std::string& prefix = "", const std::string& context = "");
  nlohmann::json to_json() const;
};

/// Accumulates a single law over many checks, keeping the first witness.
class LawTally {
 public:
  explicit LawTally(LawResult& target) : target_(target) {}
  void check(bool ok, const std::string& witness_if_failed = {});
  template <class WitnessFn>
  void check_lazy(bool ok, WitnessFn&& witness) {
    ++target_.checked;
    if (!ok && target_.holds) {
      target_.holds = false;
      target_.witness = witness();
    }
  }

 private:
  LawResult& target_;
};

}  // namespace vmeas
