#include "vmeas/report.hpp"

#include <stdexcept>

namespace vmeas {

std::string LawResult::status() const {
  if (holds) return expected ? "PASS" : "PASS-unexpected";
  return expected ? "FAIL" : "FAIL-as-expected";
}

bool LawReport::all_as_expected() const {
  for (const auto& l : laws)
    if (!l.as_expected()) return false;
  return true;
}

const LawResult& LawReport::law(const std::string& name) const {
  for (const auto& l : laws)
    if (l.name == name) return l;
  throw std::out_of_range("no law named " + name);
}

LawResult& LawReport::add(std::string name, bool expected) {
  laws.push_back(LawResult{std::move(name), true, 0, {}, expected});
  return laws.back();
}

void LawReport::merge(const LawReport& other, const std::string& prefix, const std::string& context) {
  for (const LawResult& l : other.laws) {
    const std::string name = prefix + l.name;
    LawResult* into = nullptr;
    for (auto& mine : laws)
      if (mine.name == name) into = &mine;
    if (!into) into = &add(name, l.expected);
    into->checked += l.checked;
    if (!l.holds && into->holds) {
      into->holds = false;
      into->witness = context.empty() ? l.witness : context + ": " + l.witness;
    }
  }
}

nlohmann::json LawReport::to_json() const {
  nlohmann::json out;
  out["suite"] = suite;
  out["laws"] = nlohmann::json::array();
  for (const auto& l : laws) {
    nlohmann::json j{{"name", l.name}, {"status", l.status()}, {"checked", l.checked}, {"expected", l.expected}};
    if (!l.witness.empty()) j["witness"] = l.witness;
    out["laws"].push_back(std::move(j));
  }
  out["all_as_expected"] = all_as_expected();
  return out;
}

void LawTally::check(bool ok, const std::string& witness_if_failed) {
  check_lazy(ok, [&] { return witness_if_failed; });
}

}  // namespace vmeas
