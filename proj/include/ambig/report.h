// Findings from validators and verifiers. An empty report means the
// checked property holds.

#ifndef AMBIG_REPORT_H_
#define AMBIG_REPORT_H_

#include <string>
#include <vector>

#include <json.hpp>

namespace ambig {

struct Finding {
  std::string kind;     // e.g. "A4", "A6", "mismatch"
  std::string message;  // human-readable summary
  nlohmann::json witness;
};

class Report {
 public:
  void add(std::string kind, std::string message,
           nlohmann::json witness = nlohmann::json::object()) {
    findings_.push_back({std::move(kind), std::move(message), std::move(witness)});
  }
  void merge(const Report& other) {
    findings_.insert(findings_.end(), other.findings_.begin(),
                     other.findings_.end());
  }

  bool ok() const { return findings_.empty(); }
  const std::vector<Finding>& findings() const { return findings_; }
  bool has_kind(const std::string& kind) const {
    for (const auto& f : findings_) {
      if (f.kind == kind) return true;
    }
    return false;
  }

  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : findings_) {
      out.push_back({{"kind", f.kind}, {"message", f.message}, {"witness", f.witness}});
    }
    return out;
  }

 private:
  std::vector<Finding> findings_;
};

}  // namespace ambig

#endif  // AMBIG_REPORT_H_
