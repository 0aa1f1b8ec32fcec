#ifndef CYCLIC_REPORT_HPP
#define CYCLIC_REPORT_HPP

#include <sstream>
#include <string>
#include <vector>

namespace cyclic {

/** \brief Outcome of checking a family of relations. */
struct ValidationReport {
  std::string subject;
  long checked = 0;
  long skipped = 0;  // instances reaching outside the truncation window
  long failed = 0;
  std::vector<std::string> failures;  // first few, for display

  bool ok() const { return failed == 0; }
  void fail(const std::string& what) {
    ++failed;
    if (failures.size() < 20) failures.push_back(what);
  }
  void merge(const ValidationReport& o) {
    checked += o.checked;
    skipped += o.skipped;
    failed += o.failed;
    for (auto& f : o.failures)
      if (failures.size() < 20) failures.push_back(f);
  }
  std::string summary() const {
    std::ostringstream os;
    os << subject << ": " << (ok() ? "OK" : "FAILED") << " (" << checked << " checked, " << skipped
       << " skipped, " << failed << " failed)";
    for (auto& f : failures) os << "\n  " << f;
    return os.str();
  }
};

}  // namespace cyclic

#endif
