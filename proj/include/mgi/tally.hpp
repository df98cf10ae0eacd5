#pragma once

#include <cstdint>
#include <string>

#include "mgi/report.hpp"

namespace mgi::detail {

// Pass/fail counter for exhaustive sweeps.
struct Tally {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  void note(bool ok) {
    ++cases;
    if (!ok) ++failures;
  }
};

inline void record_tally(Report& rep, const std::string& id,
                         const std::string& anchor, const Tally& t) {
  CheckRecord r;
  r.id = id;
  r.anchor = anchor;
  r.expected = "0 failures / " + std::to_string(t.cases) + " cases";
  r.observed =
      std::to_string(t.failures) + " failures / " + std::to_string(t.cases) + " cases";
  r.pass = t.failures == 0;
  rep.add(std::move(r));
}

}  // namespace mgi::detail
