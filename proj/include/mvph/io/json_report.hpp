#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mvph/engine/engine.hpp"

namespace mvph {

struct ReportFormat {
  // Wall-clock figures differ between runs; leave them out for byte-stable
  // output.
  bool include_timings = true;
};

nlohmann::ordered_json report_to_json(const BettiReport& report, ReportFormat format = {});
void emit_report(const BettiReport& report, std::ostream& out, ReportFormat format = {});
// "-" writes to stdout.
void emit_report(const BettiReport& report, const std::string& path, ReportFormat format = {});

}  // namespace mvph
