#include "mvph/io/json_report.hpp"

#include <fstream>
#include <iostream>

#include "mvph/core/error.hpp"

namespace mvph {

using nlohmann::ordered_json;

ordered_json report_to_json(const BettiReport& report, ReportFormat format) {
  ordered_json j;
  j["epsilon"] = report.epsilon;
  j["field"] = report.field;
  j["grid"] = report.grid;

  ordered_json scales = ordered_json::array();
  for (const ScaleBetti& s : report.scales) {
    ordered_json entry;
    entry["scale"] = s.scale;
    entry["betti"] = s.betti;
    scales.push_back(std::move(entry));
  }
  j["scales"] = std::move(scales);

  ordered_json diag;
  diag["leaf_count"] = report.leaf_count;
  diag["max_leaf_points"] = report.max_leaf_points;
  diag["max_leaf_simplices"] = report.max_leaf_simplices;
  ordered_json ranks = ordered_json::object();
  for (const RanksRecord& r : report.ranks_f) ranks[r.box] = r.per_scale;
  diag["ranks_f"] = std::move(ranks);
  if (format.include_timings) {
    ordered_json t;
    t["leaf"] = report.timings.leaf_ms;
    t["assembly"] = report.timings.assembly_ms;
    t["wall"] = report.timings.wall_ms;
    diag["timings_ms"] = std::move(t);
  }
  diag["warnings"] = report.warnings;
  j["diagnostics"] = std::move(diag);

  if (report.verify) {
    const VerifyResult& v = *report.verify;
    ordered_json vj;
    vj["pass"] = v.pass;
    if (!v.feasible) vj["reason"] = v.reason;
    ordered_json mism = ordered_json::array();
    for (const Mismatch& m : v.mismatches) {
      ordered_json e;
      e["scale"] = m.scale;
      e["dim"] = m.dim;
      e["expected"] = m.expected;
      e["actual"] = m.actual;
      mism.push_back(std::move(e));
    }
    vj["mismatches"] = std::move(mism);
    j["verify"] = std::move(vj);
  }
  return j;
}

void emit_report(const BettiReport& report, std::ostream& out, ReportFormat format) {
  out << report_to_json(report, format).dump(2) << '\n';
  if (!out) throw Error("failed to write the report");
}

void emit_report(const BettiReport& report, const std::string& path, ReportFormat format) {
  if (path == "-") {
    emit_report(report, std::cout, format);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file " + path);
  emit_report(report, out, format);
}

}  // namespace mvph
