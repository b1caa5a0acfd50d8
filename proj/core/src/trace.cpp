#include "lexacq/trace.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>
#include <istream>

namespace lexacq {

namespace {

std::string placements_field(const Parse& parse) {
  std::vector<std::string> parts;
  parts.reserve(parse.placements.size());
  for (const auto& pl : parse.placements) {
    parts.push_back(std::to_string(pl.offset) + ":" + pl.entry_id);
  }
  return join(parts, " ");
}

std::string spans_field(const std::vector<int>& positions) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < positions.size()) {
    std::size_t j = i;
    while (j + 1 < positions.size() && positions[j + 1] == positions[j] + 1) ++j;
    parts.push_back(std::to_string(positions[i]) + "-" + std::to_string(positions[j]));
    i = j + 1;
  }
  return join(parts, ",");
}

void write_event(std::ostream& out, const char* kind, std::uint64_t index,
                 const std::vector<std::string>& fields) {
  out << kind << '\t' << index;
  for (const auto& f : fields) out << '\t' << f;
  out << '\n';
}

void write_parse_event(std::ostream& out, std::uint64_t index, const char* stage, const Parse& parse) {
  write_event(out, "parse", index,
              {stage, format_fixed(parse.cost), placements_field(parse),
               spans_field(parse.unparsed_positions), std::to_string(parse.mismatched_count),
               join(parse.missing_sememes, " ")});
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

void write_trace_record(std::ostream& out, const TraceRecord& rec) {
  write_event(out, "utt", rec.index,
              {join(rec.utterance.phones, " "), join(rec.utterance.sememes, " ")});
  write_parse_event(out, rec.index, "first", rec.first_parse);
  for (const auto& h : rec.hypotheses) {
    write_event(out, "hyp", rec.index,
                {h.origin == HypothesisOrigin::Gap ? "gap" : "adjustment", canonical_id(h.entry)});
  }
  write_parse_event(out, rec.index, "reparse", rec.reparse);
  write_event(out, "accept", rec.index,
              {rec.accepted_pass ? "pass" : "fail", join(rec.accepted, " ")});
  for (const auto& id : rec.gate_rejected) write_event(out, "gate", rec.index, {id});
  if (rec.maintenance_ran) {
    write_event(out, "maintain", rec.index,
                {join(rec.maintenance.removed_unused, " "),
                 join(rec.maintenance.removed_decomposable, " ")});
  }
}

std::vector<TraceEvent> read_trace_log(std::istream& in) {
  std::vector<TraceEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() < 2) {
      throw FormatError("line " + std::to_string(line_no) + ": expected kind and utterance index");
    }
    TraceEvent ev;
    ev.kind = fields[0];
    const std::string& idx = fields[1];
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), ev.index);
    if (ec != std::errc() || ptr != idx.data() + idx.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": bad utterance index '" + idx + "'");
    }
    ev.fields.assign(fields.begin() + 2, fields.end());
    events.push_back(std::move(ev));
  }
  return events;
}

void write_training_report(std::ostream& out, const TrainingReport& report) {
  for (const auto& [seen, size] : report.entry_counts) {
    write_event(out, "entries", seen, {std::to_string(size)});
  }
  const std::uint64_t end = report.utterances_processed;
  write_event(out, "accepted_parses", end, {std::to_string(report.accepted_parses)});
  write_event(out, "gate_rejections", end, {std::to_string(report.gate_rejections)});
  write_event(out, "pruned_unused", end, {std::to_string(report.pruned_unused)});
  write_event(out, "pruned_decomposable", end, {std::to_string(report.pruned_decomposable)});
  write_event(out, "never_used", end, {std::to_string(report.never_used_entries)});
}

}  // namespace lexacq
