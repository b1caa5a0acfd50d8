#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lexacq/learner.hpp"

namespace lexacq {

// Trace and report logs are line-oriented UTF-8: one event per line,
//   kind \t utterance-index \t payload-fields...
// Record events:
//   utt      phones-space-joined, sememes-space-joined
//   parse    stage(first|reparse), cost, placements("off:id" space-joined),
//            unparsed-spans("lo-hi" comma-joined), mismatched-count,
//            missing-sememes(space-joined)
//   hyp      origin(gap|adjustment), canonical-id
//   accept   pass|fail, accepted-ids(space-joined)
//   gate     canonical-id
//   maintain removed-unused-ids(space-joined), removed-decomposable-ids(space-joined)
struct TraceEvent {
  std::string kind;
  std::uint64_t index = 0;
  std::vector<std::string> fields;
};

void write_trace_record(std::ostream& out, const TraceRecord& rec);
std::vector<TraceEvent> read_trace_log(std::istream& in); // FormatError with line numbers

void write_training_report(std::ostream& out, const TrainingReport& report);

std::string format_fixed(double value, int decimals = 6);

}  // namespace lexacq
