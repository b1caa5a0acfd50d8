#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lexacq/dictionary.hpp"
#include "lexacq/parse.hpp"
#include "lexacq/parser.hpp"
#include "lexacq/types.hpp"

namespace lexacq {

// When does a reparse "cover the utterance well"? Defaults demand perfect
// coverage: nothing unparsed, nothing mismatched, every sememe accounted for.
struct AcceptRequires {
  int max_unparsed = 0;
  int max_mismatch = 0;
  bool require_all_sememes = true;
};

struct TrainConfig {
  CostWeights weights;
  SearchLimits limits;
  bool gate_on = true; // reject words with empty sememe sets
  AcceptRequires accept;
  std::uint64_t maintenance_interval = 1000; // utterances between maintenance passes
  std::uint64_t min_window_uses = 3;         // pruned below this many uses per window
  std::int64_t min_age = -1;                 // negative: defaults to maintenance_interval
  std::uint64_t epochs = 1;
  std::uint64_t seed = 0; // reserved for corpus shuffling; unused by default
  int jobs = 1;           // >1 enables the batch-parallel first parse

  std::uint64_t resolved_min_age() const {
    return min_age < 0 ? maintenance_interval : static_cast<std::uint64_t>(min_age);
  }
};

enum class HypothesisOrigin { Gap, Adjustment };

struct Hypothesis {
  LexEntry entry; // counters zeroed
  HypothesisOrigin origin = HypothesisOrigin::Gap;

  bool operator==(const Hypothesis& other) const = default;
};

// One candidate word per maximal run of unparsed positions: the run's
// utterance phones, carrying the parse's full missing-sememe set.
std::vector<Hypothesis> hypothesize_gap_words(const Utterance& utt, const Parse& parse);

// For each placement with mismatches, the aligned utterance sub-span with
// edge mismatches trimmed; interior mismatches are already the utterance
// phones. Keeps the entry's sememes. A trim to nothing emits nothing.
std::vector<Hypothesis> hypothesize_adjustments(const Utterance& utt, const Parse& parse);

struct AcceptResult {
  Parse reparse;
  bool predicate_passed = false;
  std::vector<std::string> accepted;      // hypothesis ids added to the dictionary
  std::vector<std::string> gate_rejected; // used hypotheses blocked by the gate
};

// Reparses with dict plus all hypotheses (the gate does not filter the
// reparse). If the reparse satisfies cfg.accept, every hypothesis it used is
// added through the gate and every used dictionary entry's counters grow by
// its placement count.
AcceptResult accept_step(Dictionary& dict, const Utterance& utt,
                         const std::vector<Hypothesis>& hyps, const TrainConfig& cfg);

struct MaintainResult {
  std::vector<std::string> removed_unused;
  std::vector<std::string> removed_decomposable;
};

// (a) drops entries unused this window and old enough, then (b) drops
// entries whose phones and sememes two or more other entries reproduce
// exactly. Both passes run in canonical-id order; window counters reset
// afterwards.
MaintainResult maintain(Dictionary& dict, const TrainConfig& cfg);

struct TraceRecord {
  std::uint64_t index = 0;
  Utterance utterance;
  Parse first_parse;
  std::vector<Hypothesis> hypotheses;
  Parse reparse;
  bool accepted_pass = false;
  std::vector<std::string> accepted;
  std::vector<std::string> gate_rejected;
  bool maintenance_ran = false;
  MaintainResult maintenance;
};

// parse -> hypothesize -> reparse/accept, then maintenance when the
// utterance count hits the interval.
TraceRecord process_utterance(Dictionary& dict, const Utterance& utt, const TrainConfig& cfg);

struct TrainingReport {
  std::uint64_t utterances_processed = 0;
  std::uint64_t accepted_parses = 0;
  std::uint64_t gate_rejections = 0;
  std::uint64_t pruned_unused = 0;
  std::uint64_t pruned_decomposable = 0;
  std::uint64_t never_used_entries = 0; // final entries with use_count == 0
  // (utterances seen, dictionary size) after each maintenance pass and at the end
  std::vector<std::pair<std::uint64_t, std::size_t>> entry_counts;
};

using TraceSink = std::function<void(const TraceRecord&)>;

// Folds process_utterance over the corpus for cfg.epochs passes in corpus
// order, then runs a final maintenance pass (unless one just ran at this
// exact utterance count). cfg.jobs > 1 parses batches concurrently against a
// snapshot and falls back to a fresh parse whenever the dictionary changed;
// the result is identical to the sequential fold.
TrainingReport train(Dictionary& dict, const std::vector<Utterance>& corpus,
                     const TrainConfig& cfg, const TraceSink& sink = {});

}  // namespace lexacq
