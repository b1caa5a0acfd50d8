#include "lexacq/learner.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace lexacq {

namespace {

void validate_config(const TrainConfig& cfg) {
  if (cfg.maintenance_interval == 0) throw std::invalid_argument("maintenance_interval must be >= 1");
  if (cfg.epochs == 0) throw std::invalid_argument("epochs must be >= 1");
  if (cfg.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  ScaledWeights::from(cfg.weights); // fail fast on bad weights
}

// Gap and adjustment hypotheses merged into one id-sorted set; a gap wins
// over an adjustment with the same entry.
std::vector<Hypothesis> merge_hypotheses(std::vector<Hypothesis> gaps, std::vector<Hypothesis> adjustments) {
  std::map<std::string, Hypothesis> by_id;
  for (auto& h : gaps) by_id.emplace(canonical_id(h.entry), std::move(h));
  for (auto& h : adjustments) by_id.emplace(canonical_id(h.entry), std::move(h));
  std::vector<Hypothesis> out;
  out.reserve(by_id.size());
  for (auto& [id, h] : by_id) out.push_back(std::move(h));
  return out;
}

TraceRecord process_utterance_impl(Dictionary& dict, const Utterance& utt, const TrainConfig& cfg,
                                   const Parse* first_parse_hint, std::uint64_t hint_version) {
  TraceRecord rec;
  rec.index = dict.utterances_seen;
  rec.utterance = utt;
  if (first_parse_hint != nullptr && hint_version == dict.version()) {
    rec.first_parse = *first_parse_hint;
  } else {
    rec.first_parse = best_parse(DictView(dict), utt, cfg.weights, cfg.limits);
  }
  rec.hypotheses = merge_hypotheses(hypothesize_gap_words(utt, rec.first_parse),
                                    hypothesize_adjustments(utt, rec.first_parse));
  AcceptResult acc = accept_step(dict, utt, rec.hypotheses, cfg);
  rec.reparse = std::move(acc.reparse);
  rec.accepted_pass = acc.predicate_passed;
  rec.accepted = std::move(acc.accepted);
  rec.gate_rejected = std::move(acc.gate_rejected);
  dict.utterances_seen += 1;
  if (dict.utterances_seen % cfg.maintenance_interval == 0) {
    rec.maintenance_ran = true;
    rec.maintenance = maintain(dict, cfg);
  }
  return rec;
}

}  // namespace

std::vector<Hypothesis> hypothesize_gap_words(const Utterance& utt, const Parse& parse) {
  std::vector<Hypothesis> out;
  std::set<std::string> seen;
  const auto& unparsed = parse.unparsed_positions;
  std::size_t i = 0;
  while (i < unparsed.size()) {
    std::size_t j = i;
    while (j + 1 < unparsed.size() && unparsed[j + 1] == unparsed[j] + 1) ++j;
    LexEntry entry;
    entry.phones.assign(utt.phones.begin() + unparsed[i], utt.phones.begin() + unparsed[j] + 1);
    entry.sememes = parse.missing_sememes;
    if (seen.insert(canonical_id(entry)).second) {
      out.push_back(Hypothesis{std::move(entry), HypothesisOrigin::Gap});
    }
    i = j + 1;
  }
  return out;
}

std::vector<Hypothesis> hypothesize_adjustments(const Utterance& utt, const Parse& parse) {
  std::vector<Hypothesis> out;
  std::set<std::string> seen;
  for (const auto& pl : parse.placements) {
    if (pl.mismatch_positions.empty()) continue;
    auto [entry_phones, entry_sememes] = parse_canonical_id(pl.entry_id);
    int lo = pl.offset;
    int hi = pl.offset + static_cast<int>(entry_phones.size()) - 1;
    std::set<int> mismatched(pl.mismatch_positions.begin(), pl.mismatch_positions.end());
    while (lo <= hi && mismatched.count(lo)) ++lo;
    while (hi >= lo && mismatched.count(hi)) --hi;
    if (lo > hi) continue; // every position mismatched
    LexEntry entry;
    entry.phones.assign(utt.phones.begin() + lo, utt.phones.begin() + hi + 1);
    entry.sememes = std::move(entry_sememes);
    if (seen.insert(canonical_id(entry)).second) {
      out.push_back(Hypothesis{std::move(entry), HypothesisOrigin::Adjustment});
    }
  }
  return out;
}

AcceptResult accept_step(Dictionary& dict, const Utterance& utt,
                         const std::vector<Hypothesis>& hyps, const TrainConfig& cfg) {
  Dictionary trial = dict;
  for (const auto& h : hyps) trial.add(h.entry, /*gate_on=*/false);

  AcceptResult res;
  res.reparse = best_parse(DictView(trial), utt, cfg.weights, cfg.limits);
  ParseCounts counts = res.reparse.counts();
  res.predicate_passed = counts.unparsed <= cfg.accept.max_unparsed &&
                         counts.mismatched <= cfg.accept.max_mismatch &&
                         (!cfg.accept.require_all_sememes || res.reparse.missing_sememes.empty());
  if (!res.predicate_passed) return res;

  std::map<std::string, std::uint64_t> used; // id -> placements in the reparse
  for (const auto& pl : res.reparse.placements) used[pl.entry_id] += 1;

  for (const auto& h : hyps) { // id-sorted by construction
    std::string id = canonical_id(h.entry);
    if (!used.count(id)) continue;
    LexEntry entry = h.entry;
    entry.use_count = 0;
    entry.window_use_count = 0;
    entry.created_at = dict.utterances_seen;
    if (dict.add(entry, cfg.gate_on) == AddOutcome::GateRejected) {
      res.gate_rejected.push_back(id);
    } else {
      res.accepted.push_back(id);
    }
  }
  for (const auto& [id, n_uses] : used) {
    if (LexEntry* entry = dict.find(id)) {
      entry->use_count += n_uses;
      entry->window_use_count += n_uses;
    }
  }
  return res;
}

MaintainResult maintain(Dictionary& dict, const TrainConfig& cfg) {
  MaintainResult res;
  const std::uint64_t now = dict.utterances_seen;
  const std::uint64_t min_age = cfg.resolved_min_age();
  for (const auto& [id, entry] : dict.entries()) {
    std::uint64_t age = now >= entry.created_at ? now - entry.created_at : 0;
    if (entry.window_use_count < cfg.min_window_uses && age >= min_age) {
      res.removed_unused.push_back(id);
    }
  }
  for (const auto& id : res.removed_unused) dict.erase(id);

  // Every decomposability check runs against the post-(a) dictionary;
  // removals apply after the scan. A removed entry's cover can only use
  // words that are shorter, or equal-length with strictly fewer sememes, so
  // removed entries never cover each other circularly and survivors still
  // reproduce each one.
  std::vector<std::string> ids;
  ids.reserve(dict.size());
  for (const auto& [id, entry] : dict.entries()) ids.push_back(id);
  for (const auto& id : ids) {
    const LexEntry* entry = dict.find(id);
    DictView view(dict, id);
    Parse parse = best_parse(view, Utterance{entry->phones, entry->sememes}, cfg.weights, cfg.limits);
    ParseCounts c = parse.counts();
    if (c.words >= 2 && c.unparsed == 0 && c.mismatched == 0 && c.missing == 0 && c.extra == 0) {
      res.removed_decomposable.push_back(id);
    }
  }
  for (const auto& id : res.removed_decomposable) dict.erase(id);

  dict.reset_window_counts();
  return res;
}

TraceRecord process_utterance(Dictionary& dict, const Utterance& utt, const TrainConfig& cfg) {
  validate_config(cfg);
  return process_utterance_impl(dict, utt, cfg, nullptr, 0);
}

TrainingReport train(Dictionary& dict, const std::vector<Utterance>& corpus,
                     const TrainConfig& cfg, const TraceSink& sink) {
  validate_config(cfg);
  dict.maintenance_interval = cfg.maintenance_interval;
  TrainingReport report;

  auto handle = [&](TraceRecord&& rec) {
    report.utterances_processed += 1;
    if (rec.accepted_pass) report.accepted_parses += 1;
    report.gate_rejections += rec.gate_rejected.size();
    if (rec.maintenance_ran) {
      report.pruned_unused += rec.maintenance.removed_unused.size();
      report.pruned_decomposable += rec.maintenance.removed_decomposable.size();
      report.entry_counts.emplace_back(dict.utterances_seen, dict.size());
    }
    if (sink) sink(rec);
  };

  for (std::uint64_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.jobs <= 1) {
      for (const auto& utt : corpus) handle(process_utterance_impl(dict, utt, cfg, nullptr, 0));
      continue;
    }
    // Batch mode: parse a window against one snapshot in parallel, then fold
    // sequentially. A stale snapshot (dictionary changed mid-window) just
    // forfeits the cached parse.
    const std::size_t window = static_cast<std::size_t>(cfg.jobs) * 8;
    for (std::size_t base = 0; base < corpus.size(); base += window) {
      const std::size_t count = std::min(window, corpus.size() - base);
      DictView snapshot(dict);
      const std::uint64_t version = dict.version();
      std::vector<Parse> first(count);
      std::atomic<std::size_t> cursor{0};
      std::vector<std::thread> workers;
      int n_workers = std::min<std::size_t>(cfg.jobs, count);
      workers.reserve(n_workers);
      for (int t = 0; t < n_workers; ++t) {
        workers.emplace_back([&]() {
          for (std::size_t i; (i = cursor.fetch_add(1)) < count;) {
            first[i] = best_parse(snapshot, corpus[base + i], cfg.weights, cfg.limits);
          }
        });
      }
      for (auto& w : workers) w.join();
      for (std::size_t i = 0; i < count; ++i) {
        handle(process_utterance_impl(dict, corpus[base + i], cfg, &first[i], version));
      }
    }
  }

  // Final maintenance pass, unless the last utterance already triggered one
  // at this exact count (a second pass would see freshly reset window
  // counters and wrongly drop everything old).
  if (report.utterances_processed > 0 && dict.utterances_seen % cfg.maintenance_interval != 0) {
    MaintainResult final_pass = maintain(dict, cfg);
    report.pruned_unused += final_pass.removed_unused.size();
    report.pruned_decomposable += final_pass.removed_decomposable.size();
  }
  report.entry_counts.emplace_back(dict.utterances_seen, dict.size());
  for (const auto& [id, entry] : dict.entries()) {
    if (entry.use_count == 0) report.never_used_entries += 1;
  }
  return report;
}

}  // namespace lexacq
