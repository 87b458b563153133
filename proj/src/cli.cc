// Copyright (c) 2026 The hetdis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hetdis/cli.h"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "hetdis/dataset.h"
#include "hetdis/error.h"
#include "hetdis/io.h"
#include "hetdis/lexicon.h"
#include "hetdis/pipeline.h"
#include "hetdis/synth.h"

namespace hetdis::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string lexicon;
  std::string inventory;
  std::string manifest;
  std::string table;
  std::string results;
  std::string gold;
  std::string spec;
  std::string base_counts;
  std::string out;
  bool precomputed = false;
  bool balance = false;
  std::vector<std::string> thresholds{"0.00%", "0.01%", "0.02%", "0.03%"};
  std::string mask_policy = "mask";
  std::string ambiguous = "mask";
  std::size_t cap = kDefaultCandidateCap;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
};

// key=value log line on stderr.
void Log(std::ostream& err, std::string_view level, std::string_view msg,
         std::initializer_list<std::pair<std::string_view, std::string>> fields = {}) {
  err << "level=" << level << " msg=\"" << msg << '"';
  for (const auto& [k, v] : fields) err << ' ' << k << '=' << v;
  err << '\n';
}

std::vector<Threshold> ParseThresholds(const std::vector<std::string>& raw) {
  std::vector<Threshold> out;
  for (const std::string& s : raw) {
    auto ratio = ParsePercent(s);
    if (!ratio) throw UsageError("bad threshold '" + s + "' (expected e.g. 0.01%)");
    if (!out.empty() && *ratio < out.back().ratio)
      throw UsageError("thresholds must be ascending");
    out.push_back({s, *ratio});
  }
  return out;
}

std::vector<double> Ratios(const std::vector<Threshold>& ts) {
  std::vector<double> r;
  for (const auto& t : ts) r.push_back(t.ratio);
  return r;
}

AmbiguousPolicy ParseAmbiguous(const std::string& s) {
  if (s == "mask") return AmbiguousPolicy::kMask;
  if (s == "first") return AmbiguousPolicy::kFirst;
  throw UsageError("--ambiguous must be 'mask' or 'first'");
}

MaskPolicy ParseMask(const std::string& s) {
  if (s == "mask") return MaskPolicy::kMask;
  if (s == "drop") return MaskPolicy::kDrop;
  throw UsageError("--mask-policy must be 'mask' or 'drop'");
}

// Reads and parses a file, prefixing errors with its path.
template <typename Parse>
auto Load(const std::string& path, Parse parse) {
  std::string text = ReadTextFile(path);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.message(), e.line());
  }
}

PronLexicon LoadLexicon(const Config& c) {
  if (c.lexicon.empty()) return {};
  return Load(c.lexicon, [](const std::string& t) { return ParsePronLexicon(t); });
}

HeteronymInventory LoadInventory(const Config& c) {
  return Load(c.inventory,
              [](const std::string& t) { return ParseHeteronymInventory(t); });
}

std::vector<DisambiguationResult> LoadResults(const Config& c) {
  return Load(c.results, [](const std::string& t) { return ParseResults(t); });
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
}

std::string FileLabel(const std::string& label) {
  std::string out;
  for (char c : label) {
    if (c == '%') out += "pct";
    else if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-')
      out += c;
    else out += '_';
  }
  return out;
}

// Samples carrying only slot labels; enough for filtering and evaluation.
std::vector<LabeledSample> SlotOnlySamples(
    const std::vector<DisambiguationResult>& results) {
  std::vector<LabeledSample> samples;
  for (const auto& r : results) {
    LabeledSample s{r.sentence_id, r.text, {}, {}};
    for (const auto& slot : r.slots)
      s.slots.push_back({slot.word, slot.item_index, slot.chosen_form, {}, slot.confidence});
    samples.push_back(std::move(s));
  }
  return samples;
}

int CmdDisambiguate(const Config& c, std::ostream& err) {
  auto thresholds = ParseThresholds(c.thresholds);
  if (c.cap < 2) throw UsageError("--cap must be >= 2");
  if (c.jobs < 1) throw UsageError("--jobs must be >= 1");
  if (c.table.empty() && !c.precomputed)
    throw UsageError("--table is required unless --precomputed is given");
  PipelineOptions options{ParseAmbiguous(c.ambiguous), c.cap};

  PronLexicon lexicon = LoadLexicon(c);
  HeteronymInventory inventory = LoadInventory(c);
  std::optional<EncodingTable> table;
  if (!c.table.empty())
    table = Load(c.table, [](const std::string& t) { return ParseEncodingTable(t); });
  fs::path manifest_dir = fs::path(c.manifest).parent_path();
  auto records = Load(c.manifest, [&](const std::string& t) {
    return ParseManifest(t, manifest_dir);
  });

  Disambiguator disambiguator(lexicon, inventory, table ? &*table : nullptr, options);
  std::vector<SentenceOutcome> outcomes = RunCorpus(records, disambiguator, c.jobs);

  std::string results;
  std::size_t scored = 0, no_heteronym = 0, skipped = 0;
  std::vector<LabeledSample> samples_for_counts;
  std::vector<DisambiguationResult> kept_results;
  for (const auto& o : outcomes) {
    switch (o.status) {
      case OutcomeStatus::kScored:
        ++scored;
        results += FormatResultLine(o.result);
        kept_results.push_back(o.result);
        break;
      case OutcomeStatus::kNoHeteronym:
        ++no_heteronym;
        break;
      case OutcomeStatus::kSkipped:
        ++skipped;
        Log(err, "warn", "sentence skipped", {{"id", o.id}, {"reason", '"' + o.reason + '"'}});
        break;
    }
  }
  auto stats = Stats(SlotOnlySamples(kept_results), Ratios(thresholds));
  std::string summary = "sentences\t" + std::to_string(outcomes.size()) + "\n" +
                        "scored\t" + std::to_string(scored) + "\n" +
                        "no_heteronym\t" + std::to_string(no_heteronym) + "\n" +
                        "skipped\t" + std::to_string(skipped) + "\n" +
                        "threshold\tkept\n";
  for (std::size_t t = 0; t < thresholds.size(); ++t)
    summary += thresholds[t].label + "\t" + std::to_string(stats[t].kept) + "\n";

  fs::path out(c.out);
  EnsureDir(out);
  WriteTextFile(out / "results.jsonl", results);
  WriteTextFile(out / "summary.tsv", summary);
  Log(err, "info", "disambiguation done",
      {{"sentences", std::to_string(outcomes.size())},
       {"scored", std::to_string(scored)},
       {"no_heteronym", std::to_string(no_heteronym)},
       {"skipped", std::to_string(skipped)}});
  return kExitOk;
}

int CmdBuildDataset(const Config& c, std::ostream& out, std::ostream& err) {
  auto thresholds = ParseThresholds(c.thresholds);
  MaskPolicy mask = ParseMask(c.mask_policy);
  AmbiguousPolicy ambiguous = ParseAmbiguous(c.ambiguous);
  PronLexicon lexicon = LoadLexicon(c);
  HeteronymInventory inventory = LoadInventory(c);
  auto results = LoadResults(c);
  FormCounts base;
  if (!c.base_counts.empty())
    base = Load(c.base_counts, [](const std::string& t) { return ParseFormCounts(t); });

  std::vector<LabeledSample> samples;
  for (const auto& r : results)
    samples.push_back(MakeLabeledSample(r, lexicon, inventory, ambiguous));

  fs::path dir(c.out);
  EnsureDir(dir);
  std::vector<std::size_t> plain_counts, bal_counts;
  for (const Threshold& t : thresholds) {
    auto kept = FilterThreshold(samples, t.ratio);
    auto records = EmitRecords(kept, mask);
    std::string stem = "train_" + FileLabel(t.label);
    WriteTextFile(dir / (stem + ".tsv"), FormatRecordsTsv(records));
    plain_counts.push_back(records.size());
    if (c.balance) {
      auto bal_records = EmitRecords(Balance(kept, base), mask);
      WriteTextFile(dir / (stem + "_bal.tsv"), FormatRecordsTsv(bal_records));
      bal_counts.push_back(bal_records.size());
    }
  }
  out << "Threshold";
  for (const auto& t : thresholds) out << '\t' << t.label;
  out << '\n';
  if (c.balance) {
    out << "Num samples (bal)";
    for (auto n : bal_counts) out << '\t' << n;
    out << '\n';
  }
  out << "Num samples (non bal)";
  for (auto n : plain_counts) out << '\t' << n;
  out << '\n';
  Log(err, "info", "dataset written", {{"samples", std::to_string(samples.size())},
                                       {"dir", dir.string()}});
  return kExitOk;
}

int CmdEval(const Config& c, std::ostream& out, std::ostream& err) {
  auto thresholds = ParseThresholds(c.thresholds);
  auto results = LoadResults(c);
  GoldLabels gold = Load(c.gold, [](const std::string& t) { return ParseGold(t); });
  std::set<std::string> ids;
  for (const auto& r : results) ids.insert(r.sentence_id);
  for (const auto& [key, form] : gold) {
    if (!ids.contains(key.first)) {
      throw Error(ErrorCode::kMissingGold,
                  "gold sentence '" + key.first + "' has no prediction");
    }
  }
  EvalTable table = Evaluate(gold, SlotOnlySamples(results), Ratios(thresholds));
  std::vector<std::string> labels;
  for (const auto& t : thresholds) labels.push_back(t.label);
  std::string tsv = FormatEvalTable(table, labels);
  if (c.out.empty()) {
    out << tsv;
  } else {
    WriteTextFile(c.out, tsv);
    Log(err, "info", "eval table written", {{"path", c.out}});
  }
  return kExitOk;
}

int CmdStats(const Config& c, std::ostream& out) {
  auto thresholds = ParseThresholds(c.thresholds);
  auto samples = SlotOnlySamples(LoadResults(c));
  auto stats = Stats(samples, Ratios(thresholds));
  std::set<FormKey> forms;
  for (const auto& s : stats)
    for (const auto& [key, n] : s.counts) forms.insert(key);
  out << "threshold\tkept";
  for (const auto& f : forms) out << '\t' << f.first << '/' << f.second;
  out << '\n';
  for (std::size_t t = 0; t < stats.size(); ++t) {
    out << thresholds[t].label << '\t' << stats[t].kept;
    for (const auto& f : forms) {
      auto it = stats[t].counts.find(f);
      out << '\t' << (it == stats[t].counts.end() ? 0 : it->second);
    }
    out << '\n';
  }
  return kExitOk;
}

int CmdGenSynth(const Config& c, std::ostream& err) {
  AmbiguousPolicy ambiguous = ParseAmbiguous(c.ambiguous);
  PronLexicon lexicon = LoadLexicon(c);
  HeteronymInventory inventory = LoadInventory(c);
  std::string spec_text = ReadTextFile(c.spec);
  SynthCorpus corpus;
  try {
    SynthSpec spec = ParseSynthSpec(spec_text, inventory, lexicon);
    if (c.seed) spec.seed = *c.seed;
    corpus = GenSynthetic(spec, inventory, lexicon, ambiguous);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kUnknownForm:
      case ErrorCode::kDuplicateId:
        throw UsageError(c.spec + ": " + e.message());
      default:
        throw;
    }
  }
  WriteSynthCorpus(corpus, c.out);
  Log(err, "info", "synthetic corpus written",
      {{"sentences", std::to_string(corpus.manifest.size())}, {"dir", c.out}});
  return kExitOk;
}

}  // namespace

std::optional<double> ParsePercent(std::string_view text) {
  if (text.size() < 2 || text.back() != '%') return std::nullopt;
  text.remove_suffix(1);
  std::size_t dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty()) return std::nullopt;
  if (dot != std::string_view::npos && frac.empty()) return std::nullopt;
  std::string digits = std::string(whole) + std::string(frac);
  if (digits.size() > 15) return std::nullopt;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') return std::nullopt;
  }
  std::uint64_t value = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), value);
  double scale = 1.0;
  for (std::size_t k = 0; k < frac.size() + 2; ++k) scale *= 10.0;
  double ratio = static_cast<double>(value) / scale;
  if (ratio > 2.0) return std::nullopt;
  return ratio;
}

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Heteronym disambiguation and G2P dataset builder"};
  app.require_subcommand(1);

  auto add_thresholds = [&](CLI::App* sub) {
    sub->add_option("--thresholds", c.thresholds,
                    "Confidence thresholds in percent, ascending")
        ->delimiter(',')
        ->capture_default_str();
  };
  auto add_lexicons = [&](CLI::App* sub) {
    sub->add_option("--lexicon", c.lexicon, "CMUdict-format lexicon")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--inventory", c.inventory, "Heteronym inventory TSV")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--ambiguous", c.ambiguous,
                    "Multi-pronunciation non-heteronyms: mask|first")
        ->capture_default_str();
  };

  auto* dis = app.add_subcommand("disambiguate", "Label heteronyms in a manifest");
  add_lexicons(dis);
  dis->add_option("--manifest", c.manifest, "JSONL manifest")
      ->required()
      ->check(CLI::ExistingFile);
  dis->add_option("--table", c.table, "Token encoding table")->check(CLI::ExistingFile);
  dis->add_flag("--precomputed", c.precomputed,
                "Records carry per-candidate distance matrices");
  add_thresholds(dis);
  dis->add_option("--cap", c.cap, "Maximum candidates per sentence")
      ->capture_default_str();
  dis->add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();
  dis->add_option("--out", c.out, "Output directory")->required();

  auto* build = app.add_subcommand("build-dataset", "Emit G2P training TSVs");
  add_lexicons(build);
  build->add_option("--results", c.results, "results.jsonl from disambiguate")
      ->required()
      ->check(CLI::ExistingFile);
  add_thresholds(build);
  build->add_option("--mask-policy", c.mask_policy, "OOV handling: mask|drop")
      ->capture_default_str();
  build->add_flag("--balance", c.balance, "Also write balanced variants");
  build->add_option("--base-counts", c.base_counts,
                    "Existing per-form counts (word<TAB>form<TAB>count)")
      ->check(CLI::ExistingFile);
  build->add_option("--out", c.out, "Output directory")->required();

  auto* eval = app.add_subcommand("eval", "TP/FP table against gold labels");
  eval->add_option("--results", c.results, "results.jsonl from disambiguate")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--gold", c.gold, "Gold labels TSV")
      ->required()
      ->check(CLI::ExistingFile);
  add_thresholds(eval);
  eval->add_option("--out", c.out, "Output TSV (default: stdout)");

  auto* stats = app.add_subcommand("stats", "Per-threshold kept counts");
  stats->add_option("--results", c.results, "results.jsonl from disambiguate")
      ->required()
      ->check(CLI::ExistingFile);
  add_thresholds(stats);

  auto* synth = app.add_subcommand("gen-synth", "Write a synthetic corpus");
  add_lexicons(synth);
  synth->add_option("--spec", c.spec, "Synthetic corpus spec (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  synth->add_option("--seed", c.seed, "Override the seed given in --spec");
  synth->add_option("--out", c.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (dis->parsed()) return CmdDisambiguate(c, err);
    if (build->parsed()) return CmdBuildDataset(c, out, err);
    if (eval->parsed()) return CmdEval(c, out, err);
    if (stats->parsed()) return CmdStats(c, out);
    if (synth->parsed()) return CmdGenSynth(c, err);
  } catch (const UsageError& e) {
    Log(err, "error", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    Log(err, "error", e.what(), {{"code", std::string(ErrorCodeName(e.code()))}});
    return kExitDataError;
  } catch (const std::exception& e) {
    Log(err, "error", e.what());
    return kExitDataError;
  }
  return kExitUsage;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"hetdis"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return Run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hetdis::cli
