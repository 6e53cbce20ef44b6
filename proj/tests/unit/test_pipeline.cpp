#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "../support/demo_manifest.hpp"
#include "jndkit/analysis.hpp"
#include "jndkit/errors.hpp"
#include "jndkit/pipeline.hpp"
#include "jndkit/records.hpp"
#include "test_util.hpp"

using namespace jndkit;
using jndkit::testing::code_of;
using jndkit::testing::DemoOptions;
using jndkit::testing::TempDir;
using jndkit::testing::write_demo_manifest;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> multiples(int t, int n) {
  std::vector<int> out;
  for (int k = t; k <= n; k += t) out.push_back(k);
  return out;
}

struct ProbeRun {
  ProbeSummary summary;
  long calls = 0;
};

ProbeRun run_probe(const Manifest& m, const fs::path& journal_path, ProbeOptions opts = {.perceiver = "sim"},
              std::function<void(const nlohmann::json&)> hook = {}) {
  Journal journal(journal_path, logical_clock());
  if (hook) journal.set_after_append(hook);
  auto perceiver = make_perceiver(m.perceiver(opts.perceiver));
  auto checker = make_checker(m.checker);
  ProbeRun r;
  r.summary = probe(m, opts, journal, *perceiver, checker.get());
  r.calls = perceiver->calls();
  return r;
}

struct Crash {};

}  // namespace

TEST(StimulusSource, ServesReferenceAndLevelsAndRejectsUnknown) {
  TempDir dir;
  const Manifest m = load_manifest(write_demo_manifest(dir.path(), {.references = 2}));
  StimulusSource source(m);
  ASSERT_EQ(source.ladders().size(), 4u);
  EXPECT_EQ(source.ladder("r1", DistortionKind::Noise).level_count, 50);
  const Content ref = source.content("r0", DistortionKind::Blur, 0);
  EXPECT_EQ(std::get<Raster>(ref), std::get<Raster>(source.reference("r0").content));
  EXPECT_EQ(source.stimulus("r0", DistortionKind::Blur, 50).level, 50);
  EXPECT_EQ(code_of([&] { source.stimulus("r0", DistortionKind::Blur, 51); }), ErrorCode::LevelOutOfRange);
  EXPECT_EQ(code_of([&] { source.stimulus("r0", DistortionKind::Jpeg, 1); }), ErrorCode::NotFound);
}

TEST(Generate, IsByteReproducible) {
  TempDir dir;
  const Manifest m = load_manifest(write_demo_manifest(dir.path(), {.references = 2, .kinds = {"jpeg", "noise"}}));
  std::string journals[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path out = dir / ("out" + std::to_string(k));
    Journal journal(dir / ("gen" + std::to_string(k) + ".ndjson"), logical_clock());
    const auto summary = generate(m, out, &journal);
    EXPECT_EQ(summary.references, 2);
    EXPECT_EQ(summary.stimuli, 2 * (100 + 50));
    journals[k] = slurp(journal.path());
  }
  EXPECT_EQ(journals[0], journals[1]);
  EXPECT_EQ(slurp(dir / "out0" / "index.json"), slurp(dir / "out1" / "index.json"));
  const auto index = nlohmann::json::parse(slurp(dir / "out0" / "index.json"));
  for (const auto& s : index.at("stimuli")) {
    const auto file = s.at("file").get<std::string>();
    EXPECT_EQ(slurp(dir / "out0" / "store" / file), slurp(dir / "out1" / "store" / file));
    EXPECT_EQ(sha256_file(dir / "out0" / "store" / file), s.at("sha256").get<std::string>());
  }
}

TEST(Probe, TenReferencesMatchTheOracle) {
  TempDir dir;
  const Manifest m = load_manifest(write_demo_manifest(dir.path()));
  const ProbeRun r = run_probe(m, dir / "j.ndjson");
  ASSERT_EQ(r.summary.results.size(), 20u);
  for (const auto& res : r.summary.results) EXPECT_EQ(res.levels, multiples(7, 50)) << res.reference_id;
  const auto records = read_journal(dir / "j.ndjson").records;
  ASSERT_FALSE(records.empty());
  EXPECT_EQ(records.front().at("type"), "provenance");
  EXPECT_EQ(records.front().at("config_hash"), m.config_hash());
  EXPECT_EQ(records_of(records, "jnd_result", r.summary.run_id).size(), 20u);
  EXPECT_EQ(records_of(records, "comparison", r.summary.run_id).size(), static_cast<std::size_t>(r.calls));
  EXPECT_EQ(r.summary.perceiver_calls, r.calls);
}

TEST(Probe, RejectsBadWindowAndRepeats) {
  TempDir dir;
  const Manifest m = load_manifest(write_demo_manifest(dir.path(), {.references = 1}));
  EXPECT_EQ(code_of([&] { run_probe(m, dir / "j", {.perceiver = "sim", .window = 0}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { run_probe(m, dir / "j", {.perceiver = "sim", .repeats = 2}); }),
            ErrorCode::InvalidArgument);
}

TEST(Probe, TwoRunsWriteIdenticalJournals) {
  TempDir dir;
  const Manifest m = load_manifest(write_demo_manifest(dir.path(), {.references = 3, .lapse_rate = 0.05}));
  run_probe(m, dir / "a.ndjson");
  run_probe(m, dir / "b.ndjson");
  EXPECT_EQ(slurp(dir / "a.ndjson"), slurp(dir / "b.ndjson"));
}

TEST(Replay, RegeneratesEveryResultWithoutThePerceiver) {
  TempDir dir;
  const Manifest m =
      load_manifest(write_demo_manifest(dir.path(), {.references = 3, .lapse_rate = 0.1, .checker = "heuristic"}));
  const ProbeRun r = run_probe(m, dir / "j.ndjson");
  const auto summary = replay(read_journal(dir / "j.ndjson").records);
  ASSERT_EQ(summary.results.size(), 6u);
  EXPECT_EQ(summary.mismatches, 0);
  for (const auto& res : summary.results) {
    EXPECT_TRUE(res.identical);
    EXPECT_EQ(to_json(res.regenerated).dump(), to_json(res.journaled).dump());
  }
  EXPECT_GT(summary.lookups, 0);
}

TEST(Replay, MissingComparisonIsACacheMiss) {
  TempDir dir;
  const Manifest m = load_manifest(write_demo_manifest(dir.path(), {.references = 1, .kinds = {"blur"}}));
  run_probe(m, dir / "j.ndjson");
  auto records = read_journal(dir / "j.ndjson").records;
  for (auto it = records.begin(); it != records.end(); ++it)
    if (it->at("type") == "comparison") {
      records.erase(it);
      break;
    }
  EXPECT_EQ(code_of([&] { replay(records); }), ErrorCode::CacheMiss);
}

TEST(Resume, CrashAtEveryKindOfRecordRepeatsNoCall) {
  TempDir dir;
  const Manifest m = load_manifest(write_demo_manifest(dir.path(), {.references = 2, .lapse_rate = 0.05}));
  const ProbeRun clean = run_probe(m, dir / "clean.ndjson");
  const auto clean_records = read_journal(dir / "clean.ndjson").records;
  const auto clean_results = records_of(clean_records, "jnd_result", clean.summary.run_id);

  for (std::size_t crash_at : {2ul, 5ul, 40ul, clean_records.size() / 2, clean_records.size() - 1}) {
    const fs::path path = dir / ("crash" + std::to_string(crash_at) + ".ndjson");
    std::size_t written = 0;
    long first_calls = 0;
    try {
      Journal journal(path, logical_clock());
      journal.set_after_append([&](const nlohmann::json&) {
        if (++written == crash_at) throw Crash{};
      });
      auto perceiver = make_perceiver(m.perceiver("sim"));
      auto checker = make_checker(m.checker);
      struct Count {
        Perceiver& p;
        long* out;
        ~Count() { *out = p.calls(); }
      } count{*perceiver, &first_calls};
      probe(m, {.perceiver = "sim"}, journal, *perceiver, checker.get());
      FAIL() << "crash hook did not fire";
    } catch (const Crash&) {
    }
    const ProbeRun resumed = run_probe(m, path);
    EXPECT_EQ(first_calls + resumed.calls, clean.calls) << "crash at " << crash_at;
    const auto records = read_journal(path).records;
    const auto results = records_of(records, "jnd_result", clean.summary.run_id);
    ASSERT_EQ(results.size(), clean_results.size());
    std::map<std::string, std::string> by_pair, clean_by_pair;
    const auto strip = [](nlohmann::json j) {
      for (const char* f : {"seq", "ts"}) j.erase(f);
      return j;
    };
    for (const auto& j : results) by_pair[j.at("reference").get<std::string>() + j.at("kind").get<std::string>()] = strip(j).dump();
    for (const auto& j : clean_results)
      clean_by_pair[j.at("reference").get<std::string>() + j.at("kind").get<std::string>()] = strip(j).dump();
    EXPECT_EQ(by_pair, clean_by_pair);
  }
}

TEST(Probe, SweepMakesEveryWidthResolvable) {
  TempDir dir;
  const Manifest m = load_manifest(write_demo_manifest(dir.path(), {.references = 2, .lapse_rate = 0.05}));
  const ProbeRun r = run_probe(m, dir / "j.ndjson", {.perceiver = "sim", .sweep = true});
  const auto report = run_report(read_journal(dir / "j.ndjson").records, r.summary.run_id);
  for (const auto& row : report.sweep) {
    EXPECT_EQ(row.compared, 4);
    EXPECT_EQ(row.unresolved, 0) << row.width;
  }
  EXPECT_EQ(report.sweep[4].disagreements, 0);
}
