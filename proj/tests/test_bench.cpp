#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

#include "doctest.h"

#include "motionar/bench/config.hpp"
#include "motionar/bench/ingest.hpp"
#include "motionar/bench/protocol.hpp"
#include "motionar/bench/report.hpp"
#include "motionar/bench/synth.hpp"
#include "motionar/error.hpp"
#include "motionar/forecast/external.hpp"
#include "test_support.hpp"

using namespace motionar;
using bench::Frames;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("motionar_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const char* kSidecar3 = R"({"representation":"positions_cm","fps":25,"dims":3,"subject_id":"S5","action":"walk"})";

bench::NamedSequence named(const std::string& name, const std::string& subject, Frames frames,
                           pose::Representation rep = pose::Representation::kPositionsCm) {
  bench::NamedSequence ns;
  ns.name = name;
  ns.sequence.frames = std::move(frames);
  ns.sequence.representation = rep;
  ns.sequence.fps = 25.0;
  ns.sequence.subject_id = subject;
  return ns;
}

Frames ar_frames(std::size_t length, int dims, double a, double sigma, std::uint64_t seed) {
  Frames f(static_cast<Eigen::Index>(length), dims);
  for (int d = 0; d < dims; ++d) {
    const auto y = test_support::simulate_ar({a}, sigma, length, seed * 13 + d);
    for (std::size_t t = 0; t < length; ++t) f(static_cast<Eigen::Index>(t), d) = y[t];
  }
  return f;
}

/// Replays fixed predictions for exactly one sequence.
bench::PredictorFactory replay(std::vector<forecast::ForecastRecord> records) {
  return [records = std::move(records)](const bench::NamedSequence&) {
    return std::make_unique<forecast::ExternalPredictor>(records, "replay");
  };
}

bench::ProtocolConfig small_config() {
  bench::ProtocolConfig c;
  c.observe_frames = 4;
  c.predict_frames = 5;
  return c;
}

}  // namespace

TEST_CASE("anchor count formula") {
  CHECK(bench::anchor_count(35, 10, 25, 1) == 1);
  CHECK(bench::anchor_count(34, 10, 25, 1) == 0);
  CHECK(bench::anchor_count(100, 10, 25, 1) == 66);
  CHECK(bench::anchor_count(100, 10, 25, 7) == 10);
}

TEST_CASE("protocol config validation") {
  bench::ProtocolConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = c;
  bad.observe_frames = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.split.val.push_back("S1");
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.metric = metrics::Metric::kMea;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.corrector.forgetting = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.corrector.warmup = -1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK(c.to_json().at("corrector").at("warmup") == 0);
  CHECK(bench::mode_from_string("legacy") == bench::Mode::kLegacy);
  CHECK_THROWS_AS((void)bench::mode_from_string("batch"), ConfigError);
  CHECK(c.to_json().at("split").at("test") == nlohmann::json::array({"S5"}));
}

TEST_CASE("ingest") {
  TempDir dir("ingest");
  SUBCASE("two frames") {
    write_text(dir.path / "a.csv", "x,y,z\n1,2,3\n4.5,-5e-1,6\n");
    write_text(dir.path / "a.json", kSidecar3);
    const auto seq = bench::ingest(dir.path / "a.csv");
    CHECK(seq.length() == 2);
    CHECK(seq.dims() == 3);
    CHECK(seq.frames(1, 1) == -0.5);
    CHECK(seq.subject_id == "S5");
    CHECK(seq.dim_labels == std::vector<std::string>{"x", "y", "z"});
  }
  SUBCASE("missing sidecar names the expected path") {
    write_text(dir.path / "b.csv", "x,y,z\n1,2,3\n");
    try {
      (void)bench::ingest(dir.path / "b.csv");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find((dir.path / "b.json").string()) != std::string::npos);
    }
  }
  SUBCASE("NaN at row 7") {
    std::string csv = "x,y,z\n";
    for (int r = 1; r <= 9; ++r) csv += r == 7 ? "1,nan,3\n" : "1,2,3\n";
    write_text(dir.path / "c.csv", csv);
    write_text(dir.path / "c.json", kSidecar3);
    try {
      (void)bench::ingest(dir.path / "c.csv");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("row 7") != std::string::npos);
      CHECK(e.line() == 8);
    }
  }
  SUBCASE("row length mismatch") {
    write_text(dir.path / "d.csv", "x,y,z\n1,2,3\n1,2\n");
    write_text(dir.path / "d.json", kSidecar3);
    try {
      (void)bench::ingest(dir.path / "d.csv");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("row 2 has 2 values, expected 3") != std::string::npos);
    }
  }
  SUBCASE("header disagrees with the sidecar") {
    write_text(dir.path / "e.csv", "x,y\n1,2\n");
    write_text(dir.path / "e.json", kSidecar3);
    CHECK_THROWS_AS((void)bench::ingest(dir.path / "e.csv"), SchemaError);
  }
  SUBCASE("unknown representation") {
    write_text(dir.path / "f.csv", "x,y,z\n1,2,3\n");
    write_text(dir.path / "f.json", R"({"representation":"quaternions","fps":25,"dims":3})");
    CHECK_THROWS_AS((void)bench::ingest(dir.path / "f.csv"), ConfigError);
  }
  SUBCASE("garbage value") {
    write_text(dir.path / "g.csv", "x,y,z\n1,2,abc\n");
    write_text(dir.path / "g.json", kSidecar3);
    CHECK_THROWS_AS((void)bench::ingest(dir.path / "g.csv"), ParseError);
  }
  SUBCASE("normalization through the sidecar") {
    write_text(dir.path / "skel.json",
               R"({"joints":[{"name":"hip","parent":-1,"offset":[0,0,0]},{"name":"knee","parent":0,"offset":[0,-10,0]}]})");
    write_text(dir.path / "h.csv", "a,b,c,d,e,f\n5,5,5,5,0,5\n");
    write_text(dir.path / "h.json",
               R"({"representation":"positions_cm","fps":25,"dims":6,"normalize":true,"skeleton":"skel.json"})");
    const auto seq = bench::ingest(dir.path / "h.csv");
    CHECK(seq.frames(0, 0) == 0.0);
    CHECK(seq.frames(0, 4) == doctest::Approx(-10.0).epsilon(1e-12));
  }
  SUBCASE("write and read back exactly") {
    pose::PoseSequence seq;
    seq.frames = ar_frames(20, 6, 0.5, 1.0, 3) * 1.0 / 3.0;
    seq.subject_id = "S9";
    seq.action = "eat";
    bench::write_sequence(dir.path / "w.csv", seq);
    const auto back = bench::ingest(dir.path / "w.csv");
    CHECK(back.frames == seq.frames);
    CHECK(back.subject_id == "S9");
    const auto all = bench::load_dataset({dir.path});
    REQUIRE(all.size() == 1);
    CHECK(all[0].name == "w");
    CHECK(bench::select_subjects(all, {"S1"}).empty());
    CHECK(bench::select_subjects(all, {"S9"}).size() == 1);
  }
}

TEST_CASE("synthetic data") {
  SUBCASE("no noise and no trend gives zeros") {
    auto spec = bench::SyntheticSpec::from_json(nlohmann::json::parse(
        R"({"seed":3,"length":50,"individuals":[{"id":"S1","coefficients":[0.5],"sigma":0,"dims":3}]})"));
    const auto set = bench::synth(spec);
    REQUIRE(set.sequences.size() == 1);
    CHECK(set.sequences[0].sequence.frames.isZero(0.0));
  }
  SUBCASE("stationary variance of AR(1)") {
    auto spec = bench::SyntheticSpec::from_json(nlohmann::json::parse(
        R"({"seed":11,"length":100000,"individuals":[{"id":"S1","coefficients":[0.9],"sigma":1,"dims":3}]})"));
    const auto set = bench::synth(spec);
    const auto& f = set.sequences[0].sequence.frames;
    for (Eigen::Index d = 0; d < 3; ++d) {
      const double mean = f.col(d).mean();
      const double var = (f.col(d).array() - mean).square().sum() / static_cast<double>(f.rows() - 1);
      CHECK(var == doctest::Approx(1.0 / (1.0 - 0.81)).epsilon(0.05));
    }
  }
  SUBCASE("same seed gives byte-identical files") {
    const auto doc = nlohmann::json::parse(R"({"seed":5,"length":200,"individuals":[
        {"id":"S1","sequences":2,"coefficients":[0.7,-0.2],"sigma":0.3,"dims":3,
         "trend":{"type":"sinusoid","amplitude":4,"period":40}},
        {"id":"S2","coefficients":[0.1],"sigma":1,"dims":[{"coefficients":[0.4]},{"sigma":0.5},{"trend":{"type":"linear","slope":0.1}}]}]})");
    TempDir a("synth_a");
    TempDir b("synth_b");
    bench::write_synthetic_set(bench::synth(bench::SyntheticSpec::from_json(doc)), a.path, 10, 25);
    bench::write_synthetic_set(bench::synth(bench::SyntheticSpec::from_json(doc)), b.path, 10, 25);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a.path)) {
      CHECK(read_bytes(entry.path()) == read_bytes(b.path / entry.path().filename()));
      ++files;
    }
    CHECK(files == 3 * 3 + 1);  // csv, sidecar, base predictions per sequence, manifest
    const auto seq = bench::ingest(a.path / "S2_0.csv");
    CHECK(seq.subject_id == "S2");
    const auto manifest = nlohmann::json::parse(read_bytes(a.path / "manifest.json"));
    CHECK(manifest.at("individuals").at(1).at("dims").at(0).at("coefficients") == nlohmann::json::array({0.4}));
    const auto base = forecast::load_external_predictions(a.path / "S1_1.base.jsonl", 3);
    CHECK(base.size() == 200 - 10 - 25 + 1);
  }
  SUBCASE("different seeds differ") {
    auto doc = nlohmann::json::parse(R"({"seed":1,"length":20,"individuals":[{"id":"S1","coefficients":[0.5],"dims":3}]})");
    const auto x = bench::synth(bench::SyntheticSpec::from_json(doc));
    doc["seed"] = 2;
    const auto y = bench::synth(bench::SyntheticSpec::from_json(doc));
    CHECK(x.sequences[0].sequence.frames != y.sequences[0].sequence.frames);
  }
  SUBCASE("stability check") {
    auto doc = nlohmann::json::parse(R"({"length":20,"individuals":[{"id":"S1","coefficients":[1.2,-0.1],"dims":3}]})");
    CHECK(bench::spectral_radius({1.2, -0.1}) > 1.0);
    CHECK(bench::spectral_radius({1.2, -0.4}) < 1.0);
    CHECK_THROWS_AS((void)bench::synth(bench::SyntheticSpec::from_json(doc)), ConfigError);
    doc["allow_unstable"] = true;
    CHECK_NOTHROW((void)bench::synth(bench::SyntheticSpec::from_json(doc)));
  }
  SUBCASE("invalid specs") {
    CHECK_THROWS_AS((void)bench::synth(bench::SyntheticSpec::from_json(nlohmann::json::parse(
                        R"({"length":20,"individuals":[{"id":"S1","dims":4}]})"))),
                    ConfigError);
    CHECK_THROWS_AS((void)bench::SyntheticSpec::from_json(nlohmann::json::parse(
                        R"({"length":20,"individuals":[{"id":"S1","dims":3,"trend":{"type":"cubic"}}]})")),
                    ConfigError);
    CHECK_THROWS_AS((void)bench::synth(bench::SyntheticSpec::from_json(nlohmann::json::parse(
                        R"({"length":20,"individuals":[{"id":"S1","dims":3,"sigma":-1}]})"))),
                    ConfigError);
  }
  SUBCASE("trend forecasts") {
    Frames trend(12, 3);
    for (int t = 0; t < 12; ++t) trend.row(t).setConstant(t);
    const auto recs = bench::trend_forecasts(trend, 3, 4);
    REQUIRE(recs.size() == 6);
    CHECK(recs.front().anchor == 3);
    CHECK(recs.front().prediction(0, 0) == 3.0);
    CHECK(recs.back().prediction(3, 2) == 11.0);
  }
}

TEST_CASE("instrumented frames record future reads") {
  const Frames f = Frames::Random(10, 3);
  bench::InstrumentedFrames frames(f, true);
  frames.begin_prediction(5);
  (void)frames.rows(2, 3);
  CHECK(frames.future_reads() == 0);
  (void)frames.rows(4, 2);
  CHECK(frames.future_reads() == 1);
  frames.end_prediction();
  (void)frames.rows(5, 5);  // evaluation reads are not predictions
  CHECK(frames.future_reads() == 1);
  CHECK(frames.log().size() == 5);
  CHECK_THROWS_AS((void)frames.rows(8, 3), InvalidInput);
}

TEST_CASE("perfect predictions give a zero curve") {
  const Frames f = ar_frames(60, 3, 0.8, 1.0, 1);
  auto cfg = small_config();
  std::vector<forecast::ForecastRecord> truth;
  for (Eigen::Index t = cfg.observe_frames; t + cfg.predict_frames <= f.rows(); ++t) {
    truth.push_back({static_cast<std::size_t>(t), f.middleRows(t, cfg.predict_frames), "oracle"});
  }
  const auto result = bench::run_protocol(cfg, {named("s", "S5", f)}, replay(truth));
  REQUIRE(result.curves.size() == 2);
  for (double v : result.curves[0].values) CHECK(v == 0.0);
  // Zero residuals leave the corrector silent.
  for (double v : result.curves[1].values) CHECK(v == 0.0);
  CHECK(result.objective("base") == 0.0);
}

TEST_CASE("anchor accounting and causality") {
  for (const int stride : {1, 3, 7}) {
    for (const std::size_t length : {9, 10, 23, 57}) {
      for (const auto mode : {bench::Mode::kStreaming, bench::Mode::kLegacy}) {
        auto cfg = small_config();
        cfg.anchor_stride = stride;
        cfg.mode = mode;
        const auto result = bench::run_protocol(cfg, {named("s", "S5", ar_frames(length, 3, 0.5, 1.0, length))},
                                                bench::zero_velocity_factory());
        REQUIRE(result.sequences.size() == 1);
        const auto expected = bench::anchor_count(length, 4, 5, stride);
        CHECK(result.sequences[0].anchors == expected);
        CHECK(result.anchors.size() == 2 * expected);
        CHECK(result.curves[0].counts.front() == expected);
        CHECK(result.sequences[0].future_reads == 0);
        std::ostringstream log;
        result.write_anchor_log(log);
        const std::string text = log.str();
        CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == 2 * expected);
        for (const auto& a : result.anchors) CHECK((a.anchor - 4) % static_cast<std::size_t>(stride) == 0);
      }
    }
  }
}

TEST_CASE("short sequences are skipped with a warning") {
  std::ostringstream warnings;
  const auto result = bench::run_protocol(small_config(),
                                          {named("short", "S5", ar_frames(8, 3, 0.5, 1.0, 1)),
                                           named("long", "S5", ar_frames(30, 3, 0.5, 1.0, 2))},
                                          bench::zero_velocity_factory(), &warnings);
  REQUIRE(result.skipped.size() == 1);
  CHECK(result.skipped[0].name == "short");
  CHECK(result.sequences.size() == 1);
  CHECK(warnings.str().find("skipping short") != std::string::npos);
}

TEST_CASE("protocol input checks") {
  CHECK_THROWS_AS((void)bench::run_protocol(small_config(),
                                            {named("a", "S5", ar_frames(30, 3, 0.5, 1.0, 1),
                                                   pose::Representation::kExpmap)},
                                            bench::zero_velocity_factory()),
                  InvalidInput);
  auto seq = named("a", "S5", ar_frames(30, 3, 0.5, 1.0, 1));
  seq.sequence.fps = 50.0;
  CHECK_THROWS_AS((void)bench::run_protocol(small_config(), {seq}, bench::zero_velocity_factory()), InvalidInput);
}

TEST_CASE("legacy and streaming agree for a memoryless predictor") {
  std::vector<bench::NamedSequence> seqs{named("a", "S5", ar_frames(80, 6, 0.9, 1.0, 4)),
                                         named("b", "S6", ar_frames(50, 6, 0.3, 2.0, 5))};
  auto cfg = small_config();
  cfg.anchor_stride = 2;
  cfg.correct = false;
  const auto streaming = bench::run_protocol(cfg, seqs, bench::zero_velocity_factory());
  cfg.mode = bench::Mode::kLegacy;
  const auto legacy = bench::run_protocol(cfg, seqs, bench::zero_velocity_factory());
  CHECK(streaming.curves[0].values == legacy.curves[0].values);
  CHECK(streaming.curves[0].counts == legacy.curves[0].counts);

  // With correction on, the base curve is still the same in both modes and
  // legacy correction passes through (no memory between anchors).
  cfg.correct = true;
  const auto legacy_corrected = bench::run_protocol(cfg, seqs, bench::zero_velocity_factory());
  cfg.mode = bench::Mode::kStreaming;
  const auto streaming_corrected = bench::run_protocol(cfg, seqs, bench::zero_velocity_factory());
  CHECK(streaming_corrected.curves[0].values == legacy_corrected.curves[0].values);
  CHECK(legacy_corrected.curves[1].values == legacy_corrected.curves[0].values);
}

TEST_CASE("correction lowers the one-step error of a trend base") {
  // Trend plus AR(1) residuals (a = 0.9, sigma = 0.1); the base knows the trend.
  const auto doc = nlohmann::json::parse(R"({"seed":8,"length":3000,"individuals":[
      {"id":"S5","coefficients":[0.9],"sigma":0.1,"dims":3,"trend":{"type":"sinusoid","amplitude":10,"period":100}}]})");
  const auto set = bench::synth(bench::SyntheticSpec::from_json(doc));
  const auto& s = set.sequences[0];
  bench::NamedSequence ns{s.name, {}, s.sequence};
  auto cfg = small_config();
  const auto trend = bench::run_protocol(cfg, {ns}, replay(bench::trend_forecasts(s.trend, 4, 5)));
  CHECK(trend.curves[1].values[0] < trend.curves[0].values[0]);
  CHECK(trend.objective("corrected") < trend.objective("base"));

  const auto zv = bench::run_protocol(cfg, {ns}, bench::zero_velocity_factory());
  CHECK(zv.curves[1].values[0] < zv.curves[0].values[0]);
  CHECK(zv.corrector_parameters == 3);
}

TEST_CASE("external predictions by directory") {
  TempDir dir("external_dir");
  const Frames f = ar_frames(30, 3, 0.5, 1.0, 9);
  std::vector<forecast::ForecastRecord> recs;
  for (Eigen::Index t = 4; t + 5 <= 30; ++t) recs.push_back({static_cast<std::size_t>(t), Frames::Zero(5, 3), "x"});
  {
    std::ofstream out(dir.path / "seq.base.jsonl");
    forecast::write_external_predictions(out, recs);
  }
  const auto result =
      bench::run_protocol(small_config(), {named("seq", "S5", f)}, bench::external_factory(dir.path));
  CHECK(result.base_name == "external");
  CHECK(result.sequences[0].anchors == 22);
  CHECK_THROWS_AS((void)bench::run_protocol(small_config(), {named("other", "S5", f)}, bench::external_factory(dir.path)),
                  ConfigError);
  const auto single = bench::external_factory(dir.path / "seq.base.jsonl");
  CHECK_THROWS_AS((void)bench::run_protocol(small_config(), {named("seq", "S5", f), named("seq2", "S5", f)}, single),
                  ConfigError);
  CHECK_THROWS_AS((void)bench::external_factory(dir.path / "missing.jsonl"), ConfigError);
}

TEST_CASE("report contents") {
  std::vector<bench::NamedSequence> seqs{named("a", "S5", ar_frames(40, 48, 0.9, 1.0, 1)),
                                         named("b", "S6", ar_frames(30, 48, 0.5, 1.0, 2)),
                                         named("c", "S6", ar_frames(5, 48, 0.5, 1.0, 3))};
  auto cfg = small_config();
  const auto result = bench::run_protocol(cfg, seqs, bench::zero_velocity_factory());
  const auto report = bench::build_report(cfg, result, "2026-01-01T00:00:00Z");

  const auto& models = report.at("runs").at(0).at("models");
  CHECK(models.at(1).at("parameters") == 48);
  CHECK(models.at(0).at("parameters") == 0);
  CHECK(report.at("sequences").at("skipped").size() == 1);

  // Objective: mean over subjects of their mean anchor error, brute force.
  std::map<std::string, std::vector<double>> per_subject;
  for (const auto& a : result.anchors) {
    if (a.source == "base") per_subject[a.subject].push_back(a.error);
  }
  double objective = 0.0;
  for (const auto& [_, v] : per_subject) objective += std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  objective /= static_cast<double>(per_subject.size());
  CHECK(report.at("objective").at("base").get<double>() == doctest::Approx(objective).epsilon(1e-12));

  TempDir dir("report");
  bench::write_report(dir.path, report);
  std::ifstream csv(dir.path / "curves_base_mpje.csv");
  std::string line;
  std::size_t rows = 0;
  std::getline(csv, line);
  CHECK(line == "horizon_ms,metric,value,count");
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 5);
  CHECK(fs::exists(dir.path / "curves_corrected_mpje.csv"));
  CHECK(bench::load_report(dir.path).at("curves").size() == 2);
}

TEST_CASE("reports are deterministic and merge") {
  const auto doc = nlohmann::json::parse(R"({"seed":21,"length":120,"individuals":[
      {"id":"S5","sequences":2,"coefficients":[0.8],"sigma":0.5,"dims":6,"trend":{"type":"sinusoid","amplitude":3,"period":30}},
      {"id":"S6","coefficients":[-0.3],"sigma":1.0,"dims":6}]})");
  const auto run = [&](const std::vector<std::size_t>& which) {
    const auto set = bench::synth(bench::SyntheticSpec::from_json(doc));
    std::vector<bench::NamedSequence> seqs;
    for (auto i : which) seqs.push_back({set.sequences[i].name, {}, set.sequences[i].sequence});
    auto cfg = small_config();
    cfg.anchor_stride = 2;
    return bench::build_report(cfg, bench::run_protocol(cfg, seqs, bench::zero_velocity_factory()), bench::utc_timestamp());
  };
  const auto a = run({0, 1, 2});
  const auto b = run({0, 1, 2});
  CHECK(bench::report_fingerprint(a) == bench::report_fingerprint(b));
  auto a2 = a;
  auto b2 = b;
  a2[bench::kTimestampField] = "x";
  b2[bench::kTimestampField] = "x";
  CHECK(a2.dump(2) == b2.dump(2));

  const auto merged = bench::merge_reports({run({0}), run({1, 2})}, "t");
  const auto whole = bench::curves_from_report(a);
  const auto parts = bench::curves_from_report(merged);
  REQUIRE(parts.size() == whole.size());
  for (std::size_t c = 0; c < whole.size(); ++c) {
    CHECK(parts[c].counts == whole[c].counts);
    for (std::size_t h = 0; h < whole[c].values.size(); ++h) {
      CHECK(parts[c].values[h] == doctest::Approx(whole[c].values[h]).epsilon(1e-12));
    }
  }
  CHECK(merged.at("objective").at("base").get<double>() ==
        doctest::Approx(a.at("objective").at("base").get<double>()).epsilon(1e-12));
  CHECK(merged.at("runs").size() == 2);
}

TEST_CASE("thread count does not change results") {
  std::vector<bench::NamedSequence> seqs;
  for (int i = 0; i < 9; ++i) {
    seqs.push_back(named("s" + std::to_string(i), i % 2 ? "S5" : "S6", ar_frames(60 + 7 * i, 6, 0.8, 1.0, i)));
  }
  auto cfg = small_config();
  cfg.threads = 1;
  const auto one = bench::build_report(cfg, bench::run_protocol(cfg, seqs, bench::zero_velocity_factory()), "t");
  cfg.threads = 4;
  const auto four = bench::build_report(cfg, bench::run_protocol(cfg, seqs, bench::zero_velocity_factory()), "t");
  CHECK(one.dump() == four.dump());
}
