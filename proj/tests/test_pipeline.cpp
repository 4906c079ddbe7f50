#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "soniq/channels.hpp"
#include "soniq/error.hpp"
#include "soniq/reduction.hpp"
#include "soniq/synth.hpp"

using namespace soniq;

TEST_CASE("parse_csv") {
  const auto set = parse_csv("a,b\n1,2\n3,4\n5,6\n7,8\n", 250.0);
  CHECK(set.names == std::vector<std::string>{"a", "b"});
  CHECK(set.data[0] == std::vector<double>{1, 3, 5, 7});
  CHECK(set.data[1] == std::vector<double>{2, 4, 6, 8});
  CHECK(set.sample_rate == 250.0);

  const auto meta = parse_csv("# sample_rate=1000\nx\n-1.5\n2e3\n");
  CHECK(meta.sample_rate == 1000.0);
  CHECK(meta.data[0] == std::vector<double>{-1.5, 2000.0});
  CHECK(parse_csv("# sample_rate=1000\nx\n1\n", 50.0).sample_rate == 50.0);
}

TEST_CASE("parse_csv errors name the location") {
  try {
    parse_csv("a,b\n1,2\n3,x\n", 1.0);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 2);
    CHECK(std::string(e.what()).find("row 3, column 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_csv("a,b\n1,2\n3\n", 1.0), ParseError);
  CHECK_THROWS_AS(parse_csv("a,a\n1,2\n", 1.0), ParseError);
  CHECK_THROWS_AS(parse_csv("a\n1\n"), ParseError);  // no sample rate
  CHECK_THROWS_AS(parse_csv("", 1.0), ParseError);
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", 1.0), IoError);
}

TEST_CASE("csv round trip is exact") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0, 1e3);
  ChannelSet set{{"c0", "c1", "c2"}, 512.0, {}};
  for (int c = 0; c < 3; ++c) {
    std::vector<double> v(100);
    for (auto& x : v) x = n(rng);
    set.data.push_back(v);
  }
  const auto path = std::filesystem::temp_directory_path() / "soniq_roundtrip.csv";
  write_csv(set, path);
  const auto back = load_csv(path);
  CHECK(back.names == set.names);
  CHECK(back.data == set.data);
  CHECK(back.sample_rate == 512.0);
  std::filesystem::remove(path);
}

TEST_CASE("downsample") {
  std::vector<double> x(1000);
  std::iota(x.begin(), x.end(), 0.0);
  CHECK(downsample(x, 500) == std::vector<double>{0, 500});
  CHECK(downsample(x, 1) == x);
  x.resize(999);
  CHECK(downsample(x, 500).size() == 2);
  CHECK_THROWS_AS(downsample(x, 0), ArgumentError);
  for (std::size_t len : {1u, 7u, 500u, 501u, 1234u}) {
    for (std::size_t f : {1u, 3u, 500u}) {
      CHECK(downsample(std::vector<double>(len, 1.0), f).size() == (len - 1) / f + 1);
    }
  }
}

TEST_CASE("segment_average") {
  CHECK(segment_average(std::vector<double>{1, 2, 3, 4, 5, 6}, 3).values ==
        std::vector<double>{1.5, 3.5, 5.5});
  CHECK(segment_average(std::vector<double>{1, 2, 3, 4, 5}, 2).values ==
        std::vector<double>{2.0, 4.5});
  CHECK(segment_average(std::vector<double>(20, 4.25), 9).values == std::vector<double>(9, 4.25));
  CHECK_THROWS_AS(segment_average(std::vector<double>{1, 2}, 3), ShapeError);

  const std::vector<std::optional<double>> gappy{1.0, std::nullopt, 3.0, std::nullopt};
  CHECK(segment_average(gappy, 2).values == std::vector<double>{1.0, 3.0});
  const std::vector<std::optional<double>> all_gap{std::nullopt, std::nullopt, 1.0};
  CHECK_THROWS_AS(segment_average(all_gap, 2), DegenerateWindowError);
}

TEST_CASE("property: weighted segment means reproduce the global mean") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5, 5);
  for (std::size_t len = 9; len < 200; len += 13) {
    std::vector<double> x(len);
    for (auto& v : x) v = u(rng);
    const auto bounds = segment_bounds(len, 9);
    const auto r = segment_average(x, 9);
    double weighted = 0;
    for (std::size_t s = 0; s < 9; ++s) weighted += r[s] * static_cast<double>(bounds[s + 1] - bounds[s]);
    const double mean = std::accumulate(x.begin(), x.end(), 0.0);
    CHECK(std::abs(weighted / static_cast<double>(len) - mean / static_cast<double>(len)) < 1e-12);
    CHECK(bounds.back() == len);
  }
}

TEST_CASE("renormalize_couplings") {
  std::vector<ReducedSeries> in{{{2, -1, 1.5, 6}}, {{0.5, 0.25, -0.5, 0.1}}, {{0, 0, 0, 3}}};
  const auto out = renormalize_couplings(in, 3);
  REQUIRE(out.couplings.size() == 4);
  REQUIRE(out.couplings[0].size() == 3);
  CHECK(out.couplings[0][0] == 1.0);
  CHECK(out.couplings[1][0] == -0.5);
  CHECK(out.couplings[3][0] == 3.0);
  for (std::size_t s = 0; s < 4; ++s) CHECK(std::abs(out.couplings[s][1]) <= 1.0);
  CHECK(out.flagged_channels == std::vector<std::size_t>{2});
  CHECK(out.couplings[3][2] == 3.0);

  std::vector<ReducedSeries> ragged{{{1, 2}}, {{1}}};
  CHECK_THROWS_AS(renormalize_couplings(ragged, 1), ShapeError);
}

TEST_CASE("renormalize_field") {
  const ReducedSeries m{{2, 4, 6, 8, 10, 12, 14, 16, 18}};
  const auto h = renormalize_field(m, 3);
  CHECK(h.values == std::vector<double>{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25});
  const ReducedSeries ident{{0.3, 1.0, 7.0}};
  CHECK(renormalize_field(ident, 1).values == ident.values);
  CHECK_THROWS_AS(renormalize_field(ReducedSeries{{1, 0, 2}}, 1), ArgumentError);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int t = 0; t < 200; ++t) {
    ReducedSeries r{{u(rng), u(rng), u(rng), u(rng), u(rng)}};
    CHECK(renormalize_field(r, static_cast<std::size_t>(t % 5))[static_cast<std::size_t>(t % 5)] == 1.0);
  }
}

TEST_CASE("synth_seizure") {
  SynthConfig cfg;
  cfg.duration_s = 30.0;
  cfg.onset_s = 12.0;
  cfg.offset_s = 27.0;
  cfg.preictal_lead_s = 5.0;
  cfg.n_channels = 4;
  const auto a = synth_seizure(cfg);
  const auto b = synth_seizure(cfg);
  CHECK(a.data == b.data);
  CHECK(a.names == std::vector<std::string>{"TT1", "TT2", "TT3", "TT4"});
  CHECK(a.n_samples() == 30000);

  cfg.seed += 1;
  CHECK(synth_seizure(cfg).data != a.data);

  SynthConfig bad = cfg;
  bad.offset_s = 5.0;
  CHECK_THROWS_AS(synth_seizure(bad), ArgumentError);
  bad = cfg;
  bad.offset_s = 40.0;
  CHECK_THROWS_AS(synth_seizure(bad), ArgumentError);
}

TEST_CASE("synth_seizure default shape and amplitude contrast") {
  const SynthConfig cfg;
  const auto set = synth_seizure(cfg);
  CHECK(set.n_channels() == 16);
  CHECK(set.n_samples() == 210000);
  CHECK(set.names[11] == "MST4");
  const auto on = static_cast<std::size_t>(cfg.onset_s * cfg.sample_rate);
  const auto off = static_cast<std::size_t>(cfg.offset_s * cfg.sample_rate);
  for (const auto& ch : set.data) {
    const std::span<const double> x(ch);
    CHECK(soniq::test::rms(x.subspan(on, off - on)) > 3.0 * soniq::test::rms(x.subspan(0, on)));
  }
}
