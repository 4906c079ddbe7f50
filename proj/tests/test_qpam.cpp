#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "soniq/error.hpp"
#include "soniq/qpam.hpp"

using namespace soniq;
using namespace soniq::qpam;

namespace {

// Independent brute-force sum_{i<16} i^4 / 16, frozen: 178312 / 16.
constexpr double kUniformFourthMoment = 11144.5;

std::vector<double> random_signal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 10.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("qpam_encode") {
  std::vector<double> w(16, 0.0);
  w[0] = 5.0;
  auto s = qpam_encode(w, ShiftMode::kNone);
  CHECK(s.n_qubits() == 4);
  CHECK(s[0].real() == 1.0);

  const std::vector<double> flat(16, 3.0);
  s = qpam_encode(flat, ShiftMode::kNone);
  for (std::size_t i = 0; i < 16; ++i) CHECK(s[i].real() == doctest::Approx(0.25).epsilon(1e-15));

  std::vector<double> w34(16, 0.0);
  w34[0] = 3;
  w34[1] = 4;
  s = qpam_encode(w34, ShiftMode::kNone);
  CHECK(s[0].real() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(s[1].real() == doctest::Approx(0.8).epsilon(1e-15));

  CHECK_THROWS_AS(qpam_encode(flat, ShiftMode::kMinShift), DegenerateWindowError);
  CHECK_THROWS_AS(qpam_encode(std::vector<double>(16, 0.0), ShiftMode::kNone), DegenerateWindowError);
  CHECK_THROWS_AS(qpam_encode(std::vector<double>(15, 1.0), ShiftMode::kNone), ShapeError);
}

TEST_CASE("min-shift makes negative windows encodable") {
  const std::vector<double> w{-3, -1, -2, -3};
  auto s = qpam_encode(w, ShiftMode::kMinShift);
  // Shifted window is [0, 2, 1, 0].
  CHECK(s[0].real() == 0.0);
  CHECK(s[1].real() == doctest::Approx(2 / std::sqrt(5.0)));
  CHECK(s[2].real() == doctest::Approx(1 / std::sqrt(5.0)));
}

TEST_CASE("moment_observable") {
  const auto m4 = moment_observable(4, 16);
  REQUIRE(m4.weights.size() == 16);
  CHECK(m4.weights[0] == 0);
  CHECK(m4.weights[1] == 1);
  CHECK(m4.weights[2] == 16);
  CHECK(m4.weights[3] == 81);
  CHECK(m4.weights[15] == 50625);
  CHECK(moment_observable(1, 4).weights == std::vector<double>{0, 1, 2, 3});
  CHECK(moment_observable(2, 4).weights == std::vector<double>{0, 1, 4, 9});
}

TEST_CASE("rolling_moment examples") {
  const std::vector<double> flat(16, 2.5);
  auto r = rolling_moment(flat, {}, ShiftMode::kNone);
  REQUIRE(r.size() == 1);
  CHECK(*r.values[0] == doctest::Approx(kUniformFourthMoment).epsilon(1e-12));
  CHECK(std::abs(*r.values[0] - kUniformFourthMoment) < 1e-9);

  std::vector<double> last(16, 0.0);
  last[15] = 7.0;
  r = rolling_moment(last, {}, ShiftMode::kNone);
  CHECK(*r.values[0] == doctest::Approx(50625.0).epsilon(1e-14));

  CHECK_THROWS_AS(rolling_moment(std::vector<double>(15, 1.0), {}), ShapeError);
}

TEST_CASE("degenerate windows become gaps") {
  std::vector<double> sig(46, 1.0);
  for (std::size_t i = 20; i < 36; ++i) sig[i] = static_cast<double>(i);
  const auto r = rolling_moment(sig, {16, 10, 4}, ShiftMode::kMinShift);
  REQUIRE(r.size() == 4);
  CHECK(r.starts == std::vector<std::size_t>{0, 10, 20, 30});
  CHECK_FALSE(r.values[0].has_value());
  CHECK(r.values[1].has_value());
  CHECK(r.gap_count() == 1);
  CHECK(moments_csv(r).starts_with("start_index,value\n0,nan\n10,"));
}

TEST_CASE("classical_moment_oracle") {
  CHECK(classical_moment_oracle(std::vector<double>{1, 0, 0, 0}, 4, ShiftMode::kNone) == 0.0);
  CHECK(classical_moment_oracle(std::vector<double>{0, 0, 0, 1}, 4, ShiftMode::kNone) == 81.0);
  CHECK(classical_moment_oracle(std::vector<double>(16, 1.0), 4, ShiftMode::kNone) ==
        doctest::Approx(kUniformFourthMoment).epsilon(1e-14));
}

TEST_CASE("property: oracle equivalence, range and schedule on random signals") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 16 + trial * 7;
    const auto sig = random_signal(n, rng);
    for (auto mode : {ShiftMode::kMinShift, ShiftMode::kNone}) {
      const WindowSpec spec{16, 10, 4};
      const auto r = rolling_moment(sig, spec, mode);
      CHECK(r.size() == (n - 16) / 10 + 1);
      CHECK(max_oracle_deviation(sig, spec, mode, r) <= 1e-9);
      for (std::size_t k = 0; k < r.size(); ++k) {
        CHECK(r.starts[k] == k * 10);
        REQUIRE(r.values[k].has_value());
        CHECK(*r.values[k] >= 0.0);
        CHECK(*r.values[k] <= 50625.0 * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("property: scale invariance") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto w = random_signal(16, rng);
    const double c = scale(rng);
    std::vector<double> scaled(w);
    for (auto& v : scaled) v *= c;
    const auto obs = moment_observable(4, 16);
    const double a = expectation_diagonal(qpam_encode(w, ShiftMode::kMinShift), obs);
    const double b = expectation_diagonal(qpam_encode(scaled, ShiftMode::kMinShift), obs);
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, a));
  }
}

TEST_CASE("window spec validation") {
  CHECK_THROWS_AS(validate(WindowSpec{12, 10, 4}), ArgumentError);
  CHECK_THROWS_AS(validate(WindowSpec{16, 0, 4}), ArgumentError);
  CHECK(window_count(15, {}) == 0);
  CHECK(window_count(16, {}) == 1);
  CHECK(window_count(26, {}) == 2);
  CHECK(parse_shift_mode("none") == ShiftMode::kNone);
  CHECK_THROWS_AS(parse_shift_mode("abs"), ArgumentError);
}
