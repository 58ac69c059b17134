#include "toricj/property_lab.hpp"

#include <doctest.h>

using namespace toricj;

TEST_CASE("suite names and unknown suites") {
  CHECK(lab::suite_names() == std::vector<std::string>{"convexity", "thresholds", "regmax", "legendre"});
  CHECK_THROWS_AS(lab::run_suite("spectral", 1, 10), lab::UnknownSuite);
}

TEST_CASE("sample streams are reproducible and distinct") {
  auto a = lab::sample_stream(42, "regmax", 7);
  auto b = lab::sample_stream(42, "regmax", 7);
  auto c = lab::sample_stream(42, "regmax", 8);
  auto d = lab::sample_stream(43, "regmax", 7);
  auto e = lab::sample_stream(42, "legendre", 7);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  CHECK(x != e());
}

TEST_CASE("small suites pass and are deterministic") {
  for (const auto& name : lab::suite_names()) {
    CAPTURE(name);
    const lab::SuiteReport r = lab::run_suite(name, 5, 200);
    CHECK(r.passed());
    CHECK(r.counterexamples.empty());
    for (const auto& t : r.checks) CHECK(t.evaluated > 0);
    const lab::SuiteReport again = lab::run_suite(name, 5, 200);
    REQUIRE(again.checks.size() == r.checks.size());
    for (std::size_t i = 0; i < r.checks.size(); ++i) CHECK(again.checks[i].worst == r.checks[i].worst);
  }
}

TEST_CASE("threshold lines") {
  const lab::SuiteReport r = lab::run_thresholds(1, 10, {{1, 2, 1}});
  REQUIRE_FALSE(r.notes.empty());
  CHECK(r.notes.front().find("eps3 = 0.125") != std::string::npos);
  CHECK(r.notes.front().find("eps4 = 1") != std::string::npos);
  CHECK(r.passed());
}
