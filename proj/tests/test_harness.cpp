#include <doctest.h>

#include <algorithm>

#include "lawson/harness.hpp"

using namespace lawson;

namespace {

const CheckEntry* find(const VerificationSuite& s, const std::string& id) {
  for (const auto& c : s.checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("config text parsing") {
  RunConfig c;
  apply_config_text(c, "# comment\nm = 4\nk=3\n\nlevel = 4 # trailing\ntol_grad = 1e-9\nseed = 12\nsuite = groups\n");
  CHECK(c.m == 4);
  CHECK(c.k == 3);
  CHECK(c.level == 4);
  CHECK(c.tol_grad == 1e-9);
  CHECK(c.seed == 12);
  CHECK(c.suite == "groups");
}

TEST_CASE("config errors are usage errors") {
  RunConfig c;
  try {
    apply_config_text(c, "colour = blue\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Usage);
  }
  CHECK_THROWS_AS(apply_config_text(c, "m = three\n"), Error);
  CHECK_THROWS_AS(apply_config_text(c, "just words\n"), Error);
}

TEST_CASE("validation rejects unsupported parameters") {
  RunConfig c;
  c.k = 1;
  try {
    validate(c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedParameters);
  }
  c = RunConfig{};
  c.level = 1;
  CHECK_THROWS_AS(validate(c), Error);
  c = RunConfig{};
  c.suite = "nonsense";
  CHECK_THROWS_AS(validate(c), Error);
  c = RunConfig{};
  c.format = "ply";
  CHECK_THROWS_AS(validate(c), Error);
  CHECK_NOTHROW(validate(RunConfig{}));
}

TEST_CASE("group suite for M[3,2] passes") {
  RunConfig c;
  c.suite = "groups";
  const VerificationSuite s = run_suite(c);
  CHECK(s.pass());
  CHECK(find(s, "groups.order-full") != nullptr);
  CHECK(s.details["groups"]["orders"]["full"] == 48);
  const CheckEntry* ex = find(s, "groups.order-full-with-exchange");
  REQUIRE(ex != nullptr);
  CHECK(ex->status == Status::Skip);
  CHECK(!ex->reason.empty());
}

TEST_CASE("a single check can be selected") {
  RunConfig c;
  c.suite = "tessellation.cell-metrics";
  const VerificationSuite s = run_suite(c);
  REQUIRE(s.checks.size() == 1);
  CHECK(s.checks[0].id == "tessellation.cell-metrics");
  CHECK(s.pass());
  c.suite = "groups.no-such-check";
  CHECK_THROWS_AS(run_suite(c), Error);
}

TEST_CASE("suite json is identical for identical runs") {
  RunConfig c;
  c.level = 3;
  c.suite = "disc";
  c.seed = 17;
  const std::string a = suite_json(run_suite(c)).dump();
  const std::string b = suite_json(run_suite(c)).dump();
  CHECK(a == b);
}

TEST_CASE("text report lists every check") {
  RunConfig c;
  c.suite = "groups";
  const VerificationSuite s = run_suite(c);
  const std::string t = suite_text(s);
  for (const auto& e : s.checks) CHECK(t.find(e.id) != std::string::npos);
  CHECK(t.find("SKIP") != std::string::npos);
}
