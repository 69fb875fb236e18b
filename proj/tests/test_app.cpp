#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stoaux/app.hpp"
#include "stoaux/errors.hpp"
#include "test_util.hpp"

using namespace stoaux;
using namespace stoaux::app;
using test::R;

namespace {

const std::string kGolden = std::string(STOAUX_SOURCE_DIR) + "/fixtures/golden.jsonl";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const char* name) { return std::string("/tmp/stoaux_test_") + name; }

void write_text(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("fixture lines round-trip") {
  test::Working w;
  const std::string line =
      R"({"digits": 30, "function": "G", "id": "x", "indices": ["0", "1", "0.3", "1.5"], "params": ["2", "2", "0.4"], "value": "1.25e-01"})";
  const FixtureRecord r = from_json_line(line);
  CHECK(r.id == "x");
  CHECK(r.request.function == "G");
  CHECK(r.request.indices.size() == 4);
  CHECK(r.request.indices[2] == R("0.3"));
  CHECK(r.digits == 30);
  CHECK(*r.value == "1.25e-01");
  CHECK(to_json_line(r) == line);
}

TEST_CASE("malformed fixtures raise FixtureError") {
  CHECK_THROWS_AS(from_json_line("{not json"), FixtureError);
  CHECK_THROWS_AS(from_json_line(R"({"id": "a", "function": "G"})"), FixtureError);
  CHECK_THROWS_AS(from_json_line(R"({"id": "a", "function": "G", "indices": [], "params": [], "digits": 30, "value": "abc"})"),
                  FixtureError);
  CHECK_THROWS_AS(read_fixtures("/nonexistent/golden.jsonl"), FixtureError);
  const std::string dup = temp_path("dup.jsonl");
  const std::string rec =
      R"({"digits": 30, "function": "A", "id": "same", "indices": ["0"], "params": ["1"], "value": "0.36787944117144232159552377016146"})";
  write_text(dup, rec + "\n" + rec + "\n");
  CHECK_THROWS_AS(read_fixtures(dup), FixtureError);
  std::remove(dup.c_str());
}

TEST_CASE("rewriting the shipped fixture file is byte-stable") {
  const auto records = read_fixtures(kGolden);
  REQUIRE(records.size() >= 20);
  const std::string out = temp_path("rewrite.jsonl");
  write_fixtures(out, records);
  CHECK(slurp(out) == slurp(kGolden));
  std::remove(out.c_str());
}

TEST_CASE("shipped fixtures pass and a tampered one is reported by id") {
  auto records = read_fixtures(kGolden);
  const auto outcomes = check_fixtures(records, {}, 1);
  for (const auto& o : outcomes) CHECK_MESSAGE(o.passed, o.id << ": " << o.message);

  std::vector<FixtureRecord> tampered;
  for (const auto& r : records)
    if (r.request.function == "G") {
      tampered.push_back(r);
      break;
    }
  REQUIRE(tampered.size() == 1);
  std::string& v = *tampered[0].value;
  v[3] = v[3] == '9' ? '1' : static_cast<char>(v[3] + 1);
  const auto bad = check_fixtures(tampered, {}, 1);
  CHECK_FALSE(bad[0].passed);
  CHECK(bad[0].id == tampered[0].id);
  CHECK(bad[0].message.find("exceeds") != std::string::npos);

  FixtureRecord unset = records[0];
  unset.value.reset();
  unset.reason = "no oracle";
  const auto u = check_fixtures({unset}, {}, 1);
  CHECK(u[0].unverified);
}

TEST_CASE("ranges") {
  const Range a = Range::parse("0.1:0.5:0.2");
  REQUIRE(a.values.size() == 3);
  CHECK(a.values[1] == doctest::Approx(0.3));
  CHECK(a.values[2] == doctest::Approx(0.5));
  CHECK(Range::parse("1,2.5,4").values.size() == 3);
  CHECK(Range::parse("").values.empty());
  CHECK_THROWS(Range::parse("1:2:0"));
  CHECK_THROWS(Range::parse("1,x"));
}

TEST_CASE("sweep expansion skips invalid points") {
  SweepSpec s;
  s.t = Range::parse("0,1.5,-0.5");
  s.n2 = Range::parse("0.5,-2");
  const Sweep sw = expand(s);
  CHECK(sw.points.size() == 2);
  CHECK(sw.skipped == 4);
  CHECK(sw.points[0].id == 1);
  CHECK(sw.points[1].params.p3 == R("-0.5"));

  SweepSpec empty;
  empty.p2 = Range{};
  CHECK(expand(empty).points.empty());

  const Sweep grid = expand(acceptance_grid());
  CHECK(grid.points.size() == 324);
  CHECK(grid.skipped == 0);
}

TEST_CASE("integer sweep matches the integer branch bit for bit") {
  test::Working w;
  SweepSpec s;
  s.n2 = Range::parse("0,1,2");
  s.n3 = Range::parse("1,3");
  s.t = Range::parse("0,0.4");
  s.q = Range::parse("0,1");
  for (const SweepPoint& p : expand(s).points) {
    const ScreeningParams params(p.params.p1, p.params.p2, p.params.p3);
    Request req{"G", {BigReal(p.order.n1), BigReal(p.order.q), p.order.n2, p.order.n3},
                {p.params.p1, p.params.p2, p.params.p3}};
    CHECK(evaluate(req, {}).value == G_integer(p.order, params).value);
  }
}

TEST_CASE("named evaluation") {
  test::Working w;
  CHECK(evaluate({"B", {R(1)}, {R(0)}}, {}).value.is_zero());
  CHECK(test::close(evaluate({"A", {R(0)}, {R(1)}}, {}).value, exp(R(-1)), 1e-30));
  CHECK(test::close(evaluate({"besselK", {R(0)}, {R(1)}}, {}).value,
                    sqrt(const_pi() / R(2)) * exp(R(-1)), 1e-30));
  CHECK_THROWS_AS(evaluate({"nope", {}, {}}, {}), DomainError);
  CHECK_THROWS_AS(evaluate({"G", {R(0)}, {R(1)}}, {}), DomainError);
  CHECK_THROWS_AS(evaluate({"G", {R("0.5"), R(0), R(0), R(0)}, {R(1), R(1), R(0)}}, {}), DomainError);
  CHECK_THROWS_AS(evaluate({"PQaux", {}, {}}, {}), DomainError);
  CHECK_THROWS_AS(evaluate_oracle({"A", {R(0)}, {R(1)}}, {}), DomainError);
  CHECK(has_oracle("G"));
  CHECK_FALSE(has_oracle("incbeta"));
  for (const auto& f : function_names()) CHECK_FALSE(f.empty());
}

TEST_CASE("verify reports deviations and timings") {
  test::Working w;
  SweepSpec s;
  s.n2 = Range::parse("0.5");
  s.n3 = Range::parse("1.5");
  s.t = Range::parse("0.3");
  QuadSpec q;
  q.target_digits = 12;
  const VerifySummary v = verify(expand(s), 1e-8, {}, q, 1);
  REQUIRE(v.rows.size() == 1);
  CHECK(v.failures == 0);
  CHECK(v.max_rel_dev < 1e-10);
  CHECK(v.oracle_seconds > 0.0);
}

TEST_CASE("csv output") {
  test::Working w;
  std::ostringstream os;
  write_csv_header(os);
  SweepPoint p{3, {0, 0, R("0.5"), R("1.5")}, {R(1), R(1), R(0)}};
  EvalReport r;
  r.value = R("0.25");
  r.abs_err = R("1e-40");
  r.series_terms = 10;
  r.recurrence_steps = 2;
  write_csv_row(os, p, r, 10);
  const std::string text = os.str();
  CHECK(text.rfind("id,n1,q,n2,n3,p1,p2,p3,value,abs_err,terms,time_s\n", 0) == 0);
  CHECK(text.find("\n3,0,0,") != std::string::npos);
  CHECK(text.find(",12,") != std::string::npos);
}

TEST_CASE("helpers") {
  CHECK(median({}) == 0.0);
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  std::atomic<long> sum{0};
  parallel_for(100, 4, [&](long i) { sum += i; });
  CHECK(sum == 4950);
  CHECK_THROWS_AS(parallel_for(10, 2, [](long i) { if (i == 7) throw DomainError("seven"); }), DomainError);
}
