#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stoaux/auxfun.hpp"
#include "stoaux/context.hpp"
#include "stoaux/oracle.hpp"

namespace stoaux::app {

// A named evaluation. Index layouts:
//   G, Kplus, Kminus, K1, N     [n1, q, n2, n3]          params [p1, p2, p3]
//   nuG                          [n1, q1, q2, n2, n3]     params [p1, p2, p3]
//   PQaux (oracle only)          [n1, q, n2, n3, n4, branch 0=P 1=Q]
//   A                            [alpha]                  params [p]
//   B                            [alpha]                  params [pt]
//   incgamma                     [alpha, branch 0=P 1=Q]  params [z]
//   incbeta                      [n, n']                  params [z]
//   1F1                          [a, b]                   params [z]
//   besselI                      [l, sign]                params [z]
//   besselK                      [l]                      params [z]
struct Request {
  std::string function;
  std::vector<BigReal> indices;
  std::vector<BigReal> params;
};

const std::vector<std::string>& function_names();
bool has_oracle(const std::string& function);

// Analytic path (auxfun / specfun).
EvalReport evaluate(const Request& req, const EvalContext& ctx);
// Quadrature path; throws DomainError for functions without one.
BigReal evaluate_oracle(const Request& req, const QuadSpec& spec);

// One JSON-lines fixture record; `value` is a decimal string.
struct FixtureRecord {
  std::string id;
  Request request;
  int digits = 0;
  std::optional<std::string> value;
  std::optional<std::string> reason;  // set when no value could be produced
  std::optional<double> rel_tol;      // check tolerance, else implied by digits
  // decimal text of indices and params as read, written back verbatim
  std::vector<std::string> index_text;
  std::vector<std::string> param_text;
};

std::vector<FixtureRecord> read_fixtures(const std::string& path);
void write_fixtures(const std::string& path, const std::vector<FixtureRecord>& records);
std::string to_json_line(const FixtureRecord& rec);
FixtureRecord from_json_line(const std::string& line);

struct FixtureOutcome {
  std::string id;
  bool passed = false;
  bool unverified = false;  // record carries no value
  double rel_dev = 0.0;
  double tolerance = 0.0;
  std::string message;
};

// Compares the analytic path against every record.
std::vector<FixtureOutcome> check_fixtures(const std::vector<FixtureRecord>& records,
                                           const EvalContext& ctx, int jobs);
// Recomputes every record with the oracle at its stated digits.
std::vector<FixtureRecord> regenerate_fixtures(std::vector<FixtureRecord> records, int jobs);

// --- sweeps --------------------------------------------------------------

struct Range {
  std::vector<double> values;
  // "a,b,c" or "start:stop:step"
  static Range parse(const std::string& text);
};

enum class OutputFormat { CSV, JSON };

struct SweepSpec {
  Range n1{{0}};
  Range q{{0}};
  Range n2{{0.5}};
  Range n3{{0.5}};
  Range p2{{1}};
  Range t{{0}};
  std::optional<double> p1;  // unset means p1 = p2
  OutputFormat format = OutputFormat::CSV;
};

struct SweepPoint {
  long id = 0;
  OrderSpec order;
  ParamTriple params;
};

struct Sweep {
  std::vector<SweepPoint> points;
  long skipped = 0;
};

Sweep expand(const SweepSpec& spec);
// (n2, n3) ∈ {0.3,0.5,1.5}², p2 ∈ {0.5,2,8}, t ∈ {0,0.2,0.9}, n1, q ∈ {0,1}, p1 = p2.
SweepSpec acceptance_grid();

struct PointResult {
  SweepPoint point;
  std::optional<EvalReport> report;
  std::optional<BigReal> oracle;
  double oracle_time = 0.0;
  double rel_dev = 0.0;
  std::string error;
};

struct VerifySummary {
  std::vector<PointResult> rows;
  long skipped = 0;
  long failures = 0;  // deviation above tolerance or a numeric error
  double max_rel_dev = 0.0;
  double median_rel_dev = 0.0;
  double eval_seconds = 0.0;
  double oracle_seconds = 0.0;
};

VerifySummary verify(const Sweep& sweep, double tolerance, const EvalContext& ctx,
                     const QuadSpec& quad, int jobs);

struct BenchRow {
  SweepPoint point;
  double integer_median = 0.0;
  double ladder_median = 0.0;
  double oracle_median = 0.0;
  bool unstable = false;
  std::string error;
};

struct BenchSummary {
  std::vector<BenchRow> rows;
  double integer_median = 0.0;
  double ladder_median = 0.0;
  double oracle_median = 0.0;
  double ladder_over_integer = 0.0;
  double oracle_over_ladder = 0.0;
};

// Times G_integer on the matched integer point (indices rounded half up),
// evaluate_G on the point itself and quad_G at the same digits.
BenchSummary bench(const Sweep& sweep, int repetitions, const EvalContext& ctx, bool with_oracle);

double median(std::vector<double> xs);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const SweepPoint& p, const EvalReport& r, int digits);

// Runs body(i) for i in [0, n) on `jobs` OpenMP threads at the caller's precision,
// rethrowing the first exception after the loop.
void parallel_for(long n, int jobs, const std::function<void(long)>& body);

}  // namespace stoaux::app
