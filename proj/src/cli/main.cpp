#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stoaux/app.hpp"
#include "stoaux/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace stoaux;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitFixture = 4;

int default_jobs() {
#ifdef _OPENMP
  return omp_get_num_procs();
#else
  return 1;
#endif
}

struct Common {
  int digits = digits_from_env();
  int jobs = default_jobs();
  long max_terms = 10000;
  std::optional<double> rel_tol;

  EvalContext context() const {
    EvalContext ctx;
    ctx.digits = digits;
    ctx.ctl.max_terms = max_terms;
    ctx.ctl.rel_tol = rel_tol;
    return ctx;
  }
};

struct EvalArgs {
  std::string function;
  std::string n1 = "0", q = "0", q1, q2 = "0", n2 = "0", n3 = "0", n4;
  std::optional<std::string> p1, p3, t;
  std::string p2 = "1";
  std::string alpha, pt, z, p, a, b, n, nprime, l, sign = "1", branch = "P";
};

struct SweepArgs {
  std::string n1 = "0", q = "0", n2 = "0.5", n3 = "0.5", p2 = "1", t = "0";
  std::optional<double> p1;
  std::string grid;
  std::string format = "csv";
  std::string output;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--digits", c.digits, "significant digits (default $STOAUX_DIGITS or 32)")
      ->check(CLI::Range(kMinDigits, 2000));
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--max-terms", c.max_terms, "series term budget")->check(CLI::PositiveNumber);
  cmd->add_option("--rel-tol", c.rel_tol, "series stopping tolerance");
}

void add_sweep(CLI::App* cmd, SweepArgs& s) {
  cmd->add_option("--n1", s.n1, "values or start:stop:step");
  cmd->add_option("--q", s.q, "values or start:stop:step");
  cmd->add_option("--n2", s.n2, "values or start:stop:step");
  cmd->add_option("--n3", s.n3, "values or start:stop:step");
  cmd->add_option("--p2", s.p2, "values or start:stop:step");
  cmd->add_option("--t", s.t, "p3 = p2 t; values or start:stop:step");
  cmd->add_option("--p1", s.p1, "fixed p1 (default p1 = p2)");
  cmd->add_option("--grid", s.grid, "preset grid")->check(CLI::IsMember({"acceptance"}));
  cmd->add_option("--format", s.format)->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", s.output, "report file (default stdout)");
}

app::SweepSpec sweep_spec(const SweepArgs& a) {
  app::SweepSpec s;
  if (a.grid == "acceptance") {
    s = app::acceptance_grid();
  } else {
    s.n1 = app::Range::parse(a.n1);
    s.q = app::Range::parse(a.q);
    s.n2 = app::Range::parse(a.n2);
    s.n3 = app::Range::parse(a.n3);
    s.p2 = app::Range::parse(a.p2);
    s.t = app::Range::parse(a.t);
    s.p1 = a.p1;
  }
  s.format = a.format == "json" ? app::OutputFormat::JSON : app::OutputFormat::CSV;
  return s;
}

BigReal num(const std::string& text, const char* name) {
  if (text.empty()) throw std::invalid_argument(std::string("--") + name + " is required");
  return BigReal::from_string(text);
}

app::Request build_request(const EvalArgs& a) {
  app::Request r;
  r.function = a.function;
  const std::string& f = a.function;
  auto triple = [&] {
    BigReal p2 = num(a.p2, "p2");
    BigReal p1 = a.p1 ? num(*a.p1, "p1") : p2;
    BigReal p3 = a.t ? p2 * num(*a.t, "t") : (a.p3 ? num(*a.p3, "p3") : BigReal(0));
    r.params = {p1, p2, p3};
  };
  auto branch = [&] {
    if (a.branch == "P") return BigReal(0);
    if (a.branch == "Q") return BigReal(1);
    throw std::invalid_argument("--branch must be P or Q");
  };
  if (f == "G" || f == "Kplus" || f == "K1" || f == "N") {
    r.indices = {num(a.n1, "n1"), num(a.q, "q"), num(a.n2, "n2"), num(a.n3, "n3")};
    triple();
  } else if (f == "Kminus") {
    r.indices = {num(a.n1, "n1"), num(a.q1.empty() ? a.q : a.q1, "q1"), num(a.n2, "n2"),
                 num(a.n3, "n3")};
    triple();
  } else if (f == "nuG") {
    r.indices = {num(a.n1, "n1"), num(a.q1.empty() ? "0" : a.q1, "q1"), num(a.q2, "q2"),
                 num(a.n2, "n2"), num(a.n3, "n3")};
    triple();
  } else if (f == "PQaux") {
    r.indices = {num(a.n1, "n1"), num(a.q, "q"), num(a.n2, "n2"), num(a.n3, "n3"), num(a.n4, "n4"),
                 branch()};
    triple();
  } else if (f == "A") {
    r.indices = {num(a.alpha, "alpha")};
    r.params = {num(a.p, "p")};
  } else if (f == "B") {
    r.indices = {num(a.alpha, "alpha")};
    r.params = {num(a.pt, "pt")};
  } else if (f == "incgamma") {
    r.indices = {num(a.alpha, "alpha"), branch()};
    r.params = {num(a.z, "z")};
  } else if (f == "incbeta") {
    r.indices = {num(a.n, "n"), num(a.nprime, "nprime")};
    r.params = {num(a.z, "z")};
  } else if (f == "1F1") {
    r.indices = {num(a.a, "a"), num(a.b, "b")};
    r.params = {num(a.z, "z")};
  } else if (f == "besselI") {
    r.indices = {num(a.l, "l"), num(a.sign, "sign")};
    r.params = {num(a.z, "z")};
  } else if (f == "besselK") {
    r.indices = {num(a.l, "l")};
    r.params = {num(a.z, "z")};
  }
  return r;
}

json numbers(const std::vector<BigReal>& xs) {
  json j = json::array();
  for (const auto& x : xs) j.push_back(x.to_string(17));
  return j;
}

json report_json(const EvalReport& r, int digits) {
  return {{"value", r.value.to_string(digits)},
          {"abs_err", r.abs_err.to_string(3)},
          {"series_terms", r.series_terms},
          {"recurrence_steps", r.recurrence_steps},
          {"wall_time_s", r.wall_time}};
}

std::ostream& open_output(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path.empty()) return std::cout;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw std::invalid_argument("cannot write " + path);
  return *holder;
}

int run_eval(const EvalArgs& a, const Common& c) {
  const EvalContext ctx = c.context();
  PrecisionScope scope(ctx.bits());
  app::Request req = build_request(a);
  EvalReport r;
  if (a.function == "PQaux") {
    QuadSpec q;
    q.target_digits = c.digits;
    auto t0 = std::chrono::steady_clock::now();
    r.value = app::evaluate_oracle(req, q);
    r.abs_err = abs(r.value) * pow(BigReal(10), -static_cast<long>(c.digits));
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  } else {
    r = app::evaluate(req, ctx);
  }
  json out = report_json(r, c.digits);
  out["function"] = a.function;
  out["indices"] = numbers(req.indices);
  out["params"] = numbers(req.params);
  out["digits"] = c.digits;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_verify(const SweepArgs& s, const Common& c, double tol, int oracle_digits) {
  const EvalContext ctx = c.context();
  PrecisionScope scope(ctx.bits());
  const app::SweepSpec spec = sweep_spec(s);
  const app::Sweep sweep = app::expand(spec);
  QuadSpec quad;
  quad.target_digits = oracle_digits;
  app::VerifySummary v = app::verify(sweep, tol, ctx, quad, c.jobs);

  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_output(s.output, holder);
  if (spec.format == app::OutputFormat::CSV) {
    os << "id,n1,q,n2,n3,p1,p2,p3,value,abs_err,terms,time_s,oracle,rel_dev,status\n";
    for (const auto& r : v.rows) {
      std::ostringstream row;
      if (r.report) {
        app::write_csv_row(row, r.point, *r.report, c.digits);
      } else {
        EvalReport empty;
        app::write_csv_row(row, r.point, empty, c.digits);
      }
      std::string line = row.str();
      line.pop_back();
      os << line << ',' << (r.oracle ? r.oracle->to_string(oracle_digits) : "") << ','
         << r.rel_dev << ','
         << (r.error.empty() ? (r.rel_dev <= tol ? "ok" : "exceeds") : "error: " + r.error)
         << '\n';
    }
  } else {
    json rows = json::array();
    for (const auto& r : v.rows) {
      json j = r.report ? report_json(*r.report, c.digits) : json::object();
      j["id"] = r.point.id;
      j["oracle"] = r.oracle ? json(r.oracle->to_string(oracle_digits)) : json(nullptr);
      j["rel_dev"] = r.rel_dev;
      if (!r.error.empty()) j["error"] = r.error;
      rows.push_back(j);
    }
    os << json{{"points", rows}}.dump(2) << '\n';
  }
  json summary{{"points", v.rows.size()},  {"skipped", v.skipped},
               {"failures", v.failures},   {"max_rel_dev", v.max_rel_dev},
               {"median_rel_dev", v.median_rel_dev}, {"tolerance", tol},
               {"eval_seconds", v.eval_seconds}, {"oracle_seconds", v.oracle_seconds}};
  std::cerr << summary.dump() << '\n';
  return v.failures == 0 ? 0 : kExitNumeric;
}

int run_bench(const SweepArgs& s, const Common& c, int reps, bool no_oracle) {
  const EvalContext ctx = c.context();
  PrecisionScope scope(ctx.bits());
  const app::Sweep sweep = app::expand(sweep_spec(s));
  app::BenchSummary b = app::bench(sweep, reps, ctx, !no_oracle);
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_output(s.output, holder);
  os << "id,integer_s,ladder_s,oracle_s,unstable,error\n";
  for (const auto& r : b.rows)
    os << r.point.id << ',' << r.integer_median << ',' << r.ladder_median << ','
       << r.oracle_median << ',' << (r.unstable ? 1 : 0) << ',' << r.error << '\n';
  json summary{{"points", b.rows.size()},
               {"integer_median_s", b.integer_median},
               {"ladder_median_s", b.ladder_median},
               {"oracle_median_s", b.oracle_median},
               {"ladder_over_integer", b.ladder_over_integer},
               {"oracle_over_ladder", b.oracle_over_ladder}};
  std::cerr << summary.dump() << '\n';
  return 0;
}

int run_golden(const std::string& mode, const std::string& path, const Common& c) {
  const EvalContext ctx = c.context();
  PrecisionScope scope(ctx.bits());
  auto records = app::read_fixtures(path);
  if (mode == "regenerate") {
    app::write_fixtures(path, app::regenerate_fixtures(records, c.jobs));
    std::cerr << "regenerated " << records.size() << " fixtures in " << path << '\n';
    return 0;
  }
  long failed = 0, unverified = 0;
  for (const auto& o : app::check_fixtures(records, ctx, c.jobs)) {
    if (o.unverified) {
      ++unverified;
      std::cout << "unverified " << o.id << ": " << o.message << '\n';
    } else if (!o.passed) {
      ++failed;
      std::cout << "FAIL " << o.id << ": " << o.message << '\n';
    }
  }
  std::cout << records.size() - failed - unverified << " passed, " << failed << " failed, "
            << unverified << " unverified\n";
  return failed == 0 ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Auxiliary functions for Slater-type orbitals with non-integer quantum numbers"};
  app.require_subcommand(1);
  Common common;

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate one function");
  eval->add_option("function", ea.function)->required()->check(CLI::IsMember(app::function_names()));
  for (auto [name, target] : std::initializer_list<std::pair<const char*, std::string*>>{
           {"--n1", &ea.n1}, {"--q", &ea.q},       {"--q1", &ea.q1}, {"--q2", &ea.q2},
           {"--n2", &ea.n2}, {"--n3", &ea.n3},     {"--n4", &ea.n4}, {"--p2", &ea.p2},
           {"--alpha", &ea.alpha}, {"--pt", &ea.pt}, {"--z", &ea.z}, {"--p", &ea.p},
           {"--a", &ea.a},   {"--b", &ea.b},       {"--n", &ea.n},   {"--nprime", &ea.nprime},
           {"--l", &ea.l},   {"--sign", &ea.sign}, {"--branch", &ea.branch}})
    eval->add_option(name, *target);
  eval->add_option("--p1", ea.p1, "default p2");
  eval->add_option("--p3", ea.p3);
  eval->add_option("--t", ea.t, "p3 = p2 t");
  add_common(eval, common);

  SweepArgs va;
  double tol = 1e-8;
  int oracle_digits = 12;
  auto* verify = app.add_subcommand("verify", "compare evaluate_G with quadrature over a sweep");
  add_sweep(verify, va);
  verify->add_option("--tol", tol, "relative tolerance");
  verify->add_option("--oracle-digits", oracle_digits, "quadrature target digits")
      ->check(CLI::Range(6, 200));
  add_common(verify, common);

  SweepArgs ba;
  int reps = 5;
  bool no_oracle = false;
  auto* benchcmd = app.add_subcommand("bench", "time integer branch, ladder and quadrature");
  add_sweep(benchcmd, ba);
  benchcmd->add_option("--repetitions", reps)->check(CLI::PositiveNumber);
  benchcmd->add_flag("--no-oracle", no_oracle);
  add_common(benchcmd, common);

  std::string mode, fixtures = "fixtures/golden.jsonl";
  auto* golden = app.add_subcommand("golden", "check or regenerate golden fixtures");
  golden->add_option("mode", mode)->required()->check(CLI::IsMember({"check", "regenerate"}));
  golden->add_option("--fixtures", fixtures, "fixture file");
  add_common(golden, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(ea, common);
    if (*verify) return run_verify(va, common, tol, oracle_digits);
    if (*benchcmd) return run_bench(ba, common, reps, no_oracle);
    return run_golden(mode, fixtures, common);
  } catch (const FixtureError& e) {
    std::cerr << "fixture error: " << e.what() << '\n';
    return kExitFixture;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  }
}
