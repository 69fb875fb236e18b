#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stoaux/app.hpp"
#include "stoaux/errors.hpp"

namespace stoaux::app {

using nlohmann::json;

namespace {

// Decimal text of a value that round-trips at its own precision.
std::string decimal(const BigReal& v) {
  if (v.is_integer() && abs(v) < BigReal(1e15)) return std::to_string(v.to_long());
  return v.to_string(bits_to_digits(v.bits()) + 2);
}

BigReal number_from(const json& j, const std::string& where) {
  if (j.is_string()) return BigReal::from_string(j.get<std::string>());
  if (j.is_number()) return BigReal::from_string(j.dump());
  throw FixtureError(where + ": expected a number or decimal string");
}

std::vector<BigReal> numbers_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw FixtureError(where + ": expected an array");
  std::vector<BigReal> out;
  for (const auto& e : j) out.push_back(number_from(e, where));
  return out;
}

json numbers_to(const std::vector<BigReal>& xs, const std::vector<std::string>& text) {
  json a = json::array();
  if (text.size() == xs.size()) {
    for (const auto& t : text) a.push_back(t);
  } else {
    for (const auto& x : xs) a.push_back(decimal(x));
  }
  return a;
}

std::vector<std::string> texts_from(const json& j) {
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(e.is_string() ? e.get<std::string>() : e.dump());
  return out;
}

// Sorted keys with ", " and ": " separators, ASCII only, so a rewrite of an
// unchanged file reproduces it byte for byte.
std::string dump_spaced(const json& j) {
  std::string out;
  if (j.is_object()) {
    out += '{';
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ", ";
      first = false;
      out += json(k).dump(-1, ' ', true) + ": " + dump_spaced(v);
    }
    return out + '}';
  }
  if (j.is_array()) {
    out += '[';
    for (size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + dump_spaced(j[i]);
    return out + ']';
  }
  return j.dump(-1, ' ', true);
}

}  // namespace

std::string to_json_line(const FixtureRecord& rec) {
  json j;
  j["id"] = rec.id;
  j["function"] = rec.request.function;
  j["indices"] = numbers_to(rec.request.indices, rec.index_text);
  j["params"] = numbers_to(rec.request.params, rec.param_text);
  j["digits"] = rec.digits;
  j["value"] = rec.value ? json(*rec.value) : json(nullptr);
  if (rec.reason) j["reason"] = *rec.reason;
  if (rec.rel_tol) j["rel_tol"] = *rec.rel_tol;
  return dump_spaced(j);
}

FixtureRecord from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw FixtureError(std::string("malformed fixture line: ") + e.what());
  }
  if (!j.is_object()) throw FixtureError("fixture line is not an object");
  for (const char* key : {"id", "function", "indices", "params", "digits", "value"})
    if (!j.contains(key)) throw FixtureError(std::string("fixture line lacks '") + key + "'");
  FixtureRecord rec;
  try {
    rec.id = j.at("id").get<std::string>();
    // parse numbers at a precision that holds every stated digit
    rec.digits = j.at("digits").get<int>();
    PrecisionScope scope(digits_to_bits(std::max(rec.digits, kDefaultDigits) + kGuardDigits));
    rec.request.function = j.at("function").get<std::string>();
    rec.request.indices = numbers_from(j.at("indices"), rec.id + ".indices");
    rec.request.params = numbers_from(j.at("params"), rec.id + ".params");
    rec.index_text = texts_from(j.at("indices"));
    rec.param_text = texts_from(j.at("params"));
    if (!j.at("value").is_null()) {
      rec.value = j.at("value").get<std::string>();
      BigReal::from_string(*rec.value);
    }
    if (j.contains("reason")) rec.reason = j.at("reason").get<std::string>();
    if (j.contains("rel_tol")) rec.rel_tol = j.at("rel_tol").get<double>();
  } catch (const json::exception& e) {
    throw FixtureError("fixture '" + rec.id + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FixtureError("fixture '" + rec.id + "': " + e.what());
  }
  return rec;
}

std::vector<FixtureRecord> read_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture file " + path);
  std::vector<FixtureRecord> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(from_json_line(line));
    } catch (const FixtureError& e) {
      throw FixtureError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t k = i + 1; k < out.size(); ++k)
      if (out[i].id == out[k].id) throw FixtureError(path + ": duplicate id '" + out[i].id + "'");
  return out;
}

void write_fixtures(const std::string& path, const std::vector<FixtureRecord>& records) {
  std::ofstream out(path);
  if (!out) throw FixtureError("cannot write fixture file " + path);
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

std::vector<FixtureOutcome> check_fixtures(const std::vector<FixtureRecord>& records,
                                           const EvalContext& ctx, int jobs) {
  std::vector<FixtureOutcome> out(records.size());
  parallel_for(static_cast<long>(records.size()), jobs, [&](long i) {
    const FixtureRecord& rec = records[i];
    FixtureOutcome& o = out[i];
    o.id = rec.id;
    o.tolerance = rec.rel_tol ? *rec.rel_tol
                              : std::pow(10.0, -(std::min(rec.digits, ctx.digits) - 4));
    if (!rec.value) {
      o.unverified = true;
      o.passed = true;
      o.message = rec.reason.value_or("no value recorded");
      return;
    }
    try {
      PrecisionScope scope(ctx.bits());
      BigReal got;
      if (rec.request.function == "PQaux") {
        QuadSpec spec;
        spec.target_digits = std::min(rec.digits, ctx.digits);
        spec.parallel = false;
        got = evaluate_oracle(rec.request, spec);
      } else {
        got = evaluate(rec.request, ctx).value;
      }
      BigReal expected = BigReal::from_string(*rec.value);
      o.rel_dev = rel_diff(got, expected);
      o.passed = o.rel_dev <= o.tolerance;
      if (!o.passed) {
        std::ostringstream msg;
        msg << "relative deviation " << o.rel_dev << " exceeds " << o.tolerance;
        o.message = msg.str();
      }
    } catch (const std::exception& e) {
      o.passed = false;
      o.message = e.what();
    }
  });
  return out;
}

std::vector<FixtureRecord> regenerate_fixtures(std::vector<FixtureRecord> records, int jobs) {
  parallel_for(static_cast<long>(records.size()), jobs, [&](long i) {
    FixtureRecord& rec = records[i];
    QuadSpec spec;
    spec.target_digits = rec.digits;
    spec.parallel = false;
    try {
      PrecisionScope scope(digits_to_bits(rec.digits + kGuardDigits));
      BigReal v = evaluate_oracle(rec.request, spec);
      rec.value = v.to_string(rec.digits);
      rec.reason.reset();
    } catch (const std::exception& e) {
      rec.value.reset();
      rec.reason = e.what();
    }
  });
  return records;
}

}  // namespace stoaux::app
