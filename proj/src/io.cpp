#include "schwarz/io.hpp"

#include "schwarz/errors.hpp"
#include "schwarz/mollifier.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

namespace schwarz::io {

namespace {

const json& params_of(const json& doc) {
  static const json empty = json::object();
  if (!doc.contains("params")) return empty;
  const json& p = doc.at("params");
  if (!p.is_object()) throw InvalidInput("\"params\" must be an object");
  return p;
}

double number(const json& obj, const char* key) {
  if (!obj.contains(key)) throw InvalidInput(std::string("missing parameter \"") + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number()) throw InvalidInput(std::string("parameter \"") + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
  return obj.contains(key) ? number(obj, key) : fallback;
}

std::vector<double> numbers(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_array()) {
    throw InvalidInput(std::string("\"") + key + "\" must be an array of numbers");
  }
  std::vector<double> out;
  for (const json& v : obj.at(key)) {
    if (!v.is_number()) throw InvalidInput(std::string("\"") + key + "\" must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string kind_of(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string()) {
    throw InvalidInput("spec needs a string \"kind\"");
  }
  return doc.at("kind").get<std::string>();
}

// Reject keys we would silently ignore; typos otherwise go unnoticed.
void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& what) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) throw InvalidInput("unknown key \"" + key + "\" in " + what);
  }
}

int sample_count_of(const json& p) {
  const double n = number_or(p, "sample_count", BoundaryData::kDefaultSamples);
  if (!(n >= 8 && n <= 1 << 22) || n != std::floor(n)) throw InvalidInput("sample_count must be an integer >= 8");
  return static_cast<int>(n);
}

json point(DiskPoint z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

Metric1D metric_from_json(const json& doc) {
  const std::string kind = kind_of(doc);
  only_keys(doc, {"kind", "params", "u", "R"}, "metric spec");
  const json& p = params_of(doc);
  if (kind == "constant") return families::constant(number_or(p, "value", 1.0));
  if (kind == "exponential") {
    return families::exponential(number(p, "c"), number_or(p, "lo", -1.0), number_or(p, "hi", 1.0));
  }
  if (kind == "cosine") return families::cosine();
  if (kind == "hyperbolic") return families::hyperbolic();
  if (kind == "secant") return families::secant();
  if (kind == "parabolic") return families::parabolic(number(p, "c"));
  if (kind == "lemma_psi") return families::lemma_psi(number(p, "a"), number(p, "s"));
  if (kind == "lemma_psi_mollified") {
    return families::lemma_psi_mollified(number(p, "a"), number(p, "s"), number(p, "epsilon"));
  }
  if (kind == "tabulated") {
    const json& src = doc.contains("u") ? doc : p;
    return families::tabulated(numbers(src, "u"), numbers(src, "R"));
  }
  if (kind == "half_plane_one_minus_exp") return families::half_plane_one_minus_exp();
  throw InvalidInput("unknown metric kind \"" + kind + "\"");
}

BoundaryData boundary_from_json(const json& doc) {
  const std::string kind = kind_of(doc);
  if (kind == "samples") {
    only_keys(doc, {"kind", "theta", "values", "params"}, "boundary spec");
    const json& p = params_of(doc);
    return BoundaryData::from_samples(numbers(doc, "theta"), numbers(doc, "values"), sample_count_of(p));
  }
  if (kind == "expression-preset") {
    only_keys(doc, {"kind", "name", "params"}, "boundary spec");
    if (!doc.contains("name") || !doc.at("name").is_string()) throw InvalidInput("preset needs a string \"name\"");
    const std::string name = doc.at("name").get<std::string>();
    const json& p = params_of(doc);
    const int n = sample_count_of(p);
    if (name == "step") return BoundaryData::step(number_or(p, "amplitude", 1.0), n);
    if (name == "cosine") return BoundaryData::cosine(number_or(p, "amplitude", 1.0), n);
    if (name == "constant") return BoundaryData::constant(number_or(p, "value", 0.0), n);
    throw InvalidInput("unknown boundary preset \"" + name + "\"");
  }
  throw InvalidInput("unknown boundary kind \"" + kind + "\"");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const BoundReport& report, bool with_points) {
  json out;
  out["name"] = report.name;
  out["applicable"] = report.applicable;
  out["passed"] = report.passed;
  out["tolerance"] = report.tolerance;
  out["point_count"] = report.points.size();
  if (!report.points.empty()) {
    out["min_slack"] = report.min_slack;
    out["worst_point"] = point(report.worst_point);
  }
  out["warnings"] = report.warnings;
  if (!report.links.empty()) {
    out["chain_passed"] = report.chain_passed();
    json links = json::array();
    for (const auto& link : report.links) links.push_back(to_json(link, false));
    out["links"] = links;
  }
  if (with_points) {
    json pts = json::array();
    for (const auto& p : report.points) {
      pts.push_back({{"z", point(p.z)}, {"w", point(p.w)}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"slack", p.slack}});
    }
    out["points"] = pts;
  }
  return out;
}

json to_json(const ExampleReport& report) {
  json out;
  out["name"] = report.name;
  out["passed"] = report.passed();
  out["claim_tolerance"] = report.claim_tolerance;
  json claims = json::object();
  for (const auto& [label, c] : report.claimed) {
    claims[label] = {{"value", c.value},
                     {"source", c.source == ClaimSource::stated ? "stated" : "derived"},
                     {"gated", c.gated}};
  }
  out["claimed"] = claims;
  json computed = json::object();
  for (const auto& [label, v] : report.computed) computed[label] = v;
  out["computed"] = computed;
  json gaps = json::object();
  for (const auto& [label, d] : report.discrepancies) gaps[label] = d;
  out["discrepancies"] = gaps;
  out["flagged"] = report.flagged;
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"label", c.label}, {"passed", c.passed}, {"value", c.value}, {"threshold", c.threshold}});
  }
  out["checks"] = checks;
  out["notes"] = report.notes;
  return out;
}

json to_json(const LogConcavityReport& report) {
  return {{"min_curvature", report.min_curvature},
          {"worst_point", report.worst_point},
          {"is_nonnegative", report.is_nonnegative},
          {"exp_majorant_min_slack", report.exp_majorant_min_slack},
          {"exp_majorant_ok", report.exp_majorant_ok}};
}

json to_json(const SweepRecord& record) {
  json params = json::object();
  for (const auto& [k, v] : record.parameters) params[k] = v;
  return {{"parameters", params}, {"ratio", record.ratio}};
}

void write_points_csv(const BoundReport& report, std::ostream& out) {
  out << "x,y,wx,wy,lhs,rhs,slack\n";
  for (const auto& p : report.points) {
    out << format_double(p.z.real()) << ',' << format_double(p.z.imag()) << ',' << format_double(p.w.real()) << ','
        << format_double(p.w.imag()) << ',' << format_double(p.lhs) << ',' << format_double(p.rhs) << ','
        << format_double(p.slack) << '\n';
  }
}

void write_sweep_csv(std::span<const SweepRecord> rows, std::ostream& out) {
  if (rows.empty()) return;
  for (const auto& [k, v] : rows.front().parameters) out << k << ',';
  out << "ratio\n";
  for (const auto& row : rows) {
    for (const auto& [k, v] : row.parameters) out << format_double(v) << ',';
    out << format_double(row.ratio) << '\n';
  }
}

}  // namespace schwarz::io
