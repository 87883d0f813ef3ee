#include "levar/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "format.hpp"
#include "levar/error.hpp"

namespace levar {

using detail::json_number;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& s, int line) {
  const char* b = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(b, &end);
  if (s.empty() || end != b + s.size()) {
    throw InputError("scenarios: line " + std::to_string(line) + ": '" + s + "' is not a number");
  }
  if (!std::isfinite(v)) {
    throw InputError("scenarios: line " + std::to_string(line) + ": non-finite number");
  }
  return v;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DiscreteDistribution parse_scenarios_text(const std::string& text, bool normalize) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) {
      header = split(line, ',');
      break;
    }
  }
  if (header.empty()) throw InputError("scenarios: empty file");
  const bool weighted = header.size() == 2 && header[0] == "value" && header[1] == "probability";
  if (!weighted && !(header.size() == 1 && header[0] == "value")) {
    throw InputError("scenarios: header must be 'value' or 'value,probability'");
  }

  std::vector<double> values, probs;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw InputError("scenarios: line " + std::to_string(lineno) + ": expected " +
                       std::to_string(header.size()) + " fields");
    }
    const double v = parse_number(cells[0], lineno);
    if (!weighted) {
      values.push_back(v);
      continue;
    }
    const double p = parse_number(cells[1], lineno);
    if (p < 0.0) {
      throw InputError("scenarios: line " + std::to_string(lineno) + ": negative probability");
    }
    if (p == 0.0) continue;
    values.push_back(v);
    probs.push_back(p);
  }
  if (values.empty()) throw InputError("scenarios: no data rows");
  if (weighted && !normalize) {
    double s = 0.0;
    for (double p : probs) s += p;
    if (std::abs(s - 1.0) > 1e-6) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10g", s);
      throw InputError(std::string("scenarios: probabilities sum to ") + buf +
                       " (use --normalize to rescale)");
    }
  }
  return make_distribution(values, probs);
}

DiscreteDistribution parse_scenarios(const std::string& path, bool normalize) {
  return parse_scenarios_text(read_file(path), normalize);
}

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& type) {
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) {
      throw InputError("lambda spec: unexpected key '" + k + "' for type '" + type + "'");
    }
  }
  for (const auto& k : allowed) {
    if (!j.contains(k)) throw InputError("lambda spec: missing key '" + k + "' for type '" + type + "'");
  }
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw InputError("lambda spec: " + what + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError("lambda spec: " + what + " must be an array");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number(e, what + " entry"));
  return out;
}

}  // namespace

LambdaFunction parse_lambda_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("lambda spec: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("lambda spec: expected a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) {
    throw InputError("lambda spec: missing string field 'type'");
  }
  const auto type = j["type"].get<std::string>();
  if (type == "constant") {
    require_keys(j, {"type", "level"}, type);
    return LambdaFunction::constant(number(j["level"], "level"));
  }
  if (type == "step") {
    require_keys(j, {"type", "continuity", "thresholds", "levels"}, type);
    const auto& c = j["continuity"];
    if (!c.is_string() || (c != "left" && c != "right")) {
      throw InputError("lambda spec: continuity must be \"left\" or \"right\"");
    }
    return LambdaFunction::step(numbers(j["thresholds"], "thresholds"),
                                numbers(j["levels"], "levels"),
                                c == "left" ? Continuity::Left : Continuity::Right);
  }
  if (type == "piecewise_linear") {
    require_keys(j, {"type", "points"}, type);
    const auto& pts = j["points"];
    if (!pts.is_array()) throw InputError("lambda spec: points must be an array");
    std::vector<std::pair<double, double>> out;
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != 2) throw InputError("lambda spec: each point must be [x, level]");
      out.emplace_back(number(p[0], "point x"), number(p[1], "point level"));
    }
    return LambdaFunction::piecewise_linear(out);
  }
  throw InputError("lambda spec: unknown type '" + type +
                   "' (expected constant, step or piecewise_linear)");
}

LambdaFunction parse_lambda_spec(const std::string& text_or_path) {
  const auto t = trim(text_or_path);
  if (!t.empty() && t.front() == '{') return parse_lambda_json(t);
  return parse_lambda_json(read_file(text_or_path));
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string describe_distribution(const DiscreteDistribution& d) {
  std::string out = "[";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ',';
    out += '[' + json_number(d.atoms()[i].value) + ',' + json_number(d.atoms()[i].prob) + ']';
  }
  return out + ']';
}

std::string Report::digest() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(inputs)));
  return buf;
}

std::string Report::to_json() const {
  auto opt = [](const std::optional<double>& v) { return v ? json_number(*v) : std::string("null"); };
  std::string out = "{\"measure\":" + json(measure).dump() + ",\"p\":" + opt(p) +
                    ",\"value\":" + json_number(value) + ",\"x_star\":" + opt(x_star) +
                    ",\"t_interval\":";
  out += t_interval ? "[" + json_number(t_interval->first) + "," + json_number(t_interval->second) + "]"
                    : std::string("null");
  if (t_star) out += ",\"t_star\":" + json_number(*t_star);
  out += ",\"attained\":";
  out += attained ? (*attained ? "true" : "false") : "null";
  out += ",\"iterations\":" + std::to_string(iterations) +
         ",\"achieved_tol\":" + json_number(achieved_tol);
  for (const auto& [k, v] : extra) out += "," + json(k).dump() + ":" + json_number(v);
  out += ",\"inputs_digest\":\"" + digest() + "\"}";
  return out;
}

ExpectedValue parse_report_value(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("expected report: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("value") || !j["value"].is_number()) {
    throw InputError("expected report: missing numeric 'value'");
  }
  ExpectedValue ev{j["value"].get<double>(), 0.0};
  if (j.contains("achieved_tol") && j["achieved_tol"].is_number()) {
    ev.achieved_tol = j["achieved_tol"].get<double>();
  }
  return ev;
}

}  // namespace levar
