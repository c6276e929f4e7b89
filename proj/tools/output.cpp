#include "output.hpp"

#include <cmath>

#include <fmt/format.h>

namespace herbst::cli {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json json_value(const Value& v) {
  return std::visit(overloaded{[](double x) { return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr); },
                               [](long long x) { return nlohmann::ordered_json(x); },
                               [](bool x) { return nlohmann::ordered_json(x); },
                               [](const std::string& x) { return nlohmann::ordered_json(x); }},
                    v);
}
}  // namespace

std::string format_value(const Value& v) {
  return std::visit(overloaded{[](double x) { return fmt::format("{:.17g}", x); },
                               [](long long x) { return fmt::format("{}", x); },
                               [](bool x) { return std::string(x ? "true" : "false"); },
                               [](const std::string& x) { return csv_field(x); }},
                    v);
}

std::string to_csv(const Result& r) {
  std::string out;
  for (const auto& [k, v] : r.scalars) out += fmt::format("# {},{}\n", k, format_value(v));
  for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + r.columns[i];
  out += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_value(row[i]);
    out += "\n";
  }
  return out;
}

std::string to_json(const Result& r, const nlohmann::ordered_json& meta) {
  nlohmann::ordered_json data;
  for (const auto& [k, v] : r.scalars) data[k] = json_value(v);
  auto table = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = json_value(row[i]);
    table.push_back(std::move(obj));
  }
  data["table"] = std::move(table);
  nlohmann::ordered_json doc;
  doc["meta"] = meta;
  doc["data"] = std::move(data);
  return doc.dump(2) + "\n";
}

}  // namespace herbst::cli
