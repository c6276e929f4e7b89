#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace herbst::cli {

using Value = std::variant<double, long long, bool, std::string>;

// A command result: named scalars plus one table.
struct Result {
  std::vector<std::pair<std::string, Value>> scalars;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;

  void scalar(std::string key, Value v) { scalars.emplace_back(std::move(key), std::move(v)); }
};

// Floats with 17 significant digits, '.' separator, independent of the locale.
std::string format_value(const Value& v);

// Scalars as leading "# key,value" lines, then the header row and the table.
std::string to_csv(const Result& r);

// {"meta": meta, "data": {scalars..., "table": [{column: value}, ...]}}; non-finite numbers become null.
std::string to_json(const Result& r, const nlohmann::ordered_json& meta);

}  // namespace herbst::cli
