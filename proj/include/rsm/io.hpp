#pragma once

// JSON files for instances and landscapes, and a small CSV writer.

#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rsm/energy.hpp"
#include "rsm/instance.hpp"

namespace rsm {

using Json = nlohmann::ordered_json;

/// {"n","alpha","p","seed","rng","clusters":[{"mask","values"}]}, masks as hex.
Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

/// {"n","a","b","c","p","seed","rng","valleys":[{"e0","mask","values"}]}.
Json to_json(const Landscape& land);
Landscape landscape_from_json(const Json& j);

void save_json(const std::filesystem::path& path, const Json& j);
Json load_json(const std::filesystem::path& path);

/// Throws DomainError on NaN or infinity.
double finite_or_throw(double x, std::string_view what);

/// Comma separated, '.' decimal, doubles with 17 significant digits.
class CsvWriter {
 public:
  using Cell = std::variant<double, long long, unsigned long long, std::string>;

  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  void row(std::initializer_list<Cell> cells);
  void row(const std::vector<Cell>& cells);

  static std::string format(const Cell& cell);

 private:
  std::ostream* out_;
  std::size_t columns_;
};

}  // namespace rsm
