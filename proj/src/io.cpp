#include "rsm/io.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

Json cube_json(const Subcube& c) {
  return Json{{"mask", c.frozen_mask.to_hex()}, {"values", c.frozen_values.to_hex()}};
}

Subcube cube_from_json(const Json& j, std::size_t n) {
  Subcube c{BitVec::from_hex(n, j.at("mask").get<std::string>()),
            BitVec::from_hex(n, j.at("values").get<std::string>())};
  c.validate();
  return c;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DomainError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

double finite_or_throw(double x, std::string_view what) {
  if (!std::isfinite(x)) throw DomainError(fmt::format("{} is not finite", what));
  return x;
}

Json to_json(const Instance& inst) {
  Json clusters = Json::array();
  for (const Subcube& c : inst.clusters) clusters.push_back(cube_json(c));
  return Json{{"n", inst.n},
              {"alpha", finite_or_throw(inst.alpha, "alpha")},
              {"p", finite_or_throw(inst.p, "p")},
              {"seed", inst.seed},
              {"rng", inst.rng},
              {"clusters", std::move(clusters)}};
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.n = field<std::size_t>(j, "n");
  inst.alpha = field<double>(j, "alpha");
  inst.p = field<double>(j, "p");
  inst.seed = field<std::uint64_t>(j, "seed");
  inst.rng = field<std::string>(j, "rng");
  if (inst.n == 0) throw DomainError("instance n must be >= 1");
  for (const Json& c : field<Json>(j, "clusters")) inst.clusters.push_back(cube_from_json(c, inst.n));
  return inst;
}

Json to_json(const Landscape& land) {
  Json valleys = Json::array();
  for (const Valley& v : land.valleys) {
    Json jv = cube_json(v.cube);
    jv["e0"] = v.e0;
    valleys.push_back(std::move(jv));
  }
  const LandscapeParams& p = land.params;
  return Json{{"n", p.n},
              {"a", finite_or_throw(p.a, "a")},
              {"b", finite_or_throw(p.b, "b")},
              {"c", finite_or_throw(p.c, "c")},
              {"p", finite_or_throw(p.p, "p")},
              {"seed", land.seed},
              {"rng", land.rng},
              {"valleys", std::move(valleys)}};
}

Landscape landscape_from_json(const Json& j) {
  Landscape land;
  land.params.n = field<std::size_t>(j, "n");
  land.params.a = field<double>(j, "a");
  land.params.b = field<double>(j, "b");
  land.params.c = field<double>(j, "c");
  land.params.p = field<double>(j, "p");
  land.params.validate();
  land.seed = field<std::uint64_t>(j, "seed");
  land.rng = field<std::string>(j, "rng");
  for (const Json& v : field<Json>(j, "valleys")) {
    land.valleys.push_back({cube_from_json(v, land.params.n), field<std::size_t>(v, "e0")});
  }
  return land;
}

void save_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(1) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header)
    : out_(&out), columns_(header.size()) {
  bool first = true;
  for (std::string_view h : header) {
    if (!first) *out_ << ',';
    *out_ << h;
    first = false;
  }
  *out_ << '\n';
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(&out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) *out_ << (i ? "," : "") << header[i];
  *out_ << '\n';
}

std::string CsvWriter::format(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return fmt::format("{:.17g}", v);
        } else if constexpr (std::is_same_v<V, std::string>) {
          return v;
        } else {
          return fmt::format("{}", v);
        }
      },
      cell);
}

void CsvWriter::row(std::initializer_list<Cell> cells) {
  row(std::vector<Cell>(cells));
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) throw DomainError("CsvWriter: wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) *out_ << (i ? "," : "") << format(cells[i]);
  *out_ << '\n';
}

}  // namespace rsm
