#include "output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace expsum_cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Cell Cell::real(double v) { return {Kind::real, format_double(v)}; }

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row has the wrong number of cells");
  rows.push_back(std::move(row));
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json to_json(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::boolean:
      return c.repr == "true";
    case Cell::Kind::text:
      return c.repr;
    case Cell::Kind::integer:
      // counts beyond 64 bits stay exact as strings
      if (c.repr.size() < 19) return std::stoll(c.repr);
      return c.repr;
    case Cell::Kind::real: {
      const double v = std::stod(c.repr);
      if (!std::isfinite(v)) return c.repr;
      return v;
    }
  }
  return nullptr;
}

}  // namespace

std::string render(const Table& table, Format format) {
  std::string out;
  if (format == Format::csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + csv_escape(table.columns[i]);
    out += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(row[i].repr);
      out += '\n';
    }
    return out;
  }
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[table.columns[i]] = to_json(row[i]);
    records.push_back(std::move(rec));
  }
  return records.dump(2) + "\n";
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_output(const std::string& path, const std::string& body, const RunManifest& m) {
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << body;
  }
  nlohmann::ordered_json j;
  j["subcommand"] = m.subcommand;
  j["argv"] = m.argv;
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  j["format"] = m.format;
  j["digest"] = "fnv1a64:" + m.digest;
  std::ofstream f(path + ".manifest.json", std::ios::binary);
  if (!f) throw std::runtime_error("cannot open manifest file " + path + ".manifest.json");
  f << j.dump(2) << '\n';
}

}  // namespace expsum_cli
