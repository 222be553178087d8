#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rexp/exact_int.hpp"

namespace expsum_cli {

/// One typed table cell; numbers keep their exact text so CSV and JSON agree.
struct Cell {
  enum class Kind { integer, real, text, boolean };
  Kind kind = Kind::text;
  std::string repr;

  static Cell integer(std::int64_t v) { return {Kind::integer, std::to_string(v)}; }
  static Cell integer(rexp::Count v) { return {Kind::integer, rexp::to_string(v)}; }
  static Cell real(double v);
  static Cell text(std::string v) { return {Kind::text, std::move(v)}; }
  static Cell boolean(bool v) { return {Kind::boolean, v ? "true" : "false"}; }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class Format { csv, json };

/// %.17g, with nan/inf spelled out.
std::string format_double(double v);

std::string render(const Table& table, Format format);

/// FNV-1a 64-bit, lowercase hex.
std::string digest(const std::string& bytes);

struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  std::string version;
  std::string started_at;
  std::string finished_at;
  std::string digest;
  std::string format;
};

/// Current UTC time as ISO-8601 with a trailing Z.
std::string utc_now();

/// Writes `body` to `path` and `path`.manifest.json next to it.
void write_output(const std::string& path, const std::string& body, const RunManifest& manifest);

}  // namespace expsum_cli
