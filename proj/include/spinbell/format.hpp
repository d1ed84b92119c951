#pragma once

// Text serialization for sweep output. Doubles use the shortest representation
// that parses back to the same value; E = 0 therefore prints Q as "-inf".

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace spinbell {

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), end);
}

/// Inverse of format_double, including the "-inf", "inf" and "nan" literals.
inline double parse_double(const std::string& s) {
  if (s == "-inf") return -HUGE_VAL;
  if (s == "inf") return HUGE_VAL;
  if (s == "nan") return std::nan("");
  double x = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || end != s.data() + s.size()) throw std::invalid_argument("parse_double: bad number '" + s + "'");
  return x;
}

inline std::string format_int(std::int64_t x) { return std::to_string(x); }

/// A CSV table with a fixed header; every row must have one cell per column.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) throw std::logic_error("Table: row width does not match header");
    rows.push_back(std::move(row));
  }

  /// Comma-separated, LF line endings, header first.
  void write_csv(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
      }
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

}  // namespace spinbell
