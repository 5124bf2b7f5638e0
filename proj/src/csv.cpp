#include "zospg/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace zospg {

namespace {

constexpr const char* kTrialHeader = "iteration,error,queries";
constexpr const char* kAggregateHeader = "iteration,mean,ci_low,ci_high";
constexpr const char* kBoundHeader = "iteration,bound";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

std::uint64_t parse_unsigned(const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error(fmt::format("malformed integer '{}'", text));
  }
  return v;
}

// Reads a CSV with the expected header and column count; returns data rows.
std::vector<std::vector<std::string>> read_table(const std::filesystem::path& path,
                                                 const std::string& header, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw std::runtime_error(fmt::format("'{}': expected header '{}'", path.string(), header));
  }
  std::vector<std::vector<std::string>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != columns) {
      throw std::runtime_error(
          fmt::format("'{}':{}: expected {} columns", path.string(), lineno, columns));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  return out;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "NA";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
  if (text == "NA") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error(fmt::format("malformed number '{}'", text));
  }
  return v;
}

void write_trial_csv(const std::filesystem::path& path, const std::vector<TrialRow>& rows) {
  auto out = open_for_write(path);
  out << kTrialHeader << '\n';
  for (const auto& r : rows) {
    out << r.iteration << ',' << format_double(r.error) << ',' << r.queries << '\n';
  }
}

std::vector<TrialRow> read_trial_csv(const std::filesystem::path& path) {
  std::vector<TrialRow> rows;
  for (const auto& f : read_table(path, kTrialHeader, 3)) {
    rows.push_back({parse_unsigned(f[0]), parse_double(f[1]), parse_unsigned(f[2])});
  }
  return rows;
}

void write_aggregate_csv(const std::filesystem::path& path, const std::vector<AggregateRow>& rows) {
  auto out = open_for_write(path);
  out << kAggregateHeader << '\n';
  for (const auto& r : rows) {
    out << r.iteration << ',' << format_double(r.mean) << ',' << format_double(r.ci_low) << ','
        << format_double(r.ci_high) << '\n';
  }
}

std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path) {
  std::vector<AggregateRow> rows;
  for (const auto& f : read_table(path, kAggregateHeader, 4)) {
    rows.push_back({parse_unsigned(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3])});
  }
  return rows;
}

void write_bound_csv(const std::filesystem::path& path, const std::vector<BoundRow>& rows) {
  auto out = open_for_write(path);
  out << kBoundHeader << '\n';
  for (const auto& r : rows) out << r.iteration << ',' << format_double(r.bound) << '\n';
}

std::vector<BoundRow> read_bound_csv(const std::filesystem::path& path) {
  std::vector<BoundRow> rows;
  for (const auto& f : read_table(path, kBoundHeader, 2)) {
    rows.push_back({parse_unsigned(f[0]), parse_double(f[1])});
  }
  return rows;
}

}  // namespace zospg
