#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace zospg {

/// Shortest decimal string that parses back to the same double; "NA" for NaN.
std::string format_double(double value);
/// Inverse of format_double. Throws std::runtime_error on malformed text.
double parse_double(const std::string& text);

struct TrialRow {
  std::size_t iteration;
  double error;
  std::uint64_t queries;
};

struct AggregateRow {
  std::size_t iteration;
  double mean;
  double ci_low;   ///< NaN when not available
  double ci_high;  ///< NaN when not available
};

struct BoundRow {
  std::size_t iteration;
  double bound;
};

void write_trial_csv(const std::filesystem::path& path, const std::vector<TrialRow>& rows);
std::vector<TrialRow> read_trial_csv(const std::filesystem::path& path);

void write_aggregate_csv(const std::filesystem::path& path, const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path);

void write_bound_csv(const std::filesystem::path& path, const std::vector<BoundRow>& rows);
std::vector<BoundRow> read_bound_csv(const std::filesystem::path& path);

}  // namespace zospg
