#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "binsize/error_spec.hpp"

namespace binsize {

/// Version tag stored in cache files; bump whenever results could change.
inline constexpr std::string_view kAlgorithmVersion = "binsize-exact-1";

/// One sample-size table entry. CSV columns, in order:
///   criterion,eps_abs,eps_rel,delta,a,b,n
/// with empty fields for margins the criterion does not use.
struct TableRow {
  Criterion criterion = Criterion::Absolute;
  std::optional<double> eps_abs;
  std::optional<double> eps_rel;
  double delta = 0.05;
  double a = 0.0;
  double b = 1.0;
  std::int64_t n = 0;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Parameter tuple identifying a row (everything but n); rows sort by it.
using TableKey = std::tuple<int, double, double, double, double, double>;
TableKey key_of(const TableRow& row);

/// %.17g, which round-trips every double.
std::string format_real(double x);

std::string table_header();
std::string to_csv(const TableRow& row);
/// Throws std::invalid_argument on malformed lines.
TableRow parse_table_row(std::string_view line);

void write_table(std::ostream& out, const std::vector<TableRow>& rows);
/// Expects the header row first.
std::vector<TableRow> read_table(std::istream& in);

/// ErrorSpec / interval of a row; decimal inputs such as 0.1 map to 1/10.
ErrorSpec spec_of(const TableRow& row);
ParamInterval interval_of(const TableRow& row);

/// Sample sizes keyed by (parameters, algorithm version), persisted as the
/// table CSV with a trailing algorithm_version column. Entries written by a
/// different algorithm version are kept in the file but never returned.
class TableCache {
 public:
  TableCache() = default;
  explicit TableCache(std::filesystem::path path);

  /// Reads the file if it exists. Throws std::runtime_error naming the path
  /// on I/O or parse failure.
  void load();
  void save() const;

  std::optional<std::int64_t> lookup(const TableRow& params) const;
  void insert(const TableRow& row);
  std::size_t size() const { return entries_.size(); }

 private:
  std::filesystem::path path_;
  std::map<std::pair<TableKey, std::string>, TableRow> entries_;
};

}  // namespace binsize
