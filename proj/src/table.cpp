#include "binsize/table.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace binsize {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(std::string_view field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument("bad real field '" + std::string(field) + "'");
  }
  return v;
}

std::optional<double> parse_optional_real(std::string_view field) {
  if (field.empty()) return std::nullopt;
  return parse_real(field);
}

std::int64_t parse_int(std::string_view field) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument("bad integer field '" + std::string(field) + "'");
  }
  return v;
}

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

constexpr std::string_view kCacheHeaderSuffix = ",algorithm_version";

}  // namespace

TableKey key_of(const TableRow& row) {
  return {static_cast<int>(row.criterion), row.eps_abs.value_or(-1.0), row.eps_rel.value_or(-1.0),
          row.delta, row.a, row.b};
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string table_header() { return "criterion,eps_abs,eps_rel,delta,a,b,n"; }

std::string to_csv(const TableRow& row) {
  std::string out(to_string(row.criterion));
  out += ',';
  if (row.eps_abs) out += format_real(*row.eps_abs);
  out += ',';
  if (row.eps_rel) out += format_real(*row.eps_rel);
  out += ',' + format_real(row.delta) + ',' + format_real(row.a) + ',' + format_real(row.b) + ',' +
         std::to_string(row.n);
  return out;
}

TableRow parse_table_row(std::string_view line) {
  const auto fields = split(trim_cr(line));
  if (fields.size() != 7) {
    throw std::invalid_argument("expected 7 CSV fields, got " + std::to_string(fields.size()));
  }
  TableRow row;
  row.criterion = parse_criterion(fields[0]);
  row.eps_abs = parse_optional_real(fields[1]);
  row.eps_rel = parse_optional_real(fields[2]);
  row.delta = parse_real(fields[3]);
  row.a = parse_real(fields[4]);
  row.b = parse_real(fields[5]);
  row.n = parse_int(fields[6]);
  return row;
}

void write_table(std::ostream& out, const std::vector<TableRow>& rows) {
  out << table_header() << '\n';
  for (const auto& row : rows) out << to_csv(row) << '\n';
}

std::vector<TableRow> read_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != table_header()) {
    throw std::invalid_argument("missing table header '" + table_header() + "'");
  }
  std::vector<TableRow> rows;
  while (std::getline(in, line)) {
    if (trim_cr(line).empty()) continue;
    rows.push_back(parse_table_row(line));
  }
  return rows;
}

ErrorSpec spec_of(const TableRow& row) {
  ErrorSpec spec;
  spec.kind = row.criterion;
  if (row.eps_abs) spec.eps_abs = Rational::from_decimal_double(*row.eps_abs);
  if (row.eps_rel) spec.eps_rel = Rational::from_decimal_double(*row.eps_rel);
  spec.delta = Rational::from_decimal_double(row.delta);
  spec.validate();
  return spec;
}

ParamInterval interval_of(const TableRow& row) {
  return ParamInterval::make(Rational::from_decimal_double(row.a), Rational::from_decimal_double(row.b));
}

TableCache::TableCache(std::filesystem::path path) : path_(std::move(path)) {}

void TableCache::load() {
  entries_.clear();
  if (path_.empty() || !std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  if (!in) throw std::runtime_error("cannot open cache file " + path_.string());
  std::string line;
  const std::string header = table_header() + std::string(kCacheHeaderSuffix);
  if (!std::getline(in, line) || trim_cr(line) != header) {
    throw std::runtime_error("cache file " + path_.string() + " has an unexpected header");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim_cr(line);
    if (view.empty()) continue;
    const std::size_t last = view.rfind(',');
    try {
      if (last == std::string_view::npos) throw std::invalid_argument("missing version column");
      const TableRow row = parse_table_row(view.substr(0, last));
      entries_[{key_of(row), std::string(view.substr(last + 1))}] = row;
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path_.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void TableCache::save() const {
  if (path_.empty()) return;
  const std::filesystem::path tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << table_header() << kCacheHeaderSuffix << '\n';
    for (const auto& [key, row] : entries_) out << to_csv(row) << ',' << key.second << '\n';
    if (!out) throw std::runtime_error("failed writing cache file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path_, ec);
  if (ec) throw std::runtime_error("cannot replace cache file " + path_.string() + ": " + ec.message());
}

std::optional<std::int64_t> TableCache::lookup(const TableRow& params) const {
  const auto it = entries_.find({key_of(params), std::string(kAlgorithmVersion)});
  if (it == entries_.end()) return std::nullopt;
  return it->second.n;
}

void TableCache::insert(const TableRow& row) {
  entries_[{key_of(row), std::string(kAlgorithmVersion)}] = row;
}

}  // namespace binsize
