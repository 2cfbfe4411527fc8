#include "ercp/records_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "ercp/error.hpp"

namespace ercp {

namespace {

constexpr std::size_t kColumns = 14;

template <class T>
std::string optional_text(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, bool>)
    return *v ? "1" : "0";
  else if constexpr (std::is_same_v<T, double>)
    return format_double(*v);
  else
    return std::to_string(*v);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

template <class T>
T parse_field(std::string_view text, std::string_view column, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidInput("records CSV line " + std::to_string(line) + ": bad value '" + std::string(text) +
                       "' in column " + std::string(column));
  return value;
}

template <class T>
std::optional<T> parse_optional(std::string_view text, std::string_view column, std::size_t line) {
  if (text.empty()) return std::nullopt;
  if constexpr (std::is_same_v<T, bool>) {
    if (text == "1") return true;
    if (text == "0") return false;
    throw InvalidInput("records CSV line " + std::to_string(line) + ": merged must be 0, 1 or empty");
  } else {
    return parse_field<T>(text, column, line);
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

void write_records_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << kRecordCsvHeader << '\n';
  for (const TrialRecord& r : records) {
    out << r.trial_idx << ',' << r.seed << ',' << r.n << ',' << r.d << ',' << format_double(r.eps) << ','
        << format_double(r.p) << ',' << r.L1 << ',' << r.L2 << ',' << r.component_count << ','
        << optional_text(r.gap_count) << ',' << optional_text(r.merged) << ',' << optional_text(r.isolated_class_count)
        << ',' << optional_text(r.max_isolated_internal) << ',' << optional_text(r.wall_time_ms) << '\n';
  }
}

void write_records_csv_file(const std::string& path, std::span<const TrialRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_records_csv(out, records);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<TrialRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordCsvHeader) throw InvalidInput("records CSV has a missing or wrong header");
  std::vector<TrialRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = split_commas(line);
    if (f.size() != kColumns)
      throw InvalidInput("records CSV line " + std::to_string(line_no) + ": expected " + std::to_string(kColumns) +
                         " fields, got " + std::to_string(f.size()));
    TrialRecord r;
    r.trial_idx = parse_field<std::uint64_t>(f[0], "trial_idx", line_no);
    r.seed = parse_field<std::uint64_t>(f[1], "seed", line_no);
    r.n = parse_field<std::uint64_t>(f[2], "n", line_no);
    r.d = parse_field<std::uint64_t>(f[3], "d", line_no);
    r.eps = parse_field<double>(f[4], "eps", line_no);
    r.p = parse_field<double>(f[5], "p", line_no);
    r.L1 = parse_field<std::uint64_t>(f[6], "L1", line_no);
    r.L2 = parse_field<std::uint64_t>(f[7], "L2", line_no);
    r.component_count = parse_field<std::uint64_t>(f[8], "component_count", line_no);
    r.gap_count = parse_optional<std::uint64_t>(f[9], "gap_count", line_no);
    r.merged = parse_optional<bool>(f[10], "merged", line_no);
    r.isolated_class_count = parse_optional<std::uint64_t>(f[11], "isolated_class_count", line_no);
    r.max_isolated_internal = parse_optional<std::uint64_t>(f[12], "max_isolated_internal", line_no);
    r.wall_time_ms = parse_optional<double>(f[13], "wall_time_ms", line_no);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TrialRecord> read_records_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  return read_records_csv(in);
}

void write_size_dump(std::ostream& out, std::span<const TrialRecord> records) {
  out << "trial_idx,size,count\n";
  std::vector<const TrialRecord*> sorted;
  for (const TrialRecord& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return a->trial_idx < b->trial_idx; });
  for (const TrialRecord* r : sorted)
    for (auto [size, count] : r->size_counts) out << r->trial_idx << ',' << size << ',' << count << '\n';
}

void write_size_dump_file(const std::string& path, std::span<const TrialRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_size_dump(out, records);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace ercp
