#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ercp/experiments.hpp"

namespace ercp {

inline constexpr std::string_view kRecordCsvHeader =
    "trial_idx,seed,n,d,eps,p,L1,L2,component_count,gap_count,merged,isolated_class_count,"
    "max_isolated_internal,wall_time_ms";

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

/// Header plus one LF-terminated row per record. Inapplicable fields are
/// empty; merged is written as 1 or 0.
void write_records_csv(std::ostream& out, std::span<const TrialRecord> records);
void write_records_csv_file(const std::string& path, std::span<const TrialRecord> records);
std::vector<TrialRecord> read_records_csv(std::istream& in);
std::vector<TrialRecord> read_records_csv_file(const std::string& path);

/// Per-trial component size histogram: header "trial_idx,size,count", rows
/// ascending by trial then size. Records need keep_sizes.
void write_size_dump(std::ostream& out, std::span<const TrialRecord> records);
void write_size_dump_file(const std::string& path, std::span<const TrialRecord> records);

}  // namespace ercp
