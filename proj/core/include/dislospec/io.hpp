#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dislospec/sweep.hpp"

namespace dislospec {

/// Formats v with 12 significant digits ("%.12g"); the common float format
/// of every emitted file. Values round-trip exactly through parse + reprint.
std::string format_sig(double v);

/// CSV with header lambda,m,level,energy,b_opt,M,N,converged; one row per
/// (record, level), sorted by (m, lambda, level). Failed records are skipped
/// (callers surface them as warnings).
void write_records_csv(std::ostream& out, const std::vector<SpectrumRecord>& records);

/// JSON object {"schema":1, "records":[...]} carrying the same data plus
/// per-level truncation estimates.
void write_records_json(std::ostream& out, const std::vector<SpectrumRecord>& records);

/// JSON object {"schema":1, "crossings":[...], "warnings":[...]}.
void write_crossings_json(std::ostream& out, const CrossingScan& scan);

/// CSV with header m,lower_level,upper_level,lambda_star,gap,origin_lower,origin_upper.
void write_crossings_csv(std::ostream& out, const CrossingScan& scan);

/// Parses a file produced by write_records_csv. Rows regroup into one record
/// per (m, lambda). Throws std::invalid_argument on malformed input.
std::vector<SpectrumRecord> parse_records_csv(std::istream& in);

}  // namespace dislospec
