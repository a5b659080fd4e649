#include "dislospec/io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dislospec {

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

// Stable output order regardless of how the records were produced.
std::vector<const SpectrumRecord*> sorted_view(const std::vector<SpectrumRecord>& records) {
  std::vector<const SpectrumRecord*> view;
  view.reserve(records.size());
  for (const auto& r : records)
    if (!r.failed) view.push_back(&r);
  std::sort(view.begin(), view.end(),
            [](const SpectrumRecord* a, const SpectrumRecord* b) {
              if (a->m != b->m) return a->m < b->m;
              return a->lambda < b->lambda;
            });
  return view;
}

void json_string(std::ostream& out, const std::string& s) {
  out << '"';
  for (const char c : s) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\t': out << "\\t"; break;
      default: out << c;
    }
  }
  out << '"';
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<SpectrumRecord>& records) {
  out << "lambda,m,level,energy,b_opt,M,N,converged\n";
  for (const SpectrumRecord* rec : sorted_view(records)) {
    for (std::size_t r = 0; r < rec->energies.size(); ++r) {
      out << format_sig(rec->lambda) << ',' << rec->m << ',' << r << ','
          << format_sig(rec->energies[r]) << ',' << format_sig(rec->b_opt) << ','
          << rec->radial_terms << ',' << rec->axial_terms << ','
          << (rec->converged ? 1 : 0) << '\n';
    }
  }
}

void write_records_json(std::ostream& out, const std::vector<SpectrumRecord>& records) {
  out << "{\"schema\":1,\"records\":[";
  bool first = true;
  for (const SpectrumRecord* rec : sorted_view(records)) {
    if (!first) out << ',';
    first = false;
    out << "{\"lambda\":" << format_sig(rec->lambda) << ",\"m\":" << rec->m
        << ",\"b_opt\":" << format_sig(rec->b_opt)
        << ",\"M\":" << rec->radial_terms << ",\"N\":" << rec->axial_terms
        << ",\"converged\":" << (rec->converged ? "true" : "false")
        << ",\"energies\":[";
    for (std::size_t r = 0; r < rec->energies.size(); ++r) {
      if (r) out << ',';
      out << format_sig(rec->energies[r]);
    }
    out << "]";
    if (!rec->truncation_error.empty()) {
      out << ",\"truncation_error\":[";
      for (std::size_t r = 0; r < rec->truncation_error.size(); ++r) {
        if (r) out << ',';
        out << format_sig(rec->truncation_error[r]);
      }
      out << "]";
    }
    if (!rec->message.empty()) {
      out << ",\"message\":";
      json_string(out, rec->message);
    }
    out << "}";
  }
  out << "]}\n";
}

void write_crossings_json(std::ostream& out, const CrossingScan& scan) {
  out << "{\"schema\":1,\"crossings\":[";
  for (std::size_t i = 0; i < scan.crossings.size(); ++i) {
    const CrossingReport& c = scan.crossings[i];
    if (i) out << ',';
    out << "{\"m\":" << c.m << ",\"lower_level\":" << c.lower_level
        << ",\"upper_level\":" << c.upper_level
        << ",\"lambda_star\":" << format_sig(c.lambda_star)
        << ",\"gap\":" << format_sig(c.gap) << ",\"multiplet_origin\":";
    if (c.multiplet_origin)
      out << '[' << c.multiplet_origin->first << ',' << c.multiplet_origin->second << ']';
    else
      out << "null";
    out << '}';
  }
  out << "],\"warnings\":[";
  for (std::size_t i = 0; i < scan.warnings.size(); ++i) {
    if (i) out << ',';
    json_string(out, scan.warnings[i]);
  }
  out << "]}\n";
}

void write_crossings_csv(std::ostream& out, const CrossingScan& scan) {
  out << "m,lower_level,upper_level,lambda_star,gap,origin_lower,origin_upper\n";
  for (const CrossingReport& c : scan.crossings) {
    out << c.m << ',' << c.lower_level << ',' << c.upper_level << ','
        << format_sig(c.lambda_star) << ',' << format_sig(c.gap) << ',';
    if (c.multiplet_origin)
      out << c.multiplet_origin->first << ',' << c.multiplet_origin->second;
    else
      out << ',';
    out << '\n';
  }
}

std::vector<SpectrumRecord> parse_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "lambda,m,level,energy,b_opt,M,N,converged")
    throw std::invalid_argument("records CSV: bad or missing header");

  std::map<std::pair<int, double>, SpectrumRecord> grouped;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 8) {
      std::ostringstream msg;
      msg << "records CSV line " << line_no << ": expected 8 fields, got "
          << fields.size();
      throw std::invalid_argument(msg.str());
    }
    try {
      const double lambda = std::stod(fields[0]);
      const int m = std::stoi(fields[1]);
      const std::size_t level = static_cast<std::size_t>(std::stoul(fields[2]));
      SpectrumRecord& rec = grouped[{m, lambda}];
      rec.lambda = lambda;
      rec.m = m;
      if (rec.energies.size() <= level) rec.energies.resize(level + 1);
      rec.energies[level] = std::stod(fields[3]);
      rec.b_opt = std::stod(fields[4]);
      rec.radial_terms = std::stoi(fields[5]);
      rec.axial_terms = std::stoi(fields[6]);
      rec.converged = std::stoi(fields[7]) != 0;
    } catch (const std::invalid_argument&) {
      std::ostringstream msg;
      msg << "records CSV line " << line_no << ": malformed number";
      throw std::invalid_argument(msg.str());
    }
  }
  std::vector<SpectrumRecord> records;
  records.reserve(grouped.size());
  for (auto& [key, rec] : grouped) records.push_back(std::move(rec));
  return records;
}

}  // namespace dislospec
