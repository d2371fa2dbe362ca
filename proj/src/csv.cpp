#include "stabq/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <unordered_set>

namespace stabq {

namespace {

// Splits a CSV line into exactly `n` comma-separated fields.
bool split_fields(const std::string& line, std::string_view* out, std::size_t n) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t comma = line.find(',', start);
    if (i + 1 < n) {
      if (comma == std::string::npos) {
        return false;
      }
      out[i] = std::string_view(line).substr(start, comma - start);
      start = comma + 1;
    } else {
      if (comma != std::string::npos) {
        return false;
      }
      out[i] = std::string_view(line).substr(start);
    }
  }
  return true;
}

bool parse_double(std::string_view text, double& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  return line;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

dataset load_dataset_csv(const std::string& path, weight_order order) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open dataset file: " + path);
  }
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) {
    throw csv_error(path, 1, "missing header (expected id,l,r,w)");
  }
  ++lineno;
  if (strip_cr(line) != "id,l,r,w") {
    throw csv_error(path, lineno, "bad header (expected id,l,r,w)");
  }

  std::vector<record> records;
  std::unordered_set<std::uint64_t> seen;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) {
      continue;
    }
    std::string_view fields[4];
    record rec;
    if (!split_fields(line, fields, 4) || !parse_u64(fields[0], rec.id) || !parse_double(fields[1], rec.l) ||
        !parse_double(fields[2], rec.r) || !parse_double(fields[3], rec.w)) {
      throw csv_error(path, lineno, "malformed record (expected id,l,r,w)");
    }
    // Validate rows here as well so errors carry line numbers.
    if (!std::isfinite(rec.l) || !std::isfinite(rec.r)) {
      throw csv_error(path, lineno, "non-finite endpoint at id " + std::to_string(rec.id));
    }
    if (!std::isfinite(rec.w)) {
      throw csv_error(path, lineno, "non-finite weight at id " + std::to_string(rec.id));
    }
    if (rec.l > rec.r) {
      throw csv_error(path, lineno, "l > r at id " + std::to_string(rec.id));
    }
    if (!seen.insert(rec.id).second) {
      throw csv_error(path, lineno, "duplicate id " + std::to_string(rec.id));
    }
    records.push_back(rec);
  }
  return ingest(records, order);
}

void write_dataset_csv(const std::string& path, std::span<const record> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << "id,l,r,w\n";
  for (const record& rec : records) {
    out << rec.id << ',' << format_double(rec.l) << ',' << format_double(rec.r) << ',' << format_double(rec.w)
        << '\n';
  }
}

workload load_workload_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open workload file: " + path);
  }
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) {
    throw csv_error(path, 1, "missing header (expected s,k)");
  }
  ++lineno;
  if (strip_cr(line) != "s,k") {
    throw csv_error(path, lineno, "bad header (expected s,k)");
  }

  workload wl;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) {
      continue;
    }
    std::string_view fields[2];
    double s = 0.0;
    std::uint64_t k = 0;
    if (!split_fields(line, fields, 2) || !parse_double(fields[0], s) || !parse_u64(fields[1], k)) {
      throw csv_error(path, lineno, "malformed query (expected s,k)");
    }
    if (!std::isfinite(s)) {
      throw csv_error(path, lineno, "non-finite query value");
    }
    if (k == 0) {
      throw csv_error(path, lineno, "k must be >= 1");
    }
    wl.queries.push_back(query{s, static_cast<std::size_t>(k)});
  }
  return wl;
}

void write_workload_csv(const std::string& path, const workload& wl) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << "s,k\n";
  for (const query& q : wl.queries) {
    out << format_double(q.s) << ',' << q.k << '\n';
  }
}

}  // namespace stabq
