#include "horizon/csv.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "horizon/errors.hpp"

namespace horizon::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(begin));
      break;
    }
    fields.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
  return fields;
}

double parse_real(const std::string& field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw InputError("malformed real value in CSV: '" + field + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // canonicalize -0
  char buffer[64];
  const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                 std::chars_format::general, 12);
  if (res.ec != std::errc()) throw Error("failed to format real value");
  return std::string(buffer, res.ptr);
}

std::string to_line(const analysis::SweepRow& row) {
  std::string line;
  line.reserve(160);
  line += format_real(row.a);
  line += ',';
  line += format_real(row.r);
  line += ',';
  line += format_real(row.omega);
  line += ',';
  line += format_real(row.alpha_sq);
  line += ',';
  line += unruh::to_string(row.encoding);
  line += ',';
  line += unruh::to_string(row.protocol);
  line += ',';
  line += format_real(row.quantities.fidelity);
  line += ',';
  line += format_real(row.quantities.mutual_info_bits);
  line += ',';
  line += format_real(row.quantities.conditional_entropy_bits);
  line += ',';
  line += format_real(row.quantities.capacity_bits);
  line += ',';
  line += format_real(row.quantities.coherent_info_bits);
  line += ',';
  line += row.status;
  return line;
}

void write_rows(const std::string& path,
                const std::vector<analysis::SweepRow>& rows) {
  const std::filesystem::path target(path);
  const std::filesystem::path temp =
      target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot open '" + temp.string() + "' for writing");
    }
    out << kHeader << '\n';
    for (const analysis::SweepRow& row : rows) out << to_line(row) << '\n';
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(temp, ec);
      throw Error("failed while writing '" + temp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::error_code ignore;
    std::filesystem::remove(temp, ignore);
    throw Error("failed to move '" + temp.string() + "' into place: " +
                ec.message());
  }
}

std::vector<analysis::SweepRow> read_rows(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw InputError("CSV file is empty: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw InputError("unexpected CSV header in " + path);
  }
  std::vector<analysis::SweepRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != 12) {
      throw InputError("CSV row with wrong field count in " + path);
    }
    analysis::SweepRow row;
    row.a = parse_real(fields[0]);
    row.r = parse_real(fields[1]);
    row.omega = parse_real(fields[2]);
    row.alpha_sq = parse_real(fields[3]);
    row.encoding = unruh::encoding_from_string(fields[4]);
    row.protocol = unruh::protocol_from_string(fields[5]);
    row.quantities.fidelity = parse_real(fields[6]);
    row.quantities.mutual_info_bits = parse_real(fields[7]);
    row.quantities.conditional_entropy_bits = parse_real(fields[8]);
    row.quantities.capacity_bits = parse_real(fields[9]);
    row.quantities.coherent_info_bits = parse_real(fields[10]);
    row.quantities.source_entropy_bits =
        fock::binary_entropy(row.alpha_sq);
    row.status = fields[11];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace horizon::csv
