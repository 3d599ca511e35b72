#pragma once

// csv.hpp -- stable CSV serialization of sweep rows (UTF-8, LF endings,
// locale independent).

#include <string>
#include <vector>

#include "horizon/analysis.hpp"

namespace horizon::csv {

inline constexpr const char* kHeader =
    "a,r,omega,alpha_sq,encoding,protocol,fidelity,mutual_info_bits,"
    "conditional_entropy_bits,capacity_bits,coherent_info_bits,status";

// Shortest representation carrying 12 significant digits, '.' decimal
// separator regardless of locale.
std::string format_real(double value);

std::string to_line(const analysis::SweepRow& row);

// Writes header plus rows to a temporary sibling file and renames it into
// place, so a failure never leaves a partial file behind.
void write_rows(const std::string& path,
                const std::vector<analysis::SweepRow>& rows);

std::vector<analysis::SweepRow> read_rows(const std::string& path);

}  // namespace horizon::csv
