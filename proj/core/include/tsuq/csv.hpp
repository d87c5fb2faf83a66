#pragma once

#include <string>
#include <vector>

namespace tsuq::dataio {

// One parsed CSV file: a header row plus data rows of raw string cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Splits a single line on commas, honoring double-quoted fields with ""
// escapes. Embedded newlines inside quotes are not supported.
std::vector<std::string> split_csv_line(const std::string& line);

// Reads a whole file; first line is the header. CRLF endings are accepted,
// fully blank trailing lines are skipped. Rows whose cell count differs from
// the header trigger a FormatError naming the 1-based line number.
CsvTable read_csv(const std::string& path);

}  // namespace tsuq::dataio
