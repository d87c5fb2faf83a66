#include "tsuq/loaders.hpp"

#include <cstdint>
#include <cstdio>
#include <map>
#include <string>

#include "tsuq/csv.hpp"
#include "tsuq/error.hpp"

namespace tsuq::dataio {

namespace {

std::size_t find_column(const CsvTable& t, const std::string& name,
                        const std::string& path) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (t.header[i] == name) return i;
    }
    throw FormatError(path + ": missing column '" + name + "'");
}

double parse_double(const std::string& cell, const std::string& path,
                    std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw FormatError(path + ":" + std::to_string(line_no) +
                          ": cannot parse number '" + cell + "'");
    }
}

long parse_long(const std::string& cell, const std::string& path,
                std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw FormatError(path + ":" + std::to_string(line_no) +
                          ": cannot parse integer '" + cell + "'");
    }
}

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(long y, long m, long d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy =
        static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

}  // namespace

FrameTable load_pm25(const std::string& path) {
    const CsvTable t = read_csv(path);
    const std::size_t c_year = find_column(t, "year", path);
    const std::size_t c_month = find_column(t, "month", path);
    const std::size_t c_day = find_column(t, "day", path);
    const std::size_t c_hour = find_column(t, "hour", path);
    const std::size_t c_pm = find_column(t, "pm2.5", path);
    const std::size_t c_cbwd = find_column(t, "cbwd", path);
    const std::vector<std::string> numeric_names = {"DEWP", "TEMP", "PRES",
                                                    "Iws", "Is", "Ir"};
    std::vector<std::size_t> c_num;
    for (const auto& n : numeric_names) c_num.push_back(find_column(t, n, path));

    FrameTable f;
    f.feature_names = {"pm2.5", "DEWP", "TEMP", "PRES", "cbwd", "Iws", "Is", "Ir"};
    f.target_col = 0;

    std::map<std::string, double> wind_codes;
    std::vector<double> flat;
    flat.reserve(t.rows.size() * 8);

    bool seen_pm = false;
    double last_pm = 0.0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::size_t line_no = r + 2;  // 1-based, after the header

        const std::string& pm_cell = row[c_pm];
        if (pm_cell == "NA" || pm_cell.empty()) {
            if (!seen_pm) continue;  // leading gap: drop the row
        } else {
            last_pm = parse_double(pm_cell, path, line_no);
            seen_pm = true;
        }

        const std::int64_t days = days_from_civil(parse_long(row[c_year], path, line_no),
                                                  parse_long(row[c_month], path, line_no),
                                                  parse_long(row[c_day], path, line_no));
        f.timestamps.push_back(days * 24 + parse_long(row[c_hour], path, line_no));

        const auto [it, inserted] = wind_codes.try_emplace(
            row[c_cbwd], static_cast<double>(wind_codes.size()));
        (void)inserted;

        flat.push_back(last_pm);
        flat.push_back(parse_double(row[c_num[0]], path, line_no));  // DEWP
        flat.push_back(parse_double(row[c_num[1]], path, line_no));  // TEMP
        flat.push_back(parse_double(row[c_num[2]], path, line_no));  // PRES
        flat.push_back(it->second);
        flat.push_back(parse_double(row[c_num[3]], path, line_no));  // Iws
        flat.push_back(parse_double(row[c_num[4]], path, line_no));  // Is
        flat.push_back(parse_double(row[c_num[5]], path, line_no));  // Ir
    }
    if (f.timestamps.empty()) {
        throw FormatError(path + ": no usable rows (pm2.5 always missing?)");
    }
    f.features = Tensor({f.timestamps.size(), 8}, std::move(flat));
    return f;
}

FrameTable load_jena(const std::string& path) {
    const CsvTable t = read_csv(path);
    const std::size_t c_time = find_column(t, "Date Time", path);
    const std::size_t c_target = find_column(t, "p (mbar)", path);

    FrameTable f;
    std::vector<std::size_t> feature_cols;
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (c == c_time) continue;
        f.feature_names.push_back(t.header[c]);
        feature_cols.push_back(c);
        if (c == c_target) f.target_col = f.feature_names.size() - 1;
    }

    std::vector<double> flat;
    for (std::size_t r = 0; r < t.rows.size(); r += 6) {
        const auto& row = t.rows[r];
        const std::size_t line_no = r + 2;

        // "dd.mm.yyyy HH:MM:SS" -> minutes since epoch
        const std::string& ts = row[c_time];
        int day, month, year, hh, mm, ss;
        if (std::sscanf(ts.c_str(), "%d.%d.%d %d:%d:%d", &day, &month, &year, &hh,
                        &mm, &ss) != 6) {
            throw FormatError(path + ":" + std::to_string(line_no) +
                              ": cannot parse timestamp '" + ts + "'");
        }
        f.timestamps.push_back((days_from_civil(year, month, day) * 24 + hh) * 60 + mm);

        for (std::size_t c : feature_cols) {
            flat.push_back(parse_double(row[c], path, line_no));
        }
    }
    if (f.timestamps.empty()) throw FormatError(path + ": no data rows");
    f.features = Tensor({f.timestamps.size(), feature_cols.size()}, std::move(flat));
    return f;
}

}  // namespace tsuq::dataio
