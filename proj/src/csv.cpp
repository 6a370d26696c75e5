#include "cfi/csv.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace cfi {
namespace {

std::vector<std::string> split_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::string field;
    std::stringstream row(line);
    while (std::getline(row, field, ',')) {
        // trim surrounding blanks
        const auto begin = field.find_first_not_of(" \t");
        const auto end = field.find_last_not_of(" \t");
        fields.push_back(begin == std::string::npos ? ""
                                                    : field.substr(begin, end - begin + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void bad_record(int line_no, const std::string& what) {
    throw Error(ErrorCode::BadRecord, "line " + std::to_string(line_no) + ": " + what);
}

double parse_value(const std::string& text, int line_no) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) bad_record(line_no, "bad value '" + text + "'");
        return value;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        bad_record(line_no, "bad value '" + text + "'");
    }
}

int parse_year(const std::string& text, int line_no) {
    if (text.size() != 4 || !std::all_of(text.begin(), text.end(), [](unsigned char c) {
            return std::isdigit(c) != 0;
        }))
        bad_record(line_no, "year must be a 4-digit integer, got '" + text + "'");
    return std::stoi(text);
}

}  // namespace

std::vector<RawRecord> read_panel_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    std::vector<RawRecord> records;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_line(line);
        if (!header_seen) {
            if (fields.size() != 4 || lower(fields[0]) != "entity" ||
                lower(fields[1]) != "year" || lower(fields[2]) != "indicator" ||
                lower(fields[3]) != "value")
                bad_record(line_no, "expected header entity,year,indicator,value");
            header_seen = true;
            continue;
        }
        if (fields.size() != 4) bad_record(line_no, "expected 4 fields");
        RawRecord rec;
        rec.entity = fields[0];
        rec.year = parse_year(fields[1], line_no);
        rec.indicator = fields[2];
        rec.value = parse_value(fields[3], line_no);
        if (rec.entity.empty()) bad_record(line_no, "empty entity");
        if (rec.indicator.empty()) bad_record(line_no, "empty indicator");
        records.push_back(std::move(rec));
    }
    if (!header_seen) throw Error(ErrorCode::BadRecord, "empty file");
    return records;
}

std::vector<RawRecord> read_panel_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    return read_panel_csv(in);
}

PanelSample read_regressor_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    PanelSample sample;
    bool header_seen = false;
    std::size_t k = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_line(line);
        if (!header_seen) {
            if (fields.size() < 4 || lower(fields[0]) != "entity" || lower(fields[1]) != "year")
                bad_record(line_no,
                           "expected header entity,year,<response>,<regressor>,...");
            sample.response_name = fields[2];
            for (std::size_t j = 3; j < fields.size(); ++j) {
                if (fields[j].empty()) bad_record(line_no, "empty column name");
                sample.regressor_names.push_back(fields[j]);
            }
            k = sample.regressor_names.size();
            header_seen = true;
            continue;
        }
        if (fields.size() != k + 3)
            bad_record(line_no, "expected " + std::to_string(k + 3) + " fields");
        PanelObservation row;
        row.entity = fields[0];
        if (row.entity.empty()) bad_record(line_no, "empty entity");
        row.year = parse_year(fields[1], line_no);
        row.response = parse_value(fields[2], line_no);
        row.regressors.resize(static_cast<Eigen::Index>(k));
        for (std::size_t j = 0; j < k; ++j)
            row.regressors(static_cast<Eigen::Index>(j)) = parse_value(fields[3 + j], line_no);
        sample.rows.push_back(std::move(row));
    }
    if (!header_seen) throw Error(ErrorCode::BadRecord, "empty file");
    return sample;
}

PanelSample read_regressor_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    return read_regressor_csv(in);
}

}  // namespace cfi
