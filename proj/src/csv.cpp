#include "folink/csv.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace folink {

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw std::runtime_error("missing CSV column: " + name);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open CSV file: " + path.string());
    }
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            table.comments.push_back(line.substr(1));
            continue;
        }
        if (!have_header) {
            table.header = split_fields(line);
            have_header = true;
        } else {
            table.rows.push_back(split_fields(line));
        }
    }
    if (!have_header) {
        throw std::runtime_error("CSV file has no header row: " + path.string());
    }
    return table;
}

void write_csv_atomic(const std::filesystem::path& path, const CsvTable& table) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw std::runtime_error("cannot write CSV file: " + path.string());
        }
        for (const auto& c : table.comments) {
            out << '#' << c << '\n';
        }
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            out << (i == 0 ? "" : ",") << table.header[i];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i == 0 ? "" : ",") << row[i];
            }
            out << '\n';
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::runtime_error("invalid numeric field: " + text);
    }
    return value;
}

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) {
        buf[i] = hex[(h >> (60 - 4 * i)) & 0xF];
    }
    buf[16] = '\0';
    return buf;
}

}  // namespace folink
