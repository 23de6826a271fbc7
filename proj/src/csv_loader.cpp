#include "mdlgbg/csv_loader.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <unordered_map>

#include "mdlgbg/errors.hpp"

namespace mdlgbg {

LabelColumn LabelColumn::parse(const std::string& text) {
    LabelColumn col;
    if (text == "last" || text.empty()) return col;
    if (text == "none") {
        col.kind = Kind::None;
        return col;
    }
    std::size_t idx = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), idx);
    if (ec == std::errc() && ptr == text.data() + text.size()) {
        col.kind = Kind::Index;
        col.index = idx;
    } else {
        col.kind = Kind::Name;
        col.name = text;
    }
    return col;
}

std::string LabelColumn::to_string() const {
    switch (kind) {
        case Kind::Last: return "last";
        case Kind::None: return "none";
        case Kind::Index: return std::to_string(index);
        case Kind::Name: return name;
    }
    return "last";
}

std::vector<std::vector<std::string>> read_csv_records(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;
    char ch;
    auto end_record = [&] {
        if (field_started || !record.empty()) {
            record.push_back(std::move(field));
            records.push_back(std::move(record));
        }
        record.clear();
        field.clear();
        field_started = false;
    };
    while (in.get(ch)) {
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get(ch);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                field_started = true;
                break;
            case '\r':
                if (in.peek() == '\n') in.get(ch);
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                break;
            default:
                field.push_back(ch);
                field_started = true;
        }
    }
    if (in_quotes) throw ParseError("unterminated quoted field near line " + std::to_string(line));
    end_record();
    // Strip a UTF-8 byte-order mark.
    if (!records.empty() && !records.front().empty() && records.front().front().rfind("\xEF\xBB\xBF", 0) == 0)
        records.front().front().erase(0, 3);
    return records;
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    const char* begin = s.data();
    if (*begin == '+') ++begin;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

LoadedCsv parse_csv(std::istream& in, const LabelColumn& label_column) {
    auto records = read_csv_records(in);
    if (records.empty()) throw ParseError("empty CSV input");
    const std::size_t width = records.front().size();
    for (std::size_t r = 0; r < records.size(); ++r) {
        if (records[r].size() != width) {
            throw ParseError("row " + std::to_string(r + 1) + " has " + std::to_string(records[r].size()) +
                             " columns, expected " + std::to_string(width));
        }
    }

    std::optional<std::size_t> label_idx;
    switch (label_column.kind) {
        case LabelColumn::Kind::Last: label_idx = width - 1; break;
        case LabelColumn::Kind::Index: label_idx = label_column.index; break;
        case LabelColumn::Kind::None: break;
        case LabelColumn::Kind::Name: {
            const auto& head = records.front();
            auto it = std::find_if(head.begin(), head.end(),
                                   [&](const std::string& h) { return trim(h) == label_column.name; });
            if (it == head.end()) throw ParseError("label column '" + label_column.name + "' not found in header");
            label_idx = static_cast<std::size_t>(it - head.begin());
            break;
        }
    }
    if (label_idx && *label_idx >= width) {
        throw ParseError("label column " + std::to_string(*label_idx) + " is out of range (file has " +
                         std::to_string(width) + " columns)");
    }
    const std::size_t d = width - (label_idx ? 1 : 0);
    if (d == 0) throw ParseError("no feature columns");

    bool has_header = label_column.kind == LabelColumn::Kind::Name;
    if (!has_header) {
        for (std::size_t c = 0; c < width; ++c) {
            if (label_idx && c == *label_idx) continue;
            if (!parse_number(records.front()[c])) {
                has_header = true;
                break;
            }
        }
    }

    LoadedCsv out;
    if (has_header) out.header = records.front();
    const std::size_t first_row = has_header ? 1 : 0;
    const std::size_t n = records.size() - first_row;
    if (n == 0) throw ParseError("CSV has a header but no data rows");

    std::vector<double> values;
    values.reserve(n * d);
    std::vector<int> labels;
    std::unordered_map<std::string, int> label_ids;
    for (std::size_t r = first_row; r < records.size(); ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const std::string& cell = records[r][c];
            if (label_idx && c == *label_idx) {
                const std::string key = trim(cell);
                auto [it, inserted] = label_ids.try_emplace(key, static_cast<int>(label_ids.size()));
                if (inserted) out.class_names.push_back(key);
                labels.push_back(it->second);
                continue;
            }
            auto v = parse_number(cell);
            if (!v) {
                throw ParseError("non-numeric value '" + cell + "' at row " + std::to_string(r + 1) + ", column " +
                                 std::to_string(c + 1));
            }
            values.push_back(*v);
        }
    }
    out.dataset.values = Matrix(n, d, std::move(values));
    if (label_idx) out.dataset.labels = std::move(labels);
    return out;
}

LoadedCsv load_csv(const std::string& path, const LabelColumn& label_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_csv(in, label_column);
}

}  // namespace mdlgbg
