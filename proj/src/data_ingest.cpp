#include "hypertrend/data_ingest.hpp"

#include "hypertrend/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace hypertrend {
namespace {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields may hold commas, doubled quotes and newlines.
std::vector<Row> read_csv(std::string_view doc) {
    std::vector<Row> rows;
    Row row;
    std::string cell;
    bool quoted = false;
    bool row_has_content = false;
    std::size_t line = 0;

    auto end_cell = [&] {
        row.push_back(std::move(cell));
        cell.clear();
    };
    auto end_row = [&] {
        end_cell();
        rows.push_back(std::move(row));
        row.clear();
        row_has_content = false;
    };

    for (std::size_t i = 0; i < doc.size(); ++i) {
        const char c = doc[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < doc.size() && doc[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                cell.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            quoted = true;
            row_has_content = true;
            break;
        case ',':
            end_cell();
            row_has_content = true;
            break;
        case '\r':
            break;
        case '\n':
            end_row();
            ++line;
            break;
        default:
            cell.push_back(c);
            row_has_content = true;
        }
    }
    if (quoted) throw ParseError(line, 0, "unterminated quoted field");
    if (row_has_content || !cell.empty()) end_row();

    // Strip a UTF-8 byte order mark.
    if (!rows.empty() && !rows[0].empty() && rows[0][0].starts_with("\xEF\xBB\xBF")) rows[0][0].erase(0, 3);
    return rows;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

std::string normalize_name(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : trim(s)) {
        if (c == ' ' || c == '\t') {
            space = true;
            continue;
        }
        if (space) out.push_back(' ');
        space = false;
        out.push_back(c);
    }
    return out;
}

bool is_blank(const Row& row) {
    return std::all_of(row.begin(), row.end(), [](const std::string& c) { return trim(c).empty(); });
}

std::optional<long> parse_year(std::string_view text) {
    const auto t = trim(text);
    long year = 0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, year);
    if (t.empty() || ec != std::errc{} || ptr != last) return std::nullopt;
    return year;
}

// Accepts plain decimals and thousands-grouped values such as "1,234.5".
std::optional<double> parse_value(std::string_view text) {
    auto t = trim(text);
    if (t.find(',') != std::string::npos) {
        const auto dot = t.find('.');
        const auto int_part = t.substr(0, dot);
        std::size_t group = 0;
        bool ok = !int_part.empty() && int_part.front() != ',';
        for (auto it = int_part.rbegin(); ok && it != int_part.rend(); ++it) {
            if (*it == ',') {
                ok = group == 3;
                group = 0;
            } else {
                ++group;
            }
        }
        if (!ok || group > 3) return std::nullopt;
        std::erase(t, ',');
    }
    double value = 0.0;
    const auto* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), last, value);
    if (t.empty() || ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

void insert_observation(std::map<long, double>& series, long year, double value, const std::string& entity,
                        std::size_t row) {
    if (!series.emplace(year, value).second) {
        throw DuplicateYear("entity '" + entity + "' has year " + std::to_string(year) + " twice (line " +
                            std::to_string(row + 1) + ")");
    }
}

TimeSeries to_series(const std::map<long, double>& obs) {
    std::vector<Observation> points;
    points.reserve(obs.size());
    for (auto [year, value] : obs) points.push_back({static_cast<double>(year), value});
    return TimeSeries(std::move(points));
}

double checked_value(std::string_view text, std::size_t row, std::size_t col) {
    const auto value = parse_value(text);
    if (!value) throw ParseError(row, col, "non-numeric cell '" + std::string(text) + "'");
    if (!std::isfinite(*value) || *value <= 0.0) throw ParseError(row, col, "value must be positive");
    return *value;
}

std::string quote(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos && trim(s) == s) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_year(Year year) {
    if (year == std::floor(year) && std::abs(year) < 1e15) return std::to_string(static_cast<long long>(year));
    return format_number(year);
}

} // namespace

void Dataset::add(std::string name, TimeSeries series) {
    if (entities_.contains(name)) throw DuplicateEntity("entity '" + name + "' appears more than once");
    entities_.emplace(std::move(name), std::move(series));
}

bool Dataset::contains(std::string_view name) const { return entities_.find(name) != entities_.end(); }

const TimeSeries& Dataset::at(std::string_view name) const {
    auto it = entities_.find(name);
    if (it == entities_.end()) throw UnknownEntity("unknown entity '" + std::string(name) + "'");
    return it->second;
}

std::vector<std::string> Dataset::names() const {
    std::vector<std::string> out;
    out.reserve(entities_.size());
    for (const auto& [name, _] : entities_) out.push_back(name);
    return out;
}

Dataset parse_wide_csv(std::string_view document, const CsvOptions& options) {
    const auto rows = read_csv(document);
    if (rows.size() <= options.header_row) throw ParseError(options.header_row, 0, "missing header row");

    const auto& header = rows[options.header_row];
    std::vector<std::pair<std::size_t, std::string>> columns;
    std::set<std::string> seen;
    for (std::size_t c = 1; c < header.size(); ++c) {
        auto name = normalize_name(header[c]);
        if (name.empty()) continue;
        if (!seen.insert(name).second) throw DuplicateEntity("entity '" + name + "' appears more than once");
        columns.emplace_back(c, std::move(name));
    }

    std::vector<std::map<long, double>> series(columns.size());
    for (std::size_t r = options.header_row + 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (is_blank(row)) continue;
        const auto year = parse_year(row[0]);
        if (!year) {
            if (options.skip_non_year_rows) continue;
            throw ParseError(r, 0, "year label '" + row[0] + "' is not an integer");
        }
        std::size_t next = 0;
        for (std::size_t c = 1; c < row.size(); ++c) {
            const bool blank = trim(row[c]).empty();
            while (next < columns.size() && columns[next].first < c) ++next;
            if (next == columns.size() || columns[next].first != c) {
                if (!blank) throw ParseError(r, c, "value in a column without an entity name");
                continue;
            }
            if (blank) continue;
            insert_observation(series[next], *year, checked_value(row[c], r, c), columns[next].second, r);
        }
    }

    Dataset ds;
    for (std::size_t i = 0; i < columns.size(); ++i) ds.add(columns[i].second, to_series(series[i]));
    return ds;
}

Dataset parse_long_csv(std::string_view document) {
    const auto rows = read_csv(document);
    std::size_t r = 0;
    while (r < rows.size() && is_blank(rows[r])) ++r;
    if (r == rows.size()) throw ParseError(0, 0, "empty document");
    {
        const auto& h = rows[r];
        if (h.size() != 3 || trim(h[0]) != "entity" || trim(h[1]) != "year" || trim(h[2]) != "gdp_millions") {
            throw ParseError(r, 0, "expected header '" + std::string(kLongFormatHeader) + "'");
        }
    }

    std::map<std::string, std::map<long, double>> entities;
    for (++r; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (is_blank(row)) continue;
        if (row.size() != 3) throw ParseError(r, 0, "expected 3 fields, got " + std::to_string(row.size()));
        auto name = normalize_name(row[0]);
        if (name.empty()) throw ParseError(r, 0, "empty entity name");
        const auto year = parse_year(row[1]);
        if (!year) throw ParseError(r, 1, "year '" + row[1] + "' is not an integer");
        if (trim(row[2]).empty()) continue;
        insert_observation(entities[name], *year, checked_value(row[2], r, 2), name, r);
    }

    Dataset ds;
    for (const auto& [name, obs] : entities) ds.add(name, to_series(obs));
    return ds;
}

Dataset parse_dataset(std::string_view document, const CsvOptions& options) {
    const auto rows = read_csv(document);
    std::size_t r = 0;
    while (r < rows.size() && is_blank(rows[r])) ++r;
    if (r < rows.size() && rows[r].size() == 3 && trim(rows[r][0]) == "entity" && trim(rows[r][1]) == "year" &&
        trim(rows[r][2]) == "gdp_millions") {
        return parse_long_csv(document);
    }
    return parse_wide_csv(document, options);
}

Dataset load_dataset(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot read data file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), options);
}

std::string serialize_wide_csv(const Dataset& ds) {
    std::set<double> years;
    for (const auto& [_, ts] : ds.entities()) {
        for (const auto& p : ts) years.insert(p.year);
    }
    std::string out = "year";
    for (const auto& [name, _] : ds.entities()) out += "," + quote(name);
    out += "\n";
    for (double year : years) {
        out += format_year(year);
        for (const auto& [_, ts] : ds.entities()) {
            out += ",";
            if (const auto* p = ts.find(year)) out += format_number(p->value);
        }
        out += "\n";
    }
    return out;
}

std::string serialize_long_csv(const Dataset& ds) {
    std::string out(kLongFormatHeader);
    out += "\n";
    for (const auto& [name, ts] : ds.entities()) {
        for (const auto& p : ts) out += quote(name) + "," + format_year(p.year) + "," + format_number(p.value) + "\n";
    }
    return out;
}

TimeSeries aggregate(const Dataset& ds, const RegionSpec& spec) {
    if (spec.members.empty()) throw UnknownEntity("region '" + spec.name + "' has no members");
    if (spec.mode == AggregationMode::UsePrebuiltTotal) {
        if (spec.members.size() != 1) {
            throw UnknownEntity("region '" + spec.name + "' must name exactly one prebuilt total");
        }
        const auto& ts = ds.at(spec.members.front());
        if (ts.empty()) throw EmptyResult("region '" + spec.name + "' has no observations");
        return ts;
    }

    // Summing in name order keeps the result bit-identical under member permutation.
    auto names = spec.members;
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
        throw DuplicateEntity("region '" + spec.name + "' lists a member twice");
    }
    std::vector<const TimeSeries*> members;
    for (const auto& m : names) members.push_back(&ds.at(m));

    std::vector<Observation> out;
    for (const auto& p : *members.front()) {
        double sum = 0.0;
        bool everywhere = true;
        for (const auto* ts : members) {
            const auto* q = ts->find(p.year);
            if (q == nullptr) {
                everywhere = false;
                break;
            }
            sum += q->value;
        }
        if (everywhere) out.push_back({p.year, sum});
    }
    if (out.empty()) throw EmptyResult("members of region '" + spec.name + "' share no years");
    return TimeSeries(std::move(out));
}

TimeSeries to_billions(const TimeSeries& ts) {
    std::vector<Observation> out;
    out.reserve(ts.size());
    for (const auto& p : ts) out.push_back({p.year, p.value / 1000.0});
    return TimeSeries(std::move(out));
}

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) return std::to_string(value);
    return std::string(buf, ptr);
}

} // namespace hypertrend
