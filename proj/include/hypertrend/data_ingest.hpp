#pragma once

// Maddison-style tables: wide CSV (first row entity names, first column
// years) or long CSV (entity,year,gdp_millions). Values stay in millions of
// 1990 GK$ until to_billions is applied.

#include "hypertrend/core_model.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hypertrend {

/// Named series keyed by entity (country or prebuilt regional total).
class Dataset {
public:
    /// Throws DuplicateEntity.
    void add(std::string name, TimeSeries series);

    bool contains(std::string_view name) const;
    /// Throws UnknownEntity.
    const TimeSeries& at(std::string_view name) const;

    std::vector<std::string> names() const;
    std::size_t size() const noexcept { return entities_.size(); }
    const std::map<std::string, TimeSeries, std::less<>>& entities() const noexcept { return entities_; }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::map<std::string, TimeSeries, std::less<>> entities_;
};

struct CsvOptions {
    /// Zero-based index of the row holding entity names; rows above it are skipped.
    std::size_t header_row = 0;
    /// Skip data rows whose first cell is not an integer year (spreadsheet
    /// footnotes) instead of failing.
    bool skip_non_year_rows = false;
};

inline constexpr std::string_view kLongFormatHeader = "entity,year,gdp_millions";

/// Wide layout. Empty cells are missing observations; columns with an empty
/// header are ignored. Entity names are trimmed and internal whitespace
/// collapsed. Throws ParseError, DuplicateYear, DuplicateEntity.
Dataset parse_wide_csv(std::string_view document, const CsvOptions& options = {});

/// Long layout with the kLongFormatHeader header.
Dataset parse_long_csv(std::string_view document);

/// Dispatches on the header row: long layout if it matches kLongFormatHeader, wide otherwise.
Dataset parse_dataset(std::string_view document, const CsvOptions& options = {});

/// Reads and parses a file; throws FileError naming the path when unreadable.
Dataset load_dataset(const std::filesystem::path& path, const CsvOptions& options = {});

std::string serialize_wide_csv(const Dataset& ds);
std::string serialize_long_csv(const Dataset& ds);

enum class AggregationMode { SumMembers, UsePrebuiltTotal };

struct RegionSpec {
    std::string name;
    /// Countries to sum, or the single prebuilt total entity.
    std::vector<std::string> members;
    AggregationMode mode = AggregationMode::SumMembers;

    friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

/// SumMembers sums over the years present in every member (strict
/// intersection, no interpolation). UsePrebuiltTotal returns the named series.
/// Throws UnknownEntity or EmptyResult.
TimeSeries aggregate(const Dataset& ds, const RegionSpec& spec);

/// Millions to billions.
TimeSeries to_billions(const TimeSeries& ts);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

} // namespace hypertrend
