#include "rmtkit/panel.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace rmtkit {

int PanelGrid::year_index(int year) const {
    auto it = std::lower_bound(years.begin(), years.end(), year);
    if (it == years.end() || *it != year) return -1;
    return static_cast<int>(it - years.begin());
}

int PanelGrid::country_index(std::string_view code) const {
    for (size_t i = 0; i < countries.size(); ++i)
        if (countries[i] == code) return static_cast<int>(i);
    return -1;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> cells;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

int parse_year_cell(std::string_view cell, size_t line_no) {
    cell = trim(cell);
    int year = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), year);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw DataError("line " + std::to_string(line_no) + ": year cell is not an integer: '" +
                        std::string(cell) + "'");
    return year;
}

double parse_level_cell(std::string_view cell, size_t line_no, const std::string& country) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw DataError("line " + std::to_string(line_no) + ", country '" + country +
                        "': non-numeric cell '" + std::string(cell) + "'");
    if (!std::isfinite(v))
        throw DataError("line " + std::to_string(line_no) + ", country '" + country +
                        "': non-finite level");
    if (v <= 0.0)
        throw DataError("line " + std::to_string(line_no) + ", country '" + country +
                        "': non-positive level " + std::string(cell));
    return v;
}

} // namespace

LevelPanel parse_panel_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    // tolerate CRLF input
    for (auto& line : lines)
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    size_t first = 0;
    while (first < lines.size() && trim(lines[first]).empty()) ++first;
    if (first >= lines.size()) throw DataError("empty panel: no header row");

    auto header = split_csv_line(lines[first]);
    if (!iequals(trim(header[0]), "year"))
        throw DataError("first header cell must be 'year', got '" +
                        std::string(trim(header[0])) + "'");
    if (header.size() < 2) throw DataError("header names no countries");

    LevelPanel panel;
    for (size_t c = 1; c < header.size(); ++c) {
        std::string code(trim(header[c]));
        if (code.empty())
            throw DataError("header column " + std::to_string(c + 1) + ": empty country code");
        if (panel.country_index(code) >= 0)
            throw DataError("duplicate country code '" + code + "'");
        panel.countries.push_back(std::move(code));
    }

    const size_t ncols = header.size();
    struct Row {
        int year;
        std::vector<std::optional<double>> cells;
    };
    std::vector<Row> rows;
    std::set<int> seen_years;
    for (size_t i = first + 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        auto cells = split_csv_line(lines[i]);
        if (cells.size() != ncols)
            throw DataError("line " + std::to_string(i + 1) + ": expected " +
                            std::to_string(ncols) + " cells, got " + std::to_string(cells.size()));
        Row row;
        row.year = parse_year_cell(cells[0], i + 1);
        if (!seen_years.insert(row.year).second)
            throw DataError("duplicate year " + std::to_string(row.year));
        for (size_t c = 1; c < ncols; ++c) {
            std::string_view cell = trim(cells[c]);
            if (cell.empty())
                row.cells.emplace_back(std::nullopt);
            else
                row.cells.emplace_back(parse_level_cell(cell, i + 1, panel.countries[c - 1]));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("panel has no data rows");

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.year < b.year; });
    panel.years.reserve(rows.size());
    panel.values.reserve(rows.size() * panel.countries.size());
    for (auto& row : rows) {
        panel.years.push_back(row.year);
        for (auto& cell : row.cells) panel.values.push_back(cell);
    }
    return panel;
}

std::string serialize_panel_csv(const LevelPanel& panel) {
    std::string out = "year";
    for (const auto& c : panel.countries) {
        out += ',';
        out += c;
    }
    out += '\n';
    for (int y = 0; y < panel.year_count(); ++y) {
        out += std::to_string(panel.years[y]);
        for (int c = 0; c < panel.country_count(); ++c) {
            out += ',';
            if (const auto& v = panel.at(y, c)) out += format_double(*v);
        }
        out += '\n';
    }
    return out;
}

GrowthPanel growth_rates(const LevelPanel& panel) {
    GrowthPanel growth;
    growth.countries = panel.countries;
    if (panel.year_count() < 2) return growth;

    growth.years.assign(panel.years.begin() + 1, panel.years.end());
    growth.values.reserve(growth.years.size() * growth.countries.size());
    for (int y = 1; y < panel.year_count(); ++y) {
        const bool consecutive = panel.years[y - 1] == panel.years[y] - 1;
        for (int c = 0; c < panel.country_count(); ++c) {
            const auto& prev = panel.at(y - 1, c);
            const auto& cur = panel.at(y, c);
            if (consecutive && prev && cur)
                growth.values.emplace_back(100.0 * (*cur / *prev - 1.0));
            else
                growth.values.emplace_back(std::nullopt);
        }
    }
    return growth;
}

namespace {

bool excluded(int year, const std::vector<YearRange>& exclusions) {
    for (const auto& r : exclusions)
        if (r.contains(year)) return true;
    return false;
}

} // namespace

GrowthPanel select_window(const GrowthPanel& growth, const PeriodSpec& spec, bool allow_gaps) {
    if (spec.start_year > spec.end_year)
        throw DataError("window start " + std::to_string(spec.start_year) + " after end " +
                        std::to_string(spec.end_year));
    for (const auto& r : spec.exclusions)
        if (r.lo > r.hi)
            throw DataError("malformed exclusion range " + std::to_string(r.lo) + "-" +
                            std::to_string(r.hi));

    std::vector<int> col_idx;
    std::vector<std::string> col_names;
    if (spec.country_subset) {
        std::set<std::string> seen;
        for (const auto& code : *spec.country_subset) {
            int idx = growth.country_index(code);
            if (idx < 0) throw DataError("unknown country '" + code + "' in window selection");
            if (!seen.insert(code).second)
                throw DataError("country '" + code + "' listed twice in window selection");
            col_idx.push_back(idx);
            col_names.push_back(code);
        }
    } else {
        col_idx.resize(growth.countries.size());
        std::iota(col_idx.begin(), col_idx.end(), 0);
        col_names = growth.countries;
    }
    if (col_idx.empty()) throw DataError("window selects no countries");

    std::vector<int> row_idx;
    for (int y = 0; y < growth.year_count(); ++y) {
        int year = growth.years[y];
        if (year < spec.start_year || year > spec.end_year) continue;
        if (excluded(year, spec.exclusions)) {
            if (!allow_gaps)
                throw DataError("window " + std::to_string(spec.start_year) + "-" +
                                std::to_string(spec.end_year) +
                                " intersects an excluded year range at " + std::to_string(year));
            continue;
        }
        row_idx.push_back(y);
    }
    if (row_idx.empty())
        throw DataError("window " + std::to_string(spec.start_year) + "-" +
                        std::to_string(spec.end_year) + " selects no growth years");

    if (!allow_gaps) {
        for (size_t i = 1; i < row_idx.size(); ++i)
            if (growth.years[row_idx[i]] != growth.years[row_idx[i - 1]] + 1)
                throw DataError("window years are not contiguous between " +
                                std::to_string(growth.years[row_idx[i - 1]]) + " and " +
                                std::to_string(growth.years[row_idx[i]]));
        // also require coverage of the requested span itself
        if (growth.years[row_idx.front()] != spec.start_year ||
            growth.years[row_idx.back()] != spec.end_year)
            throw DataError("growth panel covers " +
                            std::to_string(growth.years[row_idx.front()]) + "-" +
                            std::to_string(growth.years[row_idx.back()]) +
                            " but window asks for " + std::to_string(spec.start_year) + "-" +
                            std::to_string(spec.end_year));
    }

    GrowthPanel out;
    out.countries = col_names;
    out.years.reserve(row_idx.size());
    out.values.reserve(row_idx.size() * col_idx.size());
    for (int y : row_idx) {
        out.years.push_back(growth.years[y]);
        for (int c : col_idx) {
            const auto& v = growth.at(y, c);
            if (!v)
                throw DataError("missing growth value for '" + growth.countries[c] + "' in " +
                                std::to_string(growth.years[y]) + "; refusing to impute");
            out.values.emplace_back(v);
        }
    }
    return out;
}

std::vector<PanelFinding> validate_panel(const LevelPanel& panel, double outlier_threshold_pct) {
    std::vector<PanelFinding> findings;

    for (int c = 0; c < panel.country_count(); ++c) {
        const std::string& name = panel.countries[c];

        // missing-value spans
        int span_start = -1;
        for (int y = 0; y <= panel.year_count(); ++y) {
            bool missing = y < panel.year_count() && !panel.at(y, c).has_value();
            if (missing && span_start < 0) span_start = y;
            if (!missing && span_start >= 0) {
                PanelFinding f;
                f.kind = PanelFinding::Kind::MissingSpan;
                f.country = name;
                f.year_lo = panel.years[span_start];
                f.year_hi = panel.years[y - 1];
                f.message = name + ": missing levels " + std::to_string(f.year_lo) + "-" +
                            std::to_string(f.year_hi);
                findings.push_back(std::move(f));
                span_start = -1;
            }
        }

        // growth outliers on consecutive present years
        for (int y = 1; y < panel.year_count(); ++y) {
            if (panel.years[y - 1] != panel.years[y] - 1) continue;
            const auto& prev = panel.at(y - 1, c);
            const auto& cur = panel.at(y, c);
            if (!prev || !cur) continue;
            double g = 100.0 * (*cur / *prev - 1.0);
            if (std::abs(g) > outlier_threshold_pct) {
                PanelFinding f;
                f.kind = PanelFinding::Kind::GrowthOutlier;
                f.country = name;
                f.year_lo = f.year_hi = panel.years[y];
                f.value = g;
                f.message = name + ": growth of " + format_double(g) + "% in " +
                            std::to_string(panel.years[y]) + " exceeds " +
                            format_double(outlier_threshold_pct) + "% threshold";
                findings.push_back(std::move(f));
            }
        }

        // constant runs of three or more equal consecutive levels
        int run_start = -1;
        for (int y = 1; y <= panel.year_count(); ++y) {
            bool continues = y < panel.year_count() && panel.years[y - 1] == panel.years[y] - 1 &&
                             panel.at(y - 1, c).has_value() && panel.at(y, c).has_value() &&
                             *panel.at(y - 1, c) == *panel.at(y, c);
            if (continues && run_start < 0) run_start = y - 1;
            if (!continues && run_start >= 0) {
                if (y - run_start >= 3) {
                    PanelFinding f;
                    f.kind = PanelFinding::Kind::ConstantRun;
                    f.country = name;
                    f.year_lo = panel.years[run_start];
                    f.year_hi = panel.years[y - 1];
                    f.message = name + ": constant level " + std::to_string(f.year_lo) + "-" +
                                std::to_string(f.year_hi) + " (zero growth variance)";
                    findings.push_back(std::move(f));
                }
                run_start = -1;
            }
        }
    }
    return findings;
}

} // namespace rmtkit
