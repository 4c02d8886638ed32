#include "rmtkit/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <variant>

namespace rmtkit {

ClusteringMode parse_clustering_mode(std::string_view text) {
    if (text == "corr-rows") return ClusteringMode::CorrRows;
    if (text == "corr-metric") return ClusteringMode::CorrMetric;
    throw ConfigError("clustering mode must be 'corr-rows' or 'corr-metric', got '" +
                      std::string(text) + "'");
}

std::string clustering_mode_name(ClusteringMode mode) {
    return mode == ClusteringMode::CorrRows ? "corr-rows" : "corr-metric";
}

const PeriodSpec& AnalysisConfig::period(const std::string& name) const {
    for (const auto& [pname, spec] : periods)
        if (pname == name) return spec;
    throw ConfigError("config defines no period named '" + name + "'");
}

bool AnalysisConfig::has_period(const std::string& name) const {
    return std::any_of(periods.begin(), periods.end(),
                       [&](const auto& p) { return p.first == name; });
}

YearRange parse_year_range(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ConfigError("malformed year range '" + std::string(text) + "'");
        return v;
    };
    size_t dash = text.find('-');
    YearRange r;
    if (dash == std::string_view::npos) {
        r.lo = r.hi = parse_int(text);
    } else {
        r.lo = parse_int(text.substr(0, dash));
        r.hi = parse_int(text.substr(dash + 1));
    }
    if (r.lo > r.hi)
        throw ConfigError("year range '" + std::string(text) + "' runs backwards");
    return r;
}

// ---- minimal TOML-style document ----

namespace {

using TomlScalar = std::variant<std::int64_t, double, bool, std::string>;

struct TomlValue {
    bool is_list = false;
    TomlScalar scalar;
    std::vector<TomlScalar> list;
};

struct TomlEntry {
    std::string section;
    std::string key;
    TomlValue value;
    size_t line = 0;
    mutable bool consumed = false;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(size_t line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

std::string_view strip_comment(std::string_view s) {
    bool in_string = false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

TomlScalar parse_scalar(std::string_view text, size_t line) {
    text = trim(text);
    if (text.empty()) fail(line, "empty value");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"')
            fail(line, "unterminated string " + std::string(text));
        std::string_view body = text.substr(1, text.size() - 2);
        if (body.find('"') != std::string_view::npos)
            fail(line, "strings may not contain embedded quotes");
        return std::string(body);
    }
    if (text == "true") return true;
    if (text == "false") return false;
    if (text.find_first_of(".eE") == std::string_view::npos) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec == std::errc{} && ptr == text.data() + text.size()) return v;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc{} && ptr == text.data() + text.size()) return v;
    fail(line, "cannot parse value '" + std::string(text) + "' (strings need quotes)");
}

TomlValue parse_value(std::string_view text, size_t line) {
    text = trim(text);
    TomlValue value;
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') fail(line, "unterminated list");
        value.is_list = true;
        std::string_view body = text.substr(1, text.size() - 2);
        size_t start = 0;
        bool in_string = false;
        for (size_t i = 0; i <= body.size(); ++i) {
            if (i < body.size() && body[i] == '"') in_string = !in_string;
            if (i == body.size() || (body[i] == ',' && !in_string)) {
                std::string_view item = trim(body.substr(start, i - start));
                if (!item.empty()) value.list.push_back(parse_scalar(item, line));
                start = i + 1;
            }
        }
        return value;
    }
    value.scalar = parse_scalar(text, line);
    return value;
}

std::vector<TomlEntry> parse_toml(std::string_view text) {
    std::vector<TomlEntry> entries;
    std::string section;
    size_t line_no = 0;
    size_t pos = 0;
    std::set<std::pair<std::string, std::string>> seen;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) fail(line_no, "empty section name");
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        std::string key(trim(line.substr(0, eq)));
        if (key.empty()) fail(line_no, "empty key");
        if (!seen.insert({section, key}).second)
            fail(line_no, "duplicate key '" + key + "'" +
                              (section.empty() ? "" : " in [" + section + "]"));
        TomlEntry entry;
        entry.section = section;
        entry.key = key;
        entry.value = parse_value(line.substr(eq + 1), line_no);
        entry.line = line_no;
        entries.push_back(std::move(entry));
    }
    return entries;
}

// ---- typed accessors over the parsed entries ----

class EntryView {
public:
    explicit EntryView(const std::vector<TomlEntry>& entries) : entries_(entries) {}

    const TomlEntry* find(const std::string& section, const std::string& key) const {
        for (const auto& e : entries_)
            if (e.section == section && e.key == key) {
                e.consumed = true;
                return &e;
            }
        return nullptr;
    }

    std::int64_t require_int(const std::string& section, const std::string& key) const {
        const TomlEntry* e = find(section, key);
        if (!e) missing(section, key);
        return as_int(*e);
    }

    std::int64_t as_int(const TomlEntry& e) const {
        if (e.value.is_list || !std::holds_alternative<std::int64_t>(e.value.scalar))
            fail(e.line, "'" + e.key + "' must be an integer");
        return std::get<std::int64_t>(e.value.scalar);
    }

    std::string as_string(const TomlEntry& e) const {
        if (e.value.is_list || !std::holds_alternative<std::string>(e.value.scalar))
            fail(e.line, "'" + e.key + "' must be a quoted string");
        return std::get<std::string>(e.value.scalar);
    }

    std::vector<std::string> as_string_list(const TomlEntry& e) const {
        if (!e.value.is_list) fail(e.line, "'" + e.key + "' must be a list");
        std::vector<std::string> out;
        for (const auto& s : e.value.list) {
            if (!std::holds_alternative<std::string>(s))
                fail(e.line, "'" + e.key + "' must be a list of quoted strings");
            out.push_back(std::get<std::string>(s));
        }
        return out;
    }

    [[noreturn]] void missing(const std::string& section, const std::string& key) const {
        throw ConfigError("config is missing '" + key + "'" +
                          (section.empty() ? "" : " in [" + section + "]"));
    }

    std::vector<std::string> sections_with_prefix(const std::string& prefix) const {
        std::vector<std::string> names;
        for (const auto& e : entries_) {
            if (e.section.rfind(prefix, 0) != 0) continue;
            std::string name = e.section.substr(prefix.size());
            if (std::find(names.begin(), names.end(), name) == names.end())
                names.push_back(name);
        }
        return names;
    }

    void check_all_consumed() const {
        for (const auto& e : entries_)
            if (!e.consumed)
                fail(e.line, "unknown key '" + e.key + "'" +
                                 (e.section.empty() ? "" : " in [" + e.section + "]"));
    }

private:
    const std::vector<TomlEntry>& entries_;
};

std::vector<YearRange> read_exclusions(const EntryView& view, const std::string& section,
                                       const std::vector<YearRange>& fallback) {
    const TomlEntry* e = view.find(section, "exclusions");
    if (!e) return fallback;
    std::vector<YearRange> out;
    for (const auto& s : view.as_string_list(*e)) out.push_back(parse_year_range(s));
    return out;
}

std::vector<std::string> resolve_countries(const EntryView& view, const TomlEntry& e,
                                           const std::map<std::string, std::vector<std::string>>&
                                               groups) {
    if (e.value.is_list) return view.as_string_list(e);
    std::string name = view.as_string(e);
    auto it = groups.find(name);
    if (it == groups.end())
        throw ConfigError("config line " + std::to_string(e.line) + ": unknown country group '" +
                          name + "'");
    return it->second;
}

} // namespace

AnalysisConfig parse_analysis_config(std::string_view text) {
    auto entries = parse_toml(text);
    EntryView view(entries);
    AnalysisConfig config;

    if (const TomlEntry* e = view.find("", "data")) config.data_path = view.as_string(*e);
    if (config.data_path.empty()) view.missing("", "data");

    if (const TomlEntry* e = view.find("", "null_trials")) {
        auto v = view.as_int(*e);
        if (v < 1) throw ConfigError("null_trials must be positive");
        config.null_trials = static_cast<int>(v);
    }
    if (const TomlEntry* e = view.find("", "master_seed"))
        config.master_seed = static_cast<std::uint64_t>(view.as_int(*e));
    if (const TomlEntry* e = view.find("", "clustering_mode"))
        config.clustering_mode = parse_clustering_mode(view.as_string(*e));

    std::vector<YearRange> global_exclusions = read_exclusions(view, "", {});

    for (const auto& name : view.sections_with_prefix("group.")) {
        const TomlEntry* members = view.find("group." + name, "members");
        if (!members) view.missing("group." + name, "members");
        auto list = view.as_string_list(*members);
        if (list.empty()) throw ConfigError("group '" + name + "' has no members");
        config.country_groups[name] = std::move(list);
    }

    for (const auto& name : view.sections_with_prefix("period.")) {
        std::string section = "period." + name;
        PeriodSpec spec;
        spec.start_year = static_cast<int>(view.require_int(section, "start"));
        spec.end_year = static_cast<int>(view.require_int(section, "end"));
        if (spec.start_year > spec.end_year)
            throw ConfigError("period '" + name + "' starts after it ends");
        spec.exclusions = read_exclusions(view, section, global_exclusions);
        if (const TomlEntry* e = view.find(section, "countries"))
            spec.country_subset = resolve_countries(view, *e, config.country_groups);
        config.periods.emplace_back(name, std::move(spec));
    }

    if (const TomlEntry* w = view.find("rolling", "window")) {
        RollingConfig rolling;
        rolling.window_len = static_cast<int>(view.as_int(*w));
        rolling.start_year = static_cast<int>(view.require_int("rolling", "start"));
        rolling.end_year = static_cast<int>(view.require_int("rolling", "end"));
        if (const TomlEntry* e = view.find("rolling", "step"))
            rolling.step = static_cast<int>(view.as_int(*e));
        if (const TomlEntry* e = view.find("rolling", "countries"))
            rolling.countries = resolve_countries(view, *e, config.country_groups);
        rolling.exclusions = read_exclusions(view, "rolling", global_exclusions);
        if (rolling.window_len < 1) throw ConfigError("rolling window must be >= 1 years");
        if (rolling.step < 1) throw ConfigError("rolling step must be >= 1");
        config.rolling = std::move(rolling);
    }

    view.check_all_consumed();
    return config;
}

} // namespace rmtkit
