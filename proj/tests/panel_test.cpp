#include <doctest.h>

#include <string>

#include "rmtkit/panel.hpp"
#include "test_support.hpp"

using namespace rmtkit;

namespace {

LevelPanel make_panel(std::vector<int> years, std::vector<std::string> countries,
                      std::vector<std::optional<double>> values) {
    LevelPanel p;
    p.years = std::move(years);
    p.countries = std::move(countries);
    p.values = std::move(values);
    return p;
}

} // namespace

TEST_CASE("parse minimal two-country panel") {
    auto panel = parse_panel_csv("year,usa,uk\n1900,100,200\n1901,110,210\n");
    CHECK(panel.years == std::vector<int>{1900, 1901});
    CHECK(panel.countries == std::vector<std::string>{"usa", "uk"});
    CHECK(*panel.at(0, 0) == 100.0);
    CHECK(*panel.at(1, 1) == 210.0);
}

TEST_CASE("parse tolerates CRLF, blank lines and unordered rows") {
    auto panel = parse_panel_csv("year,usa\r\n1902,120\r\n\r\n1900,100\r\n1901,110\r\n");
    CHECK(panel.years == std::vector<int>{1900, 1901, 1902});
    CHECK(*panel.at(2, 0) == 120.0);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_panel_csv("year,usa\n1900,100\n1900,101\n"), DataError); // duplicate year
    CHECK_THROWS_AS(parse_panel_csv("year,usa,usa\n1900,1,2\n"), DataError);       // duplicate code
    CHECK_THROWS_AS(parse_panel_csv("year,usa\n1900,abc\n"), DataError);           // non-numeric
    CHECK_THROWS_AS(parse_panel_csv("year,usa\n1900,-5\n"), DataError);            // non-positive
    CHECK_THROWS_AS(parse_panel_csv("year,usa\n1900,0\n"), DataError);             // zero level
    CHECK_THROWS_AS(parse_panel_csv("year,usa\n"), DataError);                     // no data rows
    CHECK_THROWS_AS(parse_panel_csv("y,usa\n1900,1\n"), DataError);                // bad header
    CHECK_THROWS_AS(parse_panel_csv("year,usa\n1900\n"), DataError);               // short row
}

TEST_CASE("empty cells become missing markers and survive round trips") {
    auto panel = parse_panel_csv("year,usa,uk\n1900,100,\n1901,,210\n");
    CHECK_FALSE(panel.at(0, 1).has_value());
    CHECK_FALSE(panel.at(1, 0).has_value());
    CHECK(parse_panel_csv(serialize_panel_csv(panel)) == panel);
}

TEST_CASE("synthetic wide panel round-trips byte-identically") {
    testsupport::Rng rng(7);
    std::vector<std::string> countries;
    for (int c = 0; c < 16; ++c) countries.push_back("c" + std::to_string(c));
    LevelPanel panel;
    panel.countries = countries;
    for (int year = 1885; year <= 2006; ++year) panel.years.push_back(year);
    for (int year : panel.years)
        for (int c = 0; c < 16; ++c) {
            if (year >= 1914 && year <= 1947 && c % 3 == 0)
                panel.values.emplace_back(std::nullopt);   // wartime blanks
            else
                panel.values.emplace_back(100.0 * std::exp(rng.uniform(-0.5, 0.5)));
            (void)c;
        }

    std::string text = serialize_panel_csv(panel);
    auto reparsed = parse_panel_csv(text);
    CHECK(reparsed == panel);
    CHECK(serialize_panel_csv(reparsed) == text);
}

TEST_CASE("growth rates: hand-computed values") {
    auto panel = parse_panel_csv("year,a\n1900,100\n1901,110\n");
    auto growth = growth_rates(panel);
    CHECK(growth.years == std::vector<int>{1901});
    CHECK(*growth.at(0, 0) == doctest::Approx(10.0).epsilon(1e-12));

    auto flat = growth_rates(parse_panel_csv("year,a\n1900,100\n1901,100\n"));
    CHECK(*flat.at(0, 0) == doctest::Approx(0.0));

    // 100*(x_t/x_{t-1} - 1) on levels 200,100,150
    auto swing = growth_rates(parse_panel_csv("year,a\n1900,200\n1901,100\n1902,150\n"));
    CHECK(*swing.at(0, 0) == doctest::Approx(-50.0).epsilon(1e-12));
    CHECK(*swing.at(1, 0) == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("growth is missing when either level is missing or years skip") {
    auto panel = parse_panel_csv("year,a,b\n1900,100,100\n1901,,110\n1902,120,121\n");
    auto growth = growth_rates(panel);
    CHECK_FALSE(growth.at(0, 0).has_value());   // 1901 needs the missing 1901 level
    CHECK_FALSE(growth.at(1, 0).has_value());   // 1902 needs the missing 1901 level
    CHECK(growth.at(0, 1).has_value());
    CHECK(growth.at(1, 1).has_value());

    auto gap = growth_rates(parse_panel_csv("year,a\n1900,100\n1902,120\n"));
    CHECK(gap.years == std::vector<int>{1902});
    CHECK_FALSE(gap.at(0, 0).has_value());   // 1902 growth needs a 1901 level
}

TEST_CASE("growth panel is one year shorter than a complete level panel") {
    testsupport::Rng rng(3);
    LevelPanel panel;
    panel.countries = {"a", "b", "c"};
    for (int year = 1950; year <= 1980; ++year) panel.years.push_back(year);
    for (size_t i = 0; i < panel.years.size() * 3; ++i)
        panel.values.emplace_back(50.0 + rng.uniform(0.0, 10.0));
    auto growth = growth_rates(panel);
    CHECK(growth.year_count() == panel.year_count() - 1);
    for (const auto& v : growth.values) CHECK(v.has_value());
}

TEST_CASE("select_window basic spans") {
    testsupport::Rng rng(11);
    LevelPanel panel;
    for (int c = 0; c < 16; ++c) panel.countries.push_back("c" + std::to_string(c));
    for (int year = 1885; year <= 2006; ++year) panel.years.push_back(year);
    for (size_t i = 0; i < panel.years.size() * 16; ++i)
        panel.values.emplace_back(100.0 * std::exp(rng.uniform(-0.2, 0.2)));
    auto growth = growth_rates(panel);

    PeriodSpec gold{1886, 1913, {}, std::nullopt};
    auto w = select_window(growth, gold);
    CHECK(w.year_count() == 28);
    CHECK(w.country_count() == 16);

    PeriodSpec bretton{1948, 1972, {}, std::nullopt};
    CHECK(select_window(growth, bretton).year_count() == 25);

    PeriodSpec floating{1973, 2006, {}, std::nullopt};
    CHECK(select_window(growth, floating).year_count() == 34);

    PeriodSpec interwar{1920, 1938, {}, std::nullopt};
    CHECK(select_window(growth, interwar).year_count() == 19);
}

TEST_CASE("select_window exclusion handling") {
    testsupport::Rng rng(13);
    LevelPanel panel;
    panel.countries = {"a", "b"};
    for (int year = 1905; year <= 1925; ++year) panel.years.push_back(year);
    for (size_t i = 0; i < panel.years.size() * 2; ++i)
        panel.values.emplace_back(100.0 + rng.uniform(0.0, 5.0));
    auto growth = growth_rates(panel);

    PeriodSpec spec{1910, 1920, {{1914, 1919}}, std::nullopt};
    CHECK_THROWS_AS(select_window(growth, spec, false), DataError);

    auto gapped = select_window(growth, spec, true);
    CHECK(gapped.years == std::vector<int>{1910, 1911, 1912, 1913, 1920});
}

TEST_CASE("select_window subset, missing data and empty results") {
    auto panel = parse_panel_csv(
        "year,a,b,c\n1900,100,100,100\n1901,101,102,\n1902,103,104,105\n1903,104,105,106\n");
    auto growth = growth_rates(panel);

    PeriodSpec subset{1902, 1903, {}, std::vector<std::string>{"b", "a"}};
    auto w = select_window(growth, subset);
    CHECK(w.countries == std::vector<std::string>{"b", "a"});

    PeriodSpec with_missing{1901, 1903, {}, std::vector<std::string>{"c"}};
    CHECK_THROWS_WITH_AS(select_window(growth, with_missing), doctest::Contains("impute"),
                         DataError);

    PeriodSpec unknown{1902, 1903, {}, std::vector<std::string>{"zz"}};
    CHECK_THROWS_AS(select_window(growth, unknown), DataError);

    PeriodSpec empty{1990, 1995, {}, std::nullopt};
    CHECK_THROWS_AS(select_window(growth, empty), DataError);
}

TEST_CASE("growth then select commutes with trim then growth on contiguous windows") {
    testsupport::Rng rng(17);
    LevelPanel panel;
    panel.countries = {"a", "b", "c", "d"};
    for (int year = 1900; year <= 1960; ++year) panel.years.push_back(year);
    for (size_t i = 0; i < panel.years.size() * 4; ++i)
        panel.values.emplace_back(80.0 * std::exp(rng.uniform(-0.3, 0.3)));

    for (int trial = 0; trial < 20; ++trial) {
        int start = rng.uniform_int(1901, 1950);
        int end = rng.uniform_int(start, 1960);
        PeriodSpec spec{start, end, {}, std::nullopt};
        auto route_a = select_window(growth_rates(panel), spec);

        LevelPanel trimmed;
        trimmed.countries = panel.countries;
        for (int y = 0; y < panel.year_count(); ++y) {
            if (panel.years[y] < start - 1 || panel.years[y] > end) continue;
            trimmed.years.push_back(panel.years[y]);
            for (int c = 0; c < 4; ++c) trimmed.values.push_back(panel.at(y, c));
        }
        auto route_b = growth_rates(trimmed);
        REQUIRE(route_a.years == route_b.years);
        for (size_t i = 0; i < route_a.values.size(); ++i)
            CHECK(*route_a.values[i] == doctest::Approx(*route_b.values[i]).epsilon(1e-14));
    }
}

TEST_CASE("validate_panel findings") {
    // a -50% year
    auto crash = parse_panel_csv("year,jp\n1944,100\n1945,50\n1946,55\n");
    auto findings = validate_panel(crash);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].kind == PanelFinding::Kind::GrowthOutlier);
    CHECK(findings[0].country == "jp");
    CHECK(findings[0].year_lo == 1945);
    CHECK(findings[0].value == doctest::Approx(-50.0));

    // clean panel
    auto clean = parse_panel_csv("year,a\n1900,100\n1901,104\n1902,108\n");
    CHECK(validate_panel(clean).empty());

    // constant series
    auto constant = parse_panel_csv("year,a\n1900,100\n1901,100\n1902,100\n1903,100\n");
    auto cf = validate_panel(constant);
    REQUIRE(cf.size() == 1);
    CHECK(cf[0].kind == PanelFinding::Kind::ConstantRun);
    CHECK(cf[0].year_lo == 1900);
    CHECK(cf[0].year_hi == 1903);

    // missing span
    auto holed = parse_panel_csv("year,a\n1900,100\n1901,\n1902,\n1903,101\n");
    auto hf = validate_panel(holed);
    REQUIRE(hf.size() == 1);
    CHECK(hf[0].kind == PanelFinding::Kind::MissingSpan);
    CHECK(hf[0].year_lo == 1901);
    CHECK(hf[0].year_hi == 1902);

    // threshold is configurable
    CHECK(validate_panel(crash, 60.0).empty());
}

TEST_CASE("validated panel example values stay within threshold") {
    auto panel = make_panel({1900, 1901}, {"x"}, {100.0, 120.0});
    auto findings = validate_panel(panel, 25.0);
    REQUIRE(findings.size() == 0);
    findings = validate_panel(panel, 15.0);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].value == doctest::Approx(20.0));
}
