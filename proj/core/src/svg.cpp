#include "rmtkit/svg.hpp"

#include <algorithm>
#include <cmath>

#include "text_util.hpp"

namespace rmtkit {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 600.0;

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string svg_open() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"600\" "
           "viewBox=\"0 0 900 600\">\n"
           "<rect x=\"0\" y=\"0\" width=\"900\" height=\"600\" fill=\"white\"/>\n";
}

void add_line(std::string& out, double x1, double y1, double x2, double y2,
              const std::string& extra = "") {
    out += "<line x1=\"" + format_fixed(x1, 2) + "\" y1=\"" + format_fixed(y1, 2) + "\" x2=\"" +
           format_fixed(x2, 2) + "\" y2=\"" + format_fixed(y2, 2) +
           "\" stroke=\"black\" stroke-width=\"1\"" + extra + "/>\n";
}

void add_text(std::string& out, double x, double y, const std::string& text,
              const std::string& extra = "") {
    out += "<text x=\"" + format_fixed(x, 2) + "\" y=\"" + format_fixed(y, 2) +
           "\" font-family=\"monospace\" font-size=\"12\"" + extra + ">" + xml_escape(text) +
           "</text>\n";
}

// round the axis top up to one significant step of 1/2/5
double nice_ceiling(double v) {
    if (v <= 0.0) return 1.0;
    double mag = std::pow(10.0, std::floor(std::log10(v)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (v <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

} // namespace

std::string svg_dendrogram(const Dendrogram& dendro, const std::string& title) {
    const int n = dendro.leaf_count();
    const double left = 70.0, right = 20.0, top = 50.0, bottom = 110.0;
    const double plot_w = kWidth - left - right;
    const double plot_h = kHeight - top - bottom;
    const double baseline = kHeight - bottom;

    // leaf order by traversal from the root, left child first
    std::vector<int> leaf_order;
    leaf_order.reserve(n);
    if (n == 1) {
        leaf_order.push_back(0);
    } else {
        std::vector<int> stack{n + static_cast<int>(dendro.merges.size()) - 1};
        while (!stack.empty()) {
            int node = stack.back();
            stack.pop_back();
            if (node < n) {
                leaf_order.push_back(node);
            } else {
                const MergeStep& m = dendro.merges[node - n];
                stack.push_back(m.right);
                stack.push_back(m.left);
            }
        }
    }

    double max_height = 0.0;
    for (const auto& m : dendro.merges) max_height = std::max(max_height, m.height);
    double axis_top = nice_ceiling(max_height);

    auto leaf_x = [&](int slot) {
        return left + plot_w * (slot + 0.5) / static_cast<double>(n);
    };
    auto height_y = [&](double h) { return baseline - plot_h * (h / axis_top); };

    std::vector<double> node_x(n + dendro.merges.size(), 0.0);
    std::vector<double> node_h(n + dendro.merges.size(), 0.0);
    for (int slot = 0; slot < n; ++slot) node_x[leaf_order[slot]] = leaf_x(slot);
    for (size_t k = 0; k < dendro.merges.size(); ++k) {
        const MergeStep& m = dendro.merges[k];
        node_x[n + k] = 0.5 * (node_x[m.left] + node_x[m.right]);
        node_h[n + k] = m.height;
    }

    std::string out = svg_open();
    add_text(out, left, 28.0, title, " font-size=\"14\"");

    // axis with 5 ticks
    add_line(out, left, baseline, left, top);
    for (int tick = 0; tick <= 5; ++tick) {
        double h = axis_top * tick / 5.0;
        double y = height_y(h);
        add_line(out, left - 4.0, y, left, y);
        add_text(out, 8.0, y + 4.0, format_fixed(h, 2));
    }
    add_text(out, 8.0, top - 10.0, "merge height");

    // merge brackets: risers from each child's height, crossbar at the merge height
    for (size_t k = 0; k < dendro.merges.size(); ++k) {
        const MergeStep& m = dendro.merges[k];
        double y = height_y(m.height);
        add_line(out, node_x[m.left], height_y(node_h[m.left]), node_x[m.left], y);
        add_line(out, node_x[m.right], height_y(node_h[m.right]), node_x[m.right], y);
        add_line(out, node_x[m.left], y, node_x[m.right], y);
    }

    // leaf labels, rotated to stay readable at 16 leaves
    for (int slot = 0; slot < n; ++slot) {
        double x = leaf_x(slot);
        const std::string& label = dendro.labels[leaf_order[slot]];
        out += "<text x=\"" + format_fixed(x, 2) + "\" y=\"" + format_fixed(baseline + 14.0, 2) +
               "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\" transform=\"rotate(-60 " +
               format_fixed(x, 2) + " " + format_fixed(baseline + 14.0, 2) + ")\">" +
               xml_escape(label) + "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

std::string svg_rolling(const std::vector<RollingPoint>& points, int n_countries,
                        const std::string& title) {
    const double left = 70.0, right = 30.0, top = 50.0, bottom = 60.0;
    const double plot_w = kWidth - left - right;
    const double plot_h = kHeight - top - bottom;
    const double baseline = kHeight - bottom;

    std::string out = svg_open();
    add_text(out, left, 28.0, title, " font-size=\"14\"");
    if (points.empty()) {
        add_text(out, left, top + 20.0, "no windows");
        out += "</svg>\n";
        return out;
    }

    int year_lo = points.front().window_end;
    int year_hi = points.back().window_end;
    auto x_of = [&](int year) {
        if (year_hi == year_lo) return left + plot_w / 2.0;
        return left + plot_w * (year - year_lo) / static_cast<double>(year_hi - year_lo);
    };
    auto y_of = [&](double fraction) { return baseline - plot_h * fraction; };

    // frame and ticks: info fraction is bounded by 1
    add_line(out, left, baseline, left, top);
    add_line(out, left, baseline, left + plot_w, baseline);
    for (int tick = 0; tick <= 4; ++tick) {
        double f = tick / 4.0;
        add_line(out, left - 4.0, y_of(f), left, y_of(f));
        add_text(out, 26.0, y_of(f) + 4.0, format_fixed(f, 2));
    }
    int year_ticks = std::min(8, year_hi - year_lo + 1);
    for (int tick = 0; tick < year_ticks; ++tick) {
        int year = year_ticks == 1
                       ? year_lo
                       : year_lo + (year_hi - year_lo) * tick / (year_ticks - 1);
        add_line(out, x_of(year), baseline, x_of(year), baseline + 4.0);
        add_text(out, x_of(year) - 14.0, baseline + 18.0, std::to_string(year));
    }
    add_text(out, 8.0, top - 10.0, "lambda_max / N");
    add_text(out, left + plot_w / 2.0 - 40.0, kHeight - 14.0, "window end year");

    // theoretical noise level
    double noise_level = points.front().theoretical_lambda_max / n_countries;
    if (noise_level <= 1.0) {
        add_line(out, left, y_of(noise_level), left + plot_w, y_of(noise_level),
                 " stroke-dasharray=\"6 4\"");
        add_text(out, left + plot_w - 150.0, y_of(noise_level) - 6.0, "noise bound / N");
    }

    std::string coords;
    for (const auto& p : points) {
        if (!coords.empty()) coords += ' ';
        coords += format_fixed(x_of(p.window_end), 2) + "," +
                  format_fixed(y_of(p.information_fraction), 2);
    }
    out += "<polyline points=\"" + coords + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    for (const auto& p : points)
        out += "<circle cx=\"" + format_fixed(x_of(p.window_end), 2) + "\" cy=\"" +
               format_fixed(y_of(p.information_fraction), 2) + "\" r=\"2\" fill=\"black\"/>\n";

    out += "</svg>\n";
    return out;
}

} // namespace rmtkit
