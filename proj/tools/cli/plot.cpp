#include "cli/plot.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <string_view>
#include <vector>

#include "flatin/simulator.hpp"

namespace flatin::cli {

namespace {

constexpr std::array<std::string_view, 5> kRequired = {"t", "y", "yref", "u", "x3"};

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) out += (c == '\'') ? std::string("''") : std::string(1, c);
    return out + "'";
}

}  // namespace

TraceSummary scan_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw PlotError("no data rows");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_commas(line);
    std::vector<std::string> missing;
    for (auto col : kRequired) {
        if (std::find(header.begin(), header.end(), col) == header.end()) missing.emplace_back(col);
    }
    if (!missing.empty()) {
        std::string names;
        for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
        throw PlotError("trace CSV is missing columns: " + names);
    }

    const auto t_col = static_cast<std::size_t>(std::find(header.begin(), header.end(), "t") - header.begin());
    const auto flags_it = std::find(header.begin(), header.end(), "flags");
    const std::optional<std::size_t> flags_col =
        flags_it == header.end() ? std::nullopt
                                 : std::optional<std::size_t>(static_cast<std::size_t>(flags_it - header.begin()));

    TraceSummary summary;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++summary.rows;
        if (!flags_col || summary.fault_time) continue;
        const auto fields = split_commas(line);
        if (fields.size() != header.size()) throw PlotError("row " + std::to_string(summary.rows) + " has the wrong width");
        std::uint32_t flags = 0;
        const auto& f = fields[*flags_col];
        std::from_chars(f.data(), f.data() + f.size(), flags);
        if (flags & (sim::kDomainExit | sim::kNumericsFault)) {
            double t = 0.0;
            const auto& ts = fields[t_col];
            std::from_chars(ts.data(), ts.data() + ts.size(), t);
            summary.fault_time = t;
        }
    }
    if (summary.rows == 0) throw PlotError("no data rows");
    return summary;
}

std::string make_plot_script(const std::string& csv_path, const std::string& image, const TraceSummary& summary) {
    const std::string data = quote(csv_path);
    std::string s;
    auto out = std::back_inserter(s);
    fmt::format_to(out, "# gnuplot script for {} ({} rows)\n", csv_path, summary.rows);
    fmt::format_to(out,
                   "set datafile separator ','\n"
                   "set datafile columnheaders\n"
                   "set terminal pngcairo size 900,900\n"
                   "set output {}\n"
                   "set multiplot layout 3,1\n"
                   "set grid\n"
                   "set xlabel 't [s]'\n",
                   quote(image));
    if (summary.fault_time) {
        fmt::format_to(out,
                       "set arrow 1 from {0:.17g}, graph 0 to {0:.17g}, graph 1 nohead dashtype 2 lc rgb 'red'\n"
                       "set label 1 'fault t={0:.6g}' at {0:.17g}, graph 0.9 right tc rgb 'red'\n",
                       *summary.fault_time);
    }
    fmt::format_to(out,
                   "set ylabel 'y'\n"
                   "plot {0} using (column(\"t\")):(column(\"y\")) with lines title 'y', \\\n"
                   "     {0} using (column(\"t\")):(column(\"yref\")) with lines dashtype 2 title 'y*'\n"
                   "set ylabel 'u'\n"
                   "plot {0} using (column(\"t\")):(column(\"u\")) with steps title 'u'\n"
                   "set ylabel 'x3 [rad]'\n"
                   "plot {0} using (column(\"t\")):(column(\"x3\")) with lines title 'x3'\n"
                   "unset multiplot\n",
                   data);
    return s;
}

}  // namespace flatin::cli
