#pragma once

#include <istream>
#include <optional>
#include <string>

#include "flatin/errors.hpp"

namespace flatin::cli {

class PlotError : public Error {
   public:
    using Error::Error;
};

struct TraceSummary {
    std::size_t rows = 0;
    std::optional<double> fault_time;  ///< first row carrying a halt flag
};

/// Scans a trace CSV: checks for the columns the plot needs and locates the
/// first fault. Throws PlotError naming missing columns, or "no data rows".
TraceSummary scan_trace_csv(std::istream& in);

/// gnuplot script with three stacked panels: (y, y*) vs t, u vs t, x3 vs t.
/// `image` is the PNG the script renders to.
std::string make_plot_script(const std::string& csv_path, const std::string& image, const TraceSummary& summary);

}  // namespace flatin::cli
