#include "cli/csv.hpp"

#include <fmt/format.h>

#include <charconv>
#include <string>

#include "flatin/errors.hpp"

namespace flatin::cli {

void write_trace_csv(std::ostream& out, const sim::SimulationTrace& trace) {
    out << kCsvHeader << '\n';
    fmt::memory_buffer buf;
    for (const auto& r : trace.rows) {
        buf.clear();
        fmt::format_to(std::back_inserter(buf),
                       "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n",
                       r.t, r.x1, r.x2, r.x3, r.y, r.yref, r.dy, r.ddy, r.u, r.uf, r.e, r.flags);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
}

std::vector<sim::TraceRow> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw Error("trace CSV has an unexpected header");

    std::vector<sim::TraceRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        sim::TraceRow r;
        double* fields[] = {&r.t, &r.x1, &r.x2, &r.x3, &r.y, &r.yref, &r.dy, &r.ddy, &r.u, &r.uf, &r.e};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        auto fail = [&] { return Error("malformed trace CSV at line " + std::to_string(lineno)); };
        for (double* f : fields) {
            const auto [next, ec] = std::from_chars(p, end, *f);
            if (ec != std::errc{} || next == end || *next != ',') throw fail();
            p = next + 1;
        }
        const auto [next, ec] = std::from_chars(p, end, r.flags);
        if (ec != std::errc{} || next != end) throw fail();
        rows.push_back(r);
    }
    return rows;
}

}  // namespace flatin::cli
