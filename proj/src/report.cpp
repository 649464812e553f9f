#include "aonsim/report.hpp"

#include "aonsim/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace aonsim {

const char* const kCsvHeader = "W,control_wavelengths,parallelism,mode,makespan_us,discards,seed";

bool operator==(const RunRecord& a, const RunRecord& b) {
    return a.wavelengths == b.wavelengths && a.control_channels == b.control_channels &&
           a.parallelism == b.parallelism && a.mode == b.mode && a.makespan_us == b.makespan_us &&
           a.discards == b.discards && a.seed == b.seed;
}

std::string to_csv_row(const RunRecord& r) {
    char makespan[64];
    std::snprintf(makespan, sizeof makespan, "%.2f", r.makespan_us);
    std::ostringstream out;
    out << r.wavelengths << ',' << r.control_channels << ',' << r.parallelism << ',' << r.mode << ',' << makespan
        << ',' << r.discards << ',' << r.seed;
    return out.str();
}

std::string to_csv(const std::vector<RunRecord>& rows) {
    if (rows.empty())
        throw SimError(SimError::Kind::EmptyResults, "no results to serialize");
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += to_csv_row(r);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            fields.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    fields.push_back(cur);
    return fields;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("malformed ") + what + " field: '" + s + "'");
    }
}

double parse_f64(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("malformed ") + what + " field: '" + s + "'");
    }
}

} // namespace

std::vector<RunRecord> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("empty CSV document");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kCsvHeader)
        throw ConfigError("unexpected CSV header: '" + line + "'");
    std::vector<RunRecord> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto f = split(line, ',');
        if (f.size() != 7)
            throw ConfigError("expected 7 CSV fields, got " + std::to_string(f.size()) + " in '" + line + "'");
        RunRecord r;
        r.wavelengths = static_cast<std::uint32_t>(parse_u64(f[0], "W"));
        r.control_channels = static_cast<std::uint32_t>(parse_u64(f[1], "control_wavelengths"));
        r.parallelism = static_cast<std::uint32_t>(parse_u64(f[2], "parallelism"));
        r.mode = f[3];
        r.makespan_us = parse_f64(f[4], "makespan_us");
        r.discards = parse_u64(f[5], "discards");
        r.seed = parse_u64(f[6], "seed");
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_csv_file(const std::string& path, const std::vector<RunRecord>& rows) {
    std::ofstream out(path, std::ios::binary); // binary keeps line endings identical across platforms
    if (!out)
        throw ConfigError("cannot open '" + path + "' for writing");
    out << to_csv(rows);
    if (!out)
        throw ConfigError("failed writing '" + path + "'");
}

std::vector<RunRecord> read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

namespace {

struct CellStats {
    double sum = 0.0, lo = 0.0, hi = 0.0;
    std::uint64_t discards = 0;
    std::size_t n = 0;

    void add(double v, std::uint64_t d) {
        if (n == 0) {
            lo = hi = v;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        sum += v;
        discards += d;
        n += 1;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
};

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

std::string comparison_tables(const std::vector<RunRecord>& rows) {
    if (rows.empty())
        throw SimError(SimError::Kind::EmptyResults, "no results to tabulate");

    using Key = std::pair<std::uint32_t, std::uint32_t>; // (W, control)
    std::map<Key, std::map<std::uint32_t, std::map<std::string, CellStats>>> grid;
    bool multi_seed = false;
    for (const auto& r : rows) {
        auto& cell = grid[{r.wavelengths, r.control_channels}][r.parallelism][r.mode];
        cell.add(r.makespan_us, r.discards);
        if (cell.n > 1)
            multi_seed = true;
    }

    std::ostringstream out;
    for (const auto& [key, by_p] : grid) {
        std::set<std::string> modes;
        for (const auto& [p, by_mode] : by_p)
            for (const auto& [mode, stats] : by_mode)
                modes.insert(mode);

        out << "Wavelengths " << key.first << ", control " << key.second << " (makespan, us";
        if (multi_seed)
            out << "; mean [min..max] over seeds";
        out << ")\n";
        out << "  " << std::string(12, ' ');
        char head[128];
        for (const auto& mode : modes) {
            std::snprintf(head, sizeof head, " %28s", mode.c_str());
            out << head;
        }
        if (modes.count("baseline") && modes.size() > 1)
            out << "      ratio";
        out << '\n';
        for (const auto& [p, by_mode] : by_p) {
            char lead[32];
            std::snprintf(lead, sizeof lead, "  p = %-8u", p);
            out << lead;
            for (const auto& mode : modes) {
                auto it = by_mode.find(mode);
                std::string cell = "-";
                if (it != by_mode.end()) {
                    cell = fixed2(it->second.mean());
                    if (multi_seed && it->second.n > 1)
                        cell += " [" + fixed2(it->second.lo) + ".." + fixed2(it->second.hi) + "]";
                }
                std::snprintf(head, sizeof head, " %28s", cell.c_str());
                out << head;
            }
            if (modes.count("baseline") && modes.size() > 1) {
                auto base = by_mode.find("baseline");
                double best = 0.0;
                for (const auto& [mode, stats] : by_mode)
                    if (mode != "baseline" && stats.mean() > 0.0 && (best == 0.0 || stats.mean() < best))
                        best = stats.mean();
                if (base != by_mode.end() && best > 0.0) {
                    std::snprintf(head, sizeof head, " %9.2fx", base->second.mean() / best);
                    out << head;
                }
            }
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

} // namespace aonsim
