#include "scnet/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace scnet {

namespace csv_detail {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    cells.push_back(cell);
    return cells;
}

double parse_double(const std::string& cell, const std::string& context) {
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("csv: bad number '" + cell + "' in " + context);
    }
    return v;
}

long long parse_int(const std::string& cell, const std::string& context) {
    long long v = 0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("csv: bad integer '" + cell + "' in " + context);
    }
    return v;
}

}  // namespace csv_detail

using csv_detail::parse_double;
using csv_detail::parse_int;
using csv_detail::split_line;

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    return in;
}

std::string read_header(std::ifstream& in, const std::string& path) {
    std::string header;
    if (!std::getline(in, header)) throw ConfigError("empty file: " + path);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    return header;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    // %.17g always round-trips; try shorter forms first for readable files.
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) break;
    }
    return buf;
}

std::vector<Firm> load_firms_csv(const std::string& path) {
    auto in = open_input(path);
    if (read_header(in, path) != "id,sector,prefecture,sales") {
        throw ConfigError(path + ": expected header 'id,sector,prefecture,sales'");
    }
    std::vector<Firm> firms;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_line(line);
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (cells.size() != 4) throw ConfigError(ctx + ": expected 4 columns");
        Firm f;
        f.id = static_cast<FirmId>(parse_int(cells[0], ctx));
        f.sector = static_cast<int>(parse_int(cells[1], ctx));
        f.region = static_cast<int>(parse_int(cells[2], ctx));
        f.sales = parse_double(cells[3], ctx);
        firms.push_back(f);
    }
    return firms;
}

void save_firms_csv(const std::string& path, const std::vector<Firm>& firms) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << "id,sector,prefecture,sales\n";
    for (const Firm& f : firms) {
        out << f.id << ',' << f.sector << ',' << f.region << ',' << format_double(f.sales) << '\n';
    }
}

std::vector<RawLink> load_links_csv(const std::string& path) {
    auto in = open_input(path);
    const std::string header = read_header(in, path);
    bool with_value;
    if (header == "supplier_id,customer_id") {
        with_value = false;
    } else if (header == "supplier_id,customer_id,value") {
        with_value = true;
    } else {
        throw ConfigError(path + ": expected header 'supplier_id,customer_id[,value]'");
    }
    std::vector<RawLink> links;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_line(line);
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (cells.size() != (with_value ? 3u : 2u)) throw ConfigError(ctx + ": wrong column count");
        RawLink l;
        l.supplier = static_cast<FirmId>(parse_int(cells[0], ctx));
        l.customer = static_cast<FirmId>(parse_int(cells[1], ctx));
        if (with_value) l.value = parse_double(cells[2], ctx);
        links.push_back(l);
    }
    return links;
}

void save_links_csv(const std::string& path, const std::vector<SupplyLink>& links) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << "supplier_id,customer_id,value\n";
    for (const SupplyLink& l : links) {
        out << l.supplier << ',' << l.customer << ',' << format_double(l.baseline_flow) << '\n';
    }
}

IoTable load_io_table_csv(const std::string& path) {
    auto in = open_input(path);
    if (read_header(in, path) != "sector_from,sector_to,value") {
        throw ConfigError(path + ": expected header 'sector_from,sector_to,value'");
    }
    IoTable io;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_line(line);
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (cells.size() != 3) throw ConfigError(ctx + ": expected 3 columns");
        const int from = static_cast<int>(parse_int(cells[0], ctx));
        const double value = parse_double(cells[2], ctx);
        if (value < 0.0) throw ConfigError(ctx + ": negative IO value");
        if (cells[1] == "FINAL") {
            io.final_demand[from] += value;
        } else {
            const int to = static_cast<int>(parse_int(cells[1], ctx));
            io.sector_pair_value[{from, to}] += value;
        }
    }
    return io;
}

void save_io_table_csv(const std::string& path, const IoTable& io) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << "sector_from,sector_to,value\n";
    for (const auto& [pair, value] : io.sector_pair_value) {
        out << pair.first << ',' << pair.second << ',' << format_double(value) << '\n';
    }
    for (const auto& [sector, value] : io.final_demand) {
        out << sector << ",FINAL," << format_double(value) << '\n';
    }
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

}  // namespace scnet
