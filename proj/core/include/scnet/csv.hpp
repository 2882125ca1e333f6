#pragma once

// Flat-file I/O. All interchange is header-checked CSV, UTF-8, '.' decimal.

#include <optional>
#include <string>
#include <vector>

#include "scnet/network.hpp"

namespace scnet {

struct RawLink {
    FirmId supplier = 0;
    FirmId customer = 0;
    std::optional<double> value; // absent means weights still to be estimated
};

// firms.csv: id,sector,prefecture,sales
std::vector<Firm> load_firms_csv(const std::string& path);
void save_firms_csv(const std::string& path, const std::vector<Firm>& firms);

// links.csv: supplier_id,customer_id[,value]
std::vector<RawLink> load_links_csv(const std::string& path);
void save_links_csv(const std::string& path, const std::vector<SupplyLink>& links);

// io_table.csv: sector_from,sector_to,value; rows with sector_to=FINAL carry
// final demand per sector.
IoTable load_io_table_csv(const std::string& path);
void save_io_table_csv(const std::string& path, const IoTable& io);

// Generic writer: fixed header, rows of preformatted cells.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows);

// Shortest decimal form that round-trips a double.
std::string format_double(double v);

namespace csv_detail {
std::vector<std::string> split_line(const std::string& line);
double parse_double(const std::string& cell, const std::string& context);
long long parse_int(const std::string& cell, const std::string& context);
}  // namespace csv_detail

}  // namespace scnet
