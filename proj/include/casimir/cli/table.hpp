#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace casimir::cli {

struct Table {
    std::vector<std::pair<std::string, std::string>> config;  // written as header comments
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// '#'-prefixed "key = value" lines, then the header row, then rows at %.17g.
void writeCsv(std::ostream& out, const Table& t);
void writeJson(std::ostream& out, const Table& t);
Table readJson(std::istream& in);

}  // namespace casimir::cli
