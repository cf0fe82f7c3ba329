#include "casimir/cli/table.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "casimir/cli/config.hpp"

namespace casimir::cli {

void writeCsv(std::ostream& out, const Table& t) {
    for (const auto& [k, v] : t.config) out << "# " << k << " = " << v << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    char buf[32];
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << '\n';
    }
}

void writeJson(std::ostream& out, const Table& t) {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.config) j["config"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    out << j.dump(2) << '\n';
}

Table readJson(std::istream& in) {
    Table t;
    try {
        const auto j = nlohmann::ordered_json::parse(in);
        for (const auto& [k, v] : j.at("config").items()) t.config.emplace_back(k, v.get<std::string>());
        t.columns = j.at("columns").get<std::vector<std::string>>();
        t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed result JSON: ") + e.what());
    }
    return t;
}

}  // namespace casimir::cli
