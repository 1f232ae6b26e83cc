#pragma once

#include <cstdio>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/errors.hpp"

namespace orlicz {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string utc_timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[40];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// CSV with one leading timestamp comment line; everything below it is
// deterministic for a fixed config and seed.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns) : out_(path) {
        if (!out_)
            throw Error("cannot open report file: " + path);
        out_ << "# generated " << utc_timestamp() << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
        out_ << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

inline void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open report file: " + path);
    out << j.dump(1) << "\n";
}

} // namespace orlicz
