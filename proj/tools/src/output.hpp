#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace lllab {

/// RFC 4180 style CSV with a header row; doubles written with 17 significant digits.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& operator<<(double v);
    CsvWriter& operator<<(long long v);
    CsvWriter& operator<<(int v) { return *this << static_cast<long long>(v); }
    CsvWriter& operator<<(std::size_t v) { return *this << static_cast<long long>(v); }
    CsvWriter& operator<<(const std::string& v);
    CsvWriter& operator<<(const char* v) { return *this << std::string(v); }
    void end_row();

private:
    void separator();
    std::ofstream os_;
    std::size_t columns_;
    std::size_t column_ = 0;
};

std::string format_double(double v);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& value);

}  // namespace lllab
