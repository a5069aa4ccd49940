#include "output.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "lll/errors.hpp"

namespace lllab {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : os_(path, std::ios::binary), columns_(header.size()) {
    if (!os_) throw lll::InputError("cannot open output file " + path.string());
    for (const auto& h : header) *this << h;
    end_row();
}

void CsvWriter::separator() {
    if (column_ > 0) os_ << ',';
    ++column_;
}

CsvWriter& CsvWriter::operator<<(double v) {
    separator();
    os_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::operator<<(long long v) {
    separator();
    os_ << v;
    return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
    separator();
    if (v.find_first_of(",\"\r\n") == std::string::npos) {
        os_ << v;
        return *this;
    }
    os_ << '"';
    for (char c : v) {
        if (c == '"') os_ << '"';
        os_ << c;
    }
    os_ << '"';
    return *this;
}

void CsvWriter::end_row() {
    if (column_ != columns_) throw std::logic_error("csv row has wrong column count");
    os_ << "\r\n";
    column_ = 0;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& value) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw lll::InputError("cannot open output file " + path.string());
    os << value.dump(2) << '\n';
}

}  // namespace lllab
