#include "format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace wavespec::cli {

double round12(double v)
{
    if (v == 0.0)
        return 0.0;
    if (!std::isfinite(v))
        return v;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    double out = v;
    std::from_chars(buf, res.ptr, out);
    return out;
}

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v == 0.0 ? 0.0 : v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

Json number(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return round12(v);
}

Json canonical(const Json& j)
{
    if (j.is_number_float())
        return number(j.get<double>());
    if (j.is_object()) {
        Json out = Json::object();
        for (auto it = j.begin(); it != j.end(); ++it)
            out[it.key()] = canonical(it.value());
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (const auto& e : j)
            out.push_back(canonical(e));
        return out;
    }
    return j;
}

std::string dump(const Json& j)
{
    return canonical(j).dump(2) + "\n";
}

namespace {

std::string cell(const Json& v)
{
    if (v.is_null())
        return "";
    if (v.is_number_float())
        return format_number(v.get<double>());
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

} // namespace

void write_csv(std::ostream& os, const std::vector<std::string>& header, const Json& rows)
{
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < header.size(); ++i)
            os << (i ? "," : "") << (row.contains(header[i]) ? cell(row.at(header[i])) : "");
        os << '\n';
    }
}

void write_markdown(std::ostream& os, const std::vector<std::string>& header, const Json& rows)
{
    os << '|';
    for (const auto& h : header)
        os << ' ' << h << " |";
    os << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i)
        os << "---|";
    os << '\n';
    for (const auto& row : rows) {
        os << '|';
        for (const auto& h : header)
            os << ' ' << (row.contains(h) ? cell(row.at(h)) : "") << " |";
        os << '\n';
    }
}

} // namespace wavespec::cli
