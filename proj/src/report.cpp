#include "gfusion/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace gfusion
{
namespace
{
std::string shortest(double x)
{
    if (std::isnan(x))
    {
        return "nan";
    }
    if (std::isinf(x))
    {
        return x > 0 ? "inf" : "-inf";
    }
    char buffer[64];
    auto const result = std::to_chars(buffer, buffer + sizeof(buffer), x);
    return std::string(buffer, result.ptr);
}

std::string csv_value(Json const& value)
{
    if (value.is_number_float())
    {
        return shortest(value.get<double>());
    }
    if (value.is_string())
    {
        return value.get<std::string>();
    }
    return value.dump();
}

void flatten(std::ostringstream& out, std::string const& prefix, Json const& value)
{
    if (value.is_object())
    {
        for (auto const& [key, child] : value.items())
        {
            flatten(out, prefix.empty() ? key : prefix + "." + key, child);
        }
        return;
    }
    out << prefix << ',' << csv_value(value) << '\n';
}
}  // namespace

void Report::add_verdict(std::string check, bool pass, double measured,
                         double threshold)
{
    verdicts.push_back({std::move(check), pass, measured, threshold});
}

bool Report::all_pass() const
{
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](Verdict const& v) { return v.pass; });
}

Json Report::to_json() const
{
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["results"] = results;
    if (!table_header.empty())
    {
        j["table"] = {{"header", table_header}, {"rows", table_rows}};
    }
    Json list = Json::array();
    for (auto const& v : verdicts)
    {
        list.push_back({{"check", v.check},
                        {"pass", v.pass},
                        {"measured", v.measured},
                        {"threshold", v.threshold}});
    }
    j["verdicts"] = std::move(list);
    return j;
}

std::string Report::to_json_string() const
{
    return to_json().dump(2) + "\n";
}

std::string Report::to_csv() const
{
    std::ostringstream out;
    if (!table_header.empty())
    {
        for (std::size_t i = 0; i < table_header.size(); ++i)
        {
            out << (i ? "," : "") << table_header[i];
        }
        out << '\n';
        for (auto const& row : table_rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                out << (i ? "," : "") << shortest(row[i]);
            }
            out << '\n';
        }
        return out.str();
    }
    out << "key,value\n";
    out << "command," << command << '\n';
    flatten(out, "inputs", inputs);
    flatten(out, "results", results);
    for (auto const& v : verdicts)
    {
        out << "verdict." << v.check << ',' << (v.pass ? "pass" : "fail") << ','
            << shortest(v.measured) << ',' << shortest(v.threshold) << '\n';
    }
    return out.str();
}

}  // namespace gfusion
