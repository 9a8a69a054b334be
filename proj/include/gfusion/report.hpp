#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gfusion
{

using Json = nlohmann::ordered_json;

struct Verdict
{
    std::string check;
    bool pass = false;
    double measured = 0;
    double threshold = 0;
};

//! Machine-readable command report.
struct Report
{
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<Verdict> verdicts;
    //! Optional table (header + rows) used for CSV output.
    std::vector<std::string> table_header;
    std::vector<std::vector<double>> table_rows;

    void add_verdict(std::string check, bool pass, double measured,
                     double threshold);
    bool all_pass() const;

    Json to_json() const;
    std::string to_json_string() const;
    //! Table as CSV when present, key/value lines otherwise.
    std::string to_csv() const;
};

}  // namespace gfusion
