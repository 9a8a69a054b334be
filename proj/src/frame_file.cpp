#include "gfusion/frame_file.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "gfusion/error.hpp"

namespace gfusion
{
namespace
{
using nlohmann::json;

[[noreturn]] void parse_fail(std::string const& field, std::string const& why)
{
    fail(Errc::ParseError, field + ": " + why);
}

json const& require_key(json const& obj, char const* key, std::string const& where)
{
    auto it = obj.find(key);
    if (it == obj.end())
    {
        parse_fail(where.empty() ? key : where + "." + key, "missing field");
    }
    return *it;
}

int require_int(json const& value, std::string const& field)
{
    if (!value.is_number_integer())
    {
        parse_fail(field, "expected an integer");
    }
    return value.get<int>();
}

Matrix parse_matrix(json const& value, std::string const& field)
{
    if (!value.is_array() || value.empty())
    {
        parse_fail(field, "expected a non-empty array of rows");
    }
    auto const rows = static_cast<Eigen::Index>(value.size());
    Eigen::Index cols = -1;
    Matrix m;
    for (Eigen::Index r = 0; r < rows; ++r)
    {
        auto const& row = value[r];
        std::string const row_field = field + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.empty())
        {
            parse_fail(row_field, "expected a non-empty array of entries");
        }
        if (cols < 0)
        {
            cols = static_cast<Eigen::Index>(row.size());
            m.resize(rows, cols);
        }
        else if (static_cast<Eigen::Index>(row.size()) != cols)
        {
            parse_fail(row_field, "ragged row (expected " + std::to_string(cols)
                                      + " entries)");
        }
        for (Eigen::Index c = 0; c < cols; ++c)
        {
            auto const& entry = row[c];
            std::string const entry_field = row_field + "[" + std::to_string(c) + "]";
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number()
                || !entry[1].is_number())
            {
                parse_fail(entry_field, "expected [re, im]");
            }
            m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    if (!m.allFinite())
    {
        parse_fail(field, "non-finite entry");
    }
    return m;
}

std::string format_number(double x)
{
    if (x == 0)
    {
        x = 0;  // drops the sign of -0
    }
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

void write_matrix(std::ostringstream& out, Matrix const& m, char const* indent)
{
    out << "[\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        out << indent << "  [";
        for (Eigen::Index c = 0; c < m.cols(); ++c)
        {
            if (c > 0)
            {
                out << ", ";
            }
            out << '[' << format_number(m(r, c).real()) << ", "
                << format_number(m(r, c).imag()) << ']';
        }
        out << ']' << (r + 1 < m.rows() ? "," : "") << '\n';
    }
    out << indent << ']';
}
}  // namespace

FrameFamily parse_frame_file(std::string_view text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        fail(Errc::ParseError, e.what());
    }
    if (!doc.is_object())
    {
        parse_fail("<root>", "expected an object");
    }

    int const dim = require_int(require_key(doc, "dim", ""), "dim");
    if (dim < 1)
    {
        parse_fail("dim", "must be positive");
    }
    auto const& semantics_value = require_key(doc, "semantics", "");
    if (!semantics_value.is_string())
    {
        parse_fail("semantics", "expected a string");
    }
    auto const semantics_name = semantics_value.get<std::string>();
    int const k_min = require_int(require_key(doc, "k_min", ""), "k_min");
    int const k_max = require_int(require_key(doc, "k_max", ""), "k_max");
    if (k_max < k_min)
    {
        parse_fail("k_max", "smaller than k_min");
    }
    Window window;
    if (semantics_name == "truncated")
    {
        window = Window::truncated(k_min, k_max);
    }
    else if (semantics_name == "cyclic")
    {
        if (k_min != 0)
        {
            parse_fail("k_min", "cyclic windows start at 0");
        }
        window = Window::cyclic(k_max + 1);
    }
    else
    {
        parse_fail("semantics", "expected \"truncated\" or \"cyclic\"");
    }

    auto const& members_value = require_key(doc, "members", "");
    if (!members_value.is_array())
    {
        parse_fail("members", "expected an array");
    }
    std::vector<Member> members;
    for (std::size_t i = 0; i < members_value.size(); ++i)
    {
        auto const& entry = members_value[i];
        std::string const where = "members[" + std::to_string(i) + "]";
        if (!entry.is_object())
        {
            parse_fail(where, "expected an object");
        }
        int const k = require_int(require_key(entry, "k", where), where + ".k");
        Matrix basis = parse_matrix(require_key(entry, "subspace_basis", where),
                                    where + ".subspace_basis");
        Matrix theta
            = parse_matrix(require_key(entry, "theta", where), where + ".theta");
        if (basis.rows() != dim)
        {
            parse_fail(where + ".subspace_basis",
                       "expected " + std::to_string(dim) + " rows");
        }
        if (theta.rows() != dim || theta.cols() != dim)
        {
            parse_fail(where + ".theta", "expected a " + std::to_string(dim)
                                             + " × " + std::to_string(dim)
                                             + " matrix");
        }
        std::optional<Subspace> subspace;
        try
        {
            subspace = Subspace::from_basis(std::move(basis), kFileOrthonormalTol);
        }
        catch (Error const& e)
        {
            parse_fail(where + ".subspace_basis (k=" + std::to_string(k) + ")",
                       e.detail());
        }
        members.push_back({k, std::move(*subspace), std::move(theta)});
    }
    return FrameFamily(window, std::move(members));
}

std::string format_frame_file(FrameFamily const& family)
{
    auto const& window = family.window();
    std::ostringstream out;
    out << "{\n";
    out << "  \"dim\": " << family.dim() << ",\n";
    out << "  \"k_max\": " << window.k_max << ",\n";
    out << "  \"k_min\": " << window.k_min << ",\n";
    out << "  \"members\": [\n";
    for (std::size_t i = 0; i < family.size(); ++i)
    {
        auto const& m = family[i];
        out << "    {\n";
        out << "      \"k\": " << m.k << ",\n";
        out << "      \"subspace_basis\": ";
        write_matrix(out, m.subspace.basis(), "      ");
        out << ",\n";
        out << "      \"theta\": ";
        write_matrix(out, m.theta, "      ");
        out << '\n';
        out << "    }" << (i + 1 < family.size() ? "," : "") << '\n';
    }
    out << "  ],\n";
    out << "  \"semantics\": \""
        << (window.semantics == Semantics::Cyclic ? "cyclic" : "truncated")
        << "\"\n";
    out << "}\n";
    return out.str();
}

FrameFamily load_frame_file(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        fail(Errc::ParseError, path + ": cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try
    {
        return parse_frame_file(buffer.str());
    }
    catch (Error const& e)
    {
        if (e.code() != Errc::ParseError)
        {
            throw;
        }
        fail(Errc::ParseError, path + ": " + e.detail());
    }
}

void write_file_atomic(std::string const& path, std::string const& contents)
{
    namespace fs = std::filesystem;
    fs::path const target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
        {
            fail(Errc::Usage, "cannot write " + tmp.string());
        }
        out << contents;
        out.flush();
        if (!out)
        {
            fail(Errc::Usage, "write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
    {
        fs::remove(tmp);
        fail(Errc::Usage, "cannot move output into " + path + ": " + ec.message());
    }
}

void save_frame_file(FrameFamily const& family, std::string const& path)
{
    write_file_atomic(path, format_frame_file(family));
}

}  // namespace gfusion
