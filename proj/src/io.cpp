#include "morkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "morkit/errors.hpp"

namespace morkit
{

namespace
{

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
    {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct MatrixMarketHeader
{
    bool coordinate = true;
    bool symmetric  = false;
};

struct MatrixMarketData
{
    MatrixMarketHeader header;
    Index rows = 0;
    Index cols = 0;
    std::vector<Eigen::Triplet<Real, int>> entries;
};

MatrixMarketData parse_matrix_market(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw IoError("cannot open Matrix Market file '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line))
    {
        throw FormatError("'" + path + "': empty file");
    }
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix")
    {
        throw FormatError("'" + path + "': missing %%MatrixMarket header");
    }
    format   = lower(format);
    field    = lower(field);
    symmetry = lower(symmetry);
    MatrixMarketData data;
    if (format == "coordinate")
    {
        data.header.coordinate = true;
    }
    else if (format == "array")
    {
        data.header.coordinate = false;
    }
    else
    {
        throw FormatError("'" + path + "': unsupported format '" + format +
                          "'");
    }
    if (field != "real" && field != "integer" && field != "double")
    {
        throw FormatError("'" + path + "': unsupported field '" + field + "'");
    }
    if (symmetry == "symmetric")
    {
        data.header.symmetric = true;
    }
    else if (symmetry != "general")
    {
        throw FormatError("'" + path + "': unsupported symmetry '" +
                          symmetry + "'");
    }

    do
    {
        if (!std::getline(in, line))
        {
            throw FormatError("'" + path + "': missing size line");
        }
        line = trim(line);
    } while (line.empty() || line[0] == '%');

    std::istringstream ss(line);
    long long rows = -1, cols = -1, nnz = -1;
    ss >> rows >> cols;
    if (data.header.coordinate)
    {
        ss >> nnz;
    }
    if (!ss || rows < 0 || cols < 0 || (data.header.coordinate && nnz < 0))
    {
        throw FormatError("'" + path + "': malformed size line");
    }
    if (data.header.symmetric && rows != cols)
    {
        throw FormatError("'" + path + "': symmetric matrix must be square");
    }
    data.rows = rows;
    data.cols = cols;

    auto next_value_line = [&](std::string& out) {
        while (std::getline(in, out))
        {
            out = trim(out);
            if (!out.empty() && out[0] != '%')
            {
                return true;
            }
        }
        return false;
    };

    auto push = [&](long long i, long long j, Real v) {
        data.entries.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
        if (data.header.symmetric && i != j)
        {
            data.entries.emplace_back(static_cast<int>(j), static_cast<int>(i),
                                      v);
        }
    };

    if (data.header.coordinate)
    {
        for (long long k = 0; k < nnz; ++k)
        {
            if (!next_value_line(line))
            {
                throw FormatError("'" + path + "': expected " +
                                  std::to_string(nnz) + " entries");
            }
            std::istringstream es(line);
            long long i = 0, j = 0;
            Real v      = 0;
            es >> i >> j >> v;
            if (!es || i < 1 || i > rows || j < 1 || j > cols)
            {
                throw FormatError("'" + path + "': bad entry '" + line + "'");
            }
            if (data.header.symmetric && j > i)
            {
                throw FormatError("'" + path +
                                  "': symmetric storage expects the lower "
                                  "triangle");
            }
            push(i - 1, j - 1, v);
        }
    }
    else
    {
        for (long long j = 0; j < cols; ++j)
        {
            const long long first = data.header.symmetric ? j : 0;
            for (long long i = first; i < rows; ++i)
            {
                if (!next_value_line(line))
                {
                    throw FormatError("'" + path + "': too few array values");
                }
                std::istringstream es(line);
                Real v = 0;
                es >> v;
                if (!es)
                {
                    throw FormatError("'" + path + "': bad value '" + line +
                                      "'");
                }
                push(i, j, v);
            }
        }
    }
    return data;
}

} // namespace

std::string format_real(Real x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_matrix_market(const SparseMatrixR& a)
{
    std::string out = "%%MatrixMarket matrix coordinate real general\n";
    out += std::to_string(a.rows()) + " " + std::to_string(a.cols()) + " " +
           std::to_string(a.nonZeros()) + "\n";
    for (Index j = 0; j < a.outerSize(); ++j)
    {
        for (SparseMatrixR::InnerIterator it(a, j); it; ++it)
        {
            out += std::to_string(it.row() + 1) + " " +
                   std::to_string(j + 1) + " " + format_real(it.value()) +
                   "\n";
        }
    }
    return out;
}

std::string format_matrix_market(const MatrixXr& a)
{
    std::string out = "%%MatrixMarket matrix array real general\n";
    out += std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
    for (Index j = 0; j < a.cols(); ++j)
    {
        for (Index i = 0; i < a.rows(); ++i)
        {
            out += format_real(a(i, j)) + "\n";
        }
    }
    return out;
}

void write_matrix_market(const SparseMatrixR& a, const std::string& path)
{
    write_file_atomic(path, format_matrix_market(a));
}

void write_matrix_market(const MatrixXr& a, const std::string& path)
{
    write_file_atomic(path, format_matrix_market(a));
}

SparseMatrixR read_matrix_market_sparse(const std::string& path)
{
    const MatrixMarketData data = parse_matrix_market(path);
    SparseMatrixR a(data.rows, data.cols);
    if (data.header.coordinate)
    {
        a.setFromTriplets(data.entries.begin(), data.entries.end());
    }
    else
    {
        // Dense files keep their explicit zeros out of the sparse pattern.
        std::vector<Eigen::Triplet<Real, int>> nz;
        for (const auto& t : data.entries)
        {
            if (t.value() != 0)
            {
                nz.push_back(t);
            }
        }
        a.setFromTriplets(nz.begin(), nz.end());
    }
    a.makeCompressed();
    return a;
}

MatrixXr read_matrix_market_dense(const std::string& path)
{
    const MatrixMarketData data = parse_matrix_market(path);
    MatrixXr a = MatrixXr::Zero(data.rows, data.cols);
    for (const auto& t : data.entries)
    {
        a(t.row(), t.col()) += t.value();
    }
    return a;
}

KeyValueList read_key_values(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw IoError("cannot open '" + path + "'");
    }
    KeyValueList kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#')
        {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
        {
            throw FormatError("'" + path + "' line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.empty())
        {
            throw FormatError("'" + path + "' line " + std::to_string(lineno) +
                              ": empty key");
        }
        kv.emplace_back(std::move(key), trim(line.substr(eq + 1)));
    }
    return kv;
}

std::string format_key_values(const KeyValueList& kv)
{
    std::string out;
    for (const auto& [k, v] : kv)
    {
        out += k + " = " + v + "\n";
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content)
{
    namespace fs     = std::filesystem;
    const fs::path p = path;
    const fs::path tmp =
        p.parent_path() / (".tmp." + p.filename().string());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
        {
            throw IoError("cannot write '" + tmp.string() + "'");
        }
        out << content;
        out.close();
        if (!out)
        {
            throw IoError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec)
    {
        fs::remove(tmp, ec);
        throw IoError("cannot rename onto '" + path + "'");
    }
}

} // namespace morkit
