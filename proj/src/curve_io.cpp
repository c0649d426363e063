#include "norbrack/curve_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

namespace norbrack {

namespace {

std::string format_double(double x)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& token, std::size_t line_no)
{
    std::size_t begin = token.find_first_not_of(" \t");
    std::size_t end = token.find_last_not_of(" \t\r");
    if (begin == std::string::npos)
        throw IoError("empty coordinate on line " + std::to_string(line_no));
    const std::string trimmed = token.substr(begin, end - begin + 1);
    double value = 0.0;
    const auto res = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
    if (res.ec != std::errc() || res.ptr != trimmed.data() + trimmed.size())
        throw IoError("bad coordinate '" + trimmed + "' on line " + std::to_string(line_no));
    return value;
}

} // namespace

void write_curve_csv(std::ostream& out, const DiscreteImmersion& c)
{
    const int dim = ambient_dim(c.ambient());
    out << "# ambient=" << to_string(c.ambient()) << " n=" << c.grid_n() << '\n';
    for (std::size_t k = 0; k < c.grid_n(); ++k) {
        const Vec3 p = c.point(k);
        for (int d = 0; d < dim; ++d) {
            if (d > 0)
                out << ',';
            out << format_double(p[d]);
        }
        out << '\n';
    }
}

void write_curve_csv(const std::filesystem::path& path, const DiscreteImmersion& c)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    write_curve_csv(out, c);
    if (!out)
        throw IoError("write failed for " + path.string());
}

DiscreteImmersion read_curve_csv(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header))
        throw IoError("missing curve header");
    static const std::regex header_re(R"(^#\s*ambient=(plane|sphere)\s+n=(\d+)\s*\r?$)");
    std::smatch m;
    if (!std::regex_match(header, m, header_re))
        throw IoError("malformed curve header '" + header + "'");
    const Ambient ambient = ambient_from_string(m[1].str());
    const std::size_t n = std::stoul(m[2].str());
    validate_grid(n);
    const int dim = ambient_dim(ambient);

    Points points = Points::Zero(static_cast<Eigen::Index>(n), 3);
    std::string line;
    std::size_t row = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        if (row >= n)
            throw IoError("more than n=" + std::to_string(n) + " data lines");
        std::stringstream ss(line);
        std::string token;
        int d = 0;
        while (std::getline(ss, token, ',')) {
            if (d >= dim)
                throw IoError("too many coordinates on line " + std::to_string(line_no));
            points(static_cast<Eigen::Index>(row), d++) = parse_double(token, line_no);
        }
        if (d != dim)
            throw IoError("expected " + std::to_string(dim) + " coordinates on line " + std::to_string(line_no));
        ++row;
    }
    if (row != n)
        throw IoError("expected " + std::to_string(n) + " data lines, found " + std::to_string(row));
    return DiscreteImmersion(std::move(points), ambient);
}

DiscreteImmersion read_curve_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    return read_curve_csv(in);
}

std::vector<std::filesystem::path> write_flow_frames(const std::filesystem::path& dir,
                                                     const std::vector<DiscreteImmersion>& frames)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;
    written.reserve(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04zu.csv", i);
        written.push_back(dir / name);
        write_curve_csv(written.back(), frames[i]);
    }
    return written;
}

} // namespace norbrack
