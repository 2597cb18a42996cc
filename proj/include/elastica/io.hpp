/**
 * @file io.hpp
 * @brief Curve CSV/JSON, Theta-network JSON and run manifests.
 *
 * CSV layout:
 *   dim,closed
 *   2,1
 *   x0,y0
 *   x1,y1
 *   ...
 * Numbers are written with 17 significant digits, '.' as decimal separator.
 */
#pragma once

#include "elastica/curve.hpp"
#include "elastica/elliptic.hpp"
#include "elastica/networks.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <locale>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace elastica {

inline constexpr const char* toolkit_version = "1.0.0";

using json = nlohmann::json;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline void write_curve_csv(std::ostream& os, const DiscreteCurve& c)
{
    std::ostringstream buf;
    buf.imbue(std::locale::classic());
    buf << std::setprecision(17);
    buf << "dim,closed\n" << c.dimension() << ',' << (c.closed() ? 1 : 0) << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (int d = 0; d < c.dimension(); ++d)
            buf << (d ? "," : "") << c.point(i)[d];
        buf << '\n';
    }
    os << buf.str();
}

namespace detail {

inline std::vector<std::string> split_commas(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

inline double parse_double(const std::string& s, std::size_t line_no)
{
    std::istringstream is(s);
    is.imbue(std::locale::classic());
    double v = 0.0;
    is >> v;
    if (is.fail())
        throw io_error("curve csv: line " + std::to_string(line_no) + ": not a number: '" + s + "'");
    is >> std::ws;
    if (!is.eof())
        throw io_error("curve csv: line " + std::to_string(line_no) + ": trailing characters in '" + s + "'");
    return v;
}

inline std::string strip(std::string s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t'))
        ++b;
    return s.substr(b);
}

} // namespace detail

inline DiscreteCurve read_curve_csv(std::istream& is)
{
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++line_no;
            line = detail::strip(line);
            if (!line.empty())
                return true;
        }
        return false;
    };
    if (!next_line() || line != "dim,closed")
        throw io_error("curve csv: expected header 'dim,closed'");
    if (!next_line())
        throw io_error("curve csv: missing dim/closed values");
    const auto head = detail::split_commas(line);
    if (head.size() != 2)
        throw io_error("curve csv: line " + std::to_string(line_no) + ": expected 'dim,closed' values");
    const double dim_d = detail::parse_double(head[0], line_no);
    const double closed_d = detail::parse_double(head[1], line_no);
    if (dim_d < 2 || dim_d != static_cast<int>(dim_d) || (closed_d != 0 && closed_d != 1))
        throw io_error("curve csv: invalid dim/closed values");
    const int dim = static_cast<int>(dim_d);

    std::vector<Point> pts;
    while (next_line()) {
        const auto fields = detail::split_commas(line);
        if (static_cast<int>(fields.size()) != dim)
            throw io_error("curve csv: line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                           " coordinates");
        Point p(dim);
        for (int d = 0; d < dim; ++d)
            p[d] = detail::parse_double(fields[static_cast<std::size_t>(d)], line_no);
        pts.push_back(std::move(p));
    }
    return DiscreteCurve::from_points(pts, closed_d == 1);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline json curve_to_json(const DiscreteCurve& c, const json& metadata = json::object())
{
    json pts = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
        json row = json::array();
        for (int d = 0; d < c.dimension(); ++d)
            row.push_back(c.point(i)[d]);
        pts.push_back(std::move(row));
    }
    return json{{"format", "elastica-curve"},
                {"dim", c.dimension()},
                {"closed", c.closed()},
                {"vertex_marks", c.vertex_marks()},
                {"points", std::move(pts)},
                {"metadata", metadata}};
}

inline DiscreteCurve curve_from_json(const json& j)
{
    try {
        const int dim = j.at("dim").get<int>();
        const bool closed = j.at("closed").get<bool>();
        std::vector<Point> pts;
        for (const auto& row : j.at("points")) {
            if (static_cast<int>(row.size()) != dim)
                throw io_error("curve json: point of wrong dimension");
            Point p(dim);
            for (int d = 0; d < dim; ++d)
                p[d] = row.at(static_cast<std::size_t>(d)).get<double>();
            pts.push_back(std::move(p));
        }
        std::vector<std::size_t> marks;
        if (j.contains("vertex_marks"))
            marks = j.at("vertex_marks").get<std::vector<std::size_t>>();
        return DiscreteCurve::from_points(pts, closed, std::move(marks));
    } catch (const json::exception& e) {
        throw io_error(std::string("curve json: ") + e.what());
    }
}

inline json network_to_json(const ThetaNetwork& net, const json& metadata = json::object())
{
    const auto& spec = net.angle_spec();
    json curves = json::array();
    for (const auto& c : net.curves())
        curves.push_back(curve_to_json(c));
    auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    return json{{"format", "elastica-theta-network"},
                {"junction_a", vec(net.junction_a())},
                {"junction_b", vec(net.junction_b())},
                {"angle_spec",
                 {{"kind", spec.kind == AngleSpec::Kind::symmetric ? "symmetric" : "generalized"},
                  {"alpha", spec.alpha},
                  {"beta", spec.beta}}},
                {"curves", std::move(curves)},
                {"metadata", metadata}};
}

inline ThetaNetwork network_from_json(const json& j)
{
    try {
        const auto& s = j.at("angle_spec");
        const AngleSpec spec = s.at("kind").get<std::string>() == "symmetric"
                                   ? AngleSpec::symmetric()
                                   : AngleSpec::generalized(s.at("alpha").get<double>(), s.at("beta").get<double>());
        const auto& cs = j.at("curves");
        if (cs.size() != 3)
            throw io_error("network json: exactly three curves required");
        return ThetaNetwork({curve_from_json(cs[0]), curve_from_json(cs[1]), curve_from_json(cs[2])}, spec);
    } catch (const json::exception& e) {
        throw io_error(std::string("network json: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline bool has_suffix(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw io_error("write to '" + path + "' failed");
}

/// Reads .json as curve JSON, anything else as CSV.
inline DiscreteCurve load_curve(const std::string& path)
{
    const std::string text = read_file(path);
    if (has_suffix(path, ".json")) {
        try {
            return curve_from_json(json::parse(text));
        } catch (const json::parse_error& e) {
            throw io_error("curve json: " + std::string(e.what()));
        }
    }
    std::istringstream is(text);
    return read_curve_csv(is);
}

inline void save_curve(const std::string& path, const DiscreteCurve& c, const json& metadata = json::object())
{
    if (has_suffix(path, ".json")) {
        write_file(path, curve_to_json(c, metadata).dump(2) + "\n");
        return;
    }
    std::ostringstream os;
    write_curve_csv(os, c);
    write_file(path, os.str());
}

inline ThetaNetwork load_network(const std::string& path)
{
    try {
        return network_from_json(json::parse(read_file(path)));
    } catch (const json::parse_error& e) {
        throw io_error("network json: " + std::string(e.what()));
    }
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

/// The constants bundle with 15 significant digits, as printed by `constants`.
inline json constants_json()
{
    const auto& c = constants();
    auto round15 = [](double v) {
        std::ostringstream os;
        os.imbue(std::locale::classic());
        os << std::setprecision(15) << v;
        return std::stod(os.str());
    };
    return json{{"m_star", round15(c.m_star)},
                {"K_star", round15(c.K_star)},
                {"E_star", round15(c.E_star)},
                {"varpi_star", round15(c.varpi_star)},
                {"phi_star_rad", round15(c.phi_star)},
                {"phi_star_deg", round15(c.phi_star * 180.0 / std::numbers::pi)}};
}

inline std::string constants_checksum()
{
    const auto& c = constants();
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(15) << c.m_star << ',' << c.K_star << ',' << c.E_star << ',' << c.varpi_star << ','
       << c.phi_star;
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(os.str());
    return "fnv1a64:" + hex.str();
}

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> outputs;

    json to_json() const
    {
        return json{{"command", command},
                    {"parameters", parameters},
                    {"outputs", outputs},
                    {"versions", {{"toolkit", toolkit_version}, {"constants_checksum", constants_checksum()}}}};
    }
};

inline std::string manifest_path(const std::string& output) { return output + ".manifest.json"; }

inline void write_manifest(const RunManifest& m)
{
    if (m.outputs.empty())
        throw io_error("manifest: no outputs");
    write_file(manifest_path(m.outputs.front()), m.to_json().dump(2) + "\n");
}

} // namespace elastica
