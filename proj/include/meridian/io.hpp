#pragma once

// Text output helpers shared by the CLI and the tests: shortest round-trip
// doubles, the x0,rho[,theta],value[,residual] CSV schema, and legacy ASCII
// VTK structured grids.

#include <array>
#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "contour.hpp"
#include "core.hpp"
#include "errors.hpp"

namespace meridian::io {

// Shortest decimal that parses back to exactly the same double.
inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{}) throw InvalidParams("bad number in CSV field: '" + s + "'");
    for (const char* p = res.ptr; p < e; ++p)
        if (*p != ' ' && *p != '\t') throw InvalidParams("trailing text in CSV field: '" + s + "'");
    return v;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }
};

inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ',';
        os << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw InvalidParams("CSV row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_double(row[i]);
        }
        os << '\n';
    }
}

inline CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    if (!std::getline(is, line)) throw InvalidParams("empty CSV input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.header.push_back(cell);
    if (t.header.empty()) throw InvalidParams("CSV header has no columns");
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        while (std::getline(ls, cell, ',')) row.push_back(parse_double(cell));
        if (row.size() != t.header.size())
            throw InvalidParams("CSV row width differs from header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Meridian points in the CSV schema. theta column optional on read.
inline std::vector<MeridianPoint> points_from_csv(const CsvTable& t) {
    const int cx = t.column("x0"), cr = t.column("rho");
    if (cx < 0 || cr < 0) throw InvalidParams("CSV needs x0 and rho columns");
    const int ct = t.column("theta");
    std::vector<MeridianPoint> pts;
    pts.reserve(t.rows.size());
    for (const auto& row : t.rows)
        pts.push_back({row[static_cast<std::size_t>(cx)], row[static_cast<std::size_t>(cr)],
                       ct >= 0 ? row[static_cast<std::size_t>(ct)] : 0.0});
    return pts;
}

// Contour pieces flattened to label-free CSV: piece index, closed flag, x0, rho.
inline void write_polylines_csv(std::ostream& os,
                                const std::vector<contour::ContourPolyline>& pieces) {
    os << "label,piece,closed,x0,rho\n";
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto& pc = pieces[k];
        for (const auto& p : pc.points)
            os << pc.label << ',' << k << ',' << (pc.closed ? 1 : 0) << ','
               << format_double(p.u0) << ',' << format_double(p.urho) << '\n';
    }
}

// Legacy ASCII VTK structured grid over an (x0, second) chart window lifted to
// z=0, one SCALARS block per named field. `values[f][j*nx + i]` with i along
// x0 and j along the second axis.
inline void write_vtk(std::ostream& os, const std::string& title, const std::vector<double>& x0s,
                      const std::vector<double>& seconds,
                      const std::vector<std::string>& field_names,
                      const std::vector<std::vector<double>>& values) {
    const std::size_t nx = x0s.size(), ny = seconds.size();
    if (nx < 2 || ny < 2) throw InvalidParams("VTK grid needs at least 2 points per axis");
    if (field_names.size() != values.size())
        throw InvalidParams("VTK field name count differs from value arrays");
    os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_GRID\n";
    os << "DIMENSIONS " << nx << ' ' << ny << " 1\n";
    os << "POINTS " << nx * ny << " double\n";
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            os << format_double(x0s[i]) << ' ' << format_double(seconds[j]) << " 0\n";
    os << "POINT_DATA " << nx * ny << '\n';
    for (std::size_t f = 0; f < values.size(); ++f) {
        if (values[f].size() != nx * ny) throw InvalidParams("VTK value array size mismatch");
        os << "SCALARS " << field_names[f] << " double 1\nLOOKUP_TABLE default\n";
        for (double v : values[f]) os << format_double(v) << '\n';
    }
}

}  // namespace meridian::io
