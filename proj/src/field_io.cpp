#include "fracgreen/field_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace fracgreen {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_field_csv(std::ostream& os, const Field& field) {
    const VectorXr x = field.grid.x();
    os << "t,x,re,im\n";
    for (Eigen::Index ti = 0; ti < field.values.rows(); ++ti) {
        const std::string t = format_double(field.grid.times[static_cast<std::size_t>(ti)]);
        for (Eigen::Index j = 0; j < field.values.cols(); ++j) {
            const Complex v = field.values(ti, j);
            os << t << ',' << format_double(x(j)) << ',' << format_double(v.real()) << ','
               << format_double(v.imag()) << '\n';
        }
    }
}

void write_field_csv(const std::string& path, const Field& field) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open '" + path + "' for writing");
    write_field_csv(os, field);
    if (!os) throw DomainError("write to '" + path + "' failed");
}

namespace {

double parse_number(const std::string& s, std::size_t line) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && *b == ' ') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw DomainError("field CSV line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

}  // namespace

Field read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("field CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,x,re,im") throw DomainError("field CSV header must be t,x,re,im");

    std::vector<double> ts, xs;
    std::vector<Complex> vals;
    std::vector<double> row_t;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 4) throw DomainError("field CSV line " + std::to_string(lineno) + ": expected 4 columns");
        const double t = parse_number(cells[0], lineno), x = parse_number(cells[1], lineno);
        if (ts.empty() || ts.back() != t) ts.push_back(t);
        if (ts.size() == 1) xs.push_back(x);
        row_t.push_back(x);
        vals.emplace_back(parse_number(cells[2], lineno), parse_number(cells[3], lineno));
    }
    if (ts.empty() || xs.size() < 2) throw DomainError("field CSV has too few rows");
    const std::size_t nx = xs.size();
    if (vals.size() != ts.size() * nx) throw DomainError("field CSV is not a full time x node table");
    for (std::size_t i = 0; i < row_t.size(); ++i)
        if (row_t[i] != xs[i % nx]) throw DomainError("field CSV: x nodes differ between times");

    Field f;
    f.grid.x_min = xs.front();
    f.grid.x_max = xs.back();
    f.grid.nx = static_cast<Eigen::Index>(nx);
    f.grid.times = ts;
    const double dx = f.grid.dx();
    for (std::size_t j = 0; j < nx; ++j)
        if (std::abs(xs[j] - (f.grid.x_min + j * dx)) > 1e-9 * std::max(1.0, std::abs(xs[j])))
            throw DomainError("field CSV: x grid is not uniform");
    f.values.resize(static_cast<Eigen::Index>(ts.size()), static_cast<Eigen::Index>(nx));
    for (std::size_t i = 0; i < vals.size(); ++i)
        f.values(static_cast<Eigen::Index>(i / nx), static_cast<Eigen::Index>(i % nx)) = vals[i];
    return f;
}

Field read_field_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DomainError("cannot open '" + path + "'");
    return read_field_csv(is);
}

FieldResidual field_residual(const Field& a, const Field& b) {
    if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols())
        throw DomainError("fields have different shapes");
    if (a.grid.times != b.grid.times) throw DomainError("fields have different output times");
    const double dx = a.grid.dx();
    if (std::abs(dx - b.grid.dx()) > 1e-12 * dx || std::abs(a.grid.x_min - b.grid.x_min) > 1e-12 * std::max(1.0, dx))
        throw DomainError("fields have different x grids");
    const double diff = (a.values - b.values).norm();
    const double ref = b.values.norm();
    FieldResidual r;
    r.relative_l2 = ref > 0.0 ? diff / ref : (diff > 0.0 ? INFINITY : 0.0);
    r.l2 = diff * std::sqrt(dx);
    r.max_abs = (a.values - b.values).cwiseAbs().maxCoeff();
    return r;
}

}  // namespace fracgreen
