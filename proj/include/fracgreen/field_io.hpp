#pragma once

#include <iosfwd>
#include <string>

#include "fracgreen/solver.hpp"

namespace fracgreen {

/// %.17g, so that doubles round-trip exactly.
std::string format_double(double v);

/// CSV with header t,x,re,im, one row per (time, node), LF line endings.
void write_field_csv(std::ostream& os, const Field& field);
void write_field_csv(const std::string& path, const Field& field);

/// Reads a CSV written by write_field_csv. The rows must form a full
/// time x node table on a uniform x grid. Throws DomainError otherwise.
Field read_field_csv(std::istream& is);
Field read_field_csv(const std::string& path);

struct FieldResidual {
    double relative_l2;  // ||a - b|| / ||b|| (0 when both vanish)
    double l2;           // ||a - b|| with the dx weight
    double max_abs;
};

/// Throws DomainError if the two fields live on different grids.
FieldResidual field_residual(const Field& a, const Field& b);

}  // namespace fracgreen
