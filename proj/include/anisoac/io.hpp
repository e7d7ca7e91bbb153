#pragma once

#include <string>

#include "anisoac/acsolver.hpp"
#include "anisoac/curve.hpp"

namespace anisoac {

/// <prefix>.bin holds n*n little-endian float64 values, row-major (x fastest);
/// <prefix>.json holds {"n", "h", "t", "epsilon"}.
void write_field(const std::string& prefix, const ScalarField& field, double epsilon);
ScalarField read_field(const std::string& prefix);

/// "x,y" header, one vertex per line.
void write_curve_csv(const std::string& path, const FrontCurve& curve);

void write_text(const std::string& path, const std::string& text);

/// Shortest round-trip decimal form (deterministic report formatting).
std::string format_number(double v);

}  // namespace anisoac
