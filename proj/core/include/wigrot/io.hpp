#pragma once

// Deterministic text output: numbers as %.17g, LF line endings.

#include <ostream>
#include <string>

#include "wigrot/geodesics.hpp"
#include "wigrot/quantum.hpp"
#include "wigrot/tetrads.hpp"
#include "wigrot/wigner.hpp"

namespace wigrot {

enum class OutputFormat { Csv, Json };

OutputFormat output_format_from_string(const std::string& name);
std::string format_number(double x);

// xi, t, r, theta, phi, kt, kr, ktheta, kphi, null_residual
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
// xi, r, theta, phi, n1, n2, n3, psi_tilde, psi_cumulative, null_residual
void write_profile_csv(std::ostream& os, const WignerResult& result);

std::string to_json(const WignerResult& result);
WignerResult wigner_result_from_json(const std::string& text);

std::string to_json(const Tetrad& tet);
Tetrad tetrad_from_json(const std::string& text);

std::string to_json(const HelicityDensityMatrix& m);
HelicityDensityMatrix density_matrix_from_json(const std::string& text);

// Writes the profile as CSV or JSON; throws IoError naming the path.
void emit_profile(const WignerResult& result, OutputFormat format, const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace wigrot
