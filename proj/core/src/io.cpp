#include "wigrot/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json_text.hpp"
#include "wigrot/error.hpp"

namespace wigrot {

using nlohmann::json;

OutputFormat output_format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorCode::ConfigError, "unknown output format '" + name + "'");
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    first = false;
    os << format_number(v);
  }
  os << '\n';
}

json mat_to_json(const Mat4& m) {
  json a = json::array();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a.push_back(m(i, j));
  return a;
}

Mat4 mat_from_json(const json& a) {
  if (!a.is_array() || a.size() != 16) throw Error(ErrorCode::ConfigError, "expected 16 matrix entries");
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = a[static_cast<size_t>(4 * i + j)].get<double>();
  return m;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "xi,t,r,theta,phi,kt,kr,ktheta,kphi,null_residual\n";
  for (const auto& s : traj.samples) {
    const Vec4& x = s.x.coords;
    const Vec4& k = s.k.c;
    write_row(os, {s.xi, x[0], x[1], x[2], x[3], k[0], k[1], k[2], k[3], s.norm_residual});
  }
}

void write_profile_csv(std::ostream& os, const WignerResult& result) {
  os << "xi,r,theta,phi,n1,n2,n3,psi_tilde,psi_cumulative,null_residual\n";
  for (const auto& s : result.samples)
    write_row(os, {s.xi, s.x.r(), s.x.theta(), s.x.phi(), s.n_local[0], s.n_local[1], s.n_local[2], s.psi_tilde,
                   s.psi_cumulative, s.null_residual});
}

std::string to_json(const WignerResult& result) {
  json j;
  j["psi_total"] = result.psi_total;
  json samples = json::array();
  for (const auto& s : result.samples) {
    json o;
    o["xi"] = s.xi;
    o["point"] = {s.x.t(), s.x.r(), s.x.theta(), s.x.phi()};
    o["r"] = s.x.r();
    o["psi_tilde"] = s.psi_tilde;
    o["psi_cumulative"] = s.psi_cumulative;
    o["n_local"] = {s.n_local[0], s.n_local[1], s.n_local[2]};
    o["null_residual"] = s.null_residual;
    samples.push_back(o);
  }
  j["samples"] = samples;
  j["frame_transform"] = mat_to_json(result.frame_transform);
  return detail::dump_json(j);
}

WignerResult wigner_result_from_json(const std::string& text) {
  const json j = parse(text);
  WignerResult r;
  r.psi_total = j.at("psi_total").get<double>();
  for (const auto& o : j.at("samples")) {
    WignerSample s;
    s.xi = o.at("xi").get<double>();
    const auto& p = o.at("point");
    s.x = SpacetimePoint(p[0].get<double>(), p[1].get<double>(), p[2].get<double>(), p[3].get<double>());
    s.psi_tilde = o.at("psi_tilde").get<double>();
    s.psi_cumulative = o.at("psi_cumulative").get<double>();
    const auto& n = o.at("n_local");
    s.n_local = Vec3(n[0].get<double>(), n[1].get<double>(), n[2].get<double>());
    s.null_residual = o.at("null_residual").get<double>();
    r.samples.push_back(s);
  }
  r.frame_transform = mat_from_json(j.at("frame_transform"));
  return r;
}

std::string to_json(const Tetrad& tet) {
  json j;
  j["kind"] = to_string(tet.kind);
  j["point"] = {tet.point.t(), tet.point.r(), tet.point.theta(), tet.point.phi()};
  j["legs"] = mat_to_json(tet.legs);
  json params = json::object();
  for (const auto& [k, v] : tet.params) params[k] = v;
  j["params"] = params;
  return detail::dump_json(j);
}

Tetrad tetrad_from_json(const std::string& text) {
  const json j = parse(text);
  Tetrad t;
  t.kind = tetrad_kind_from_string(j.at("kind").get<std::string>());
  const auto& p = j.at("point");
  t.point = SpacetimePoint(p[0].get<double>(), p[1].get<double>(), p[2].get<double>(), p[3].get<double>());
  t.legs = mat_from_json(j.at("legs"));
  for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it) t.params[it.key()] = it->get<double>();
  return t;
}

std::string to_json(const HelicityDensityMatrix& m) {
  static const char* single[] = {"+", "-"};
  static const char* pair[] = {"++", "+-", "-+", "--"};
  json j;
  j["dim"] = m.dim();
  json basis = json::array();
  for (int i = 0; i < m.dim(); ++i) basis.push_back(m.dim() == 2 ? single[i] : pair[i]);
  j["basis"] = basis;
  json entries = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back({m.rho(r, c).real(), m.rho(r, c).imag()});
    entries.push_back(row);
  }
  j["entries"] = entries;
  return detail::dump_json(j);
}

HelicityDensityMatrix density_matrix_from_json(const std::string& text) {
  const json j = parse(text);
  const int dim = j.at("dim").get<int>();
  HelicityDensityMatrix m;
  m.rho.resize(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const auto& e = j.at("entries")[static_cast<size_t>(r)][static_cast<size_t>(c)];
      m.rho(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  f << contents;
  if (!f) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

void emit_profile(const WignerResult& result, OutputFormat format, const std::string& path) {
  if (format == OutputFormat::Json) {
    write_text_file(path, to_json(result));
    return;
  }
  std::ostringstream os;
  write_profile_csv(os, result);
  write_text_file(path, os.str());
}

}  // namespace wigrot
