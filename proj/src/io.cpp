#include "maxgraph/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "maxgraph/errors.hpp"

namespace maxgraph {

std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("io: cannot write " + path);
  out << content;
  out.close();
  if (!out) throw validation_error("io: short write to " + path);
}

namespace {

std::string vec3(const Vec3L& v) {
  return "[" + fmt_g17(v.x1) + ", " + fmt_g17(v.x2) + ", " + fmt_g17(v.x3) +
         "]";
}

}  // namespace

void write_obj(const Mesh& mesh, const std::string& path) {
  std::ostringstream out;
  for (const auto& v : mesh.vertices)
    out << "v " << fmt_g17(v.X.x1) << ' ' << fmt_g17(v.X.x2) << ' '
        << fmt_g17(v.X.x3) << '\n';
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  write_text_file(path, out.str());
}

void write_mesh_csv(const Mesh& mesh, const std::string& path) {
  std::ostringstream out;
  out << "re_z,im_z,x1,x2,x3,abs_g\n";
  for (const auto& v : mesh.vertices)
    out << fmt_g17(v.z.real()) << ',' << fmt_g17(v.z.imag()) << ','
        << fmt_g17(v.X.x1) << ',' << fmt_g17(v.X.x2) << ',' << fmt_g17(v.X.x3)
        << ',' << fmt_g17(v.abs_g) << '\n';
  write_text_file(path, out.str());
}

void write_period_matrix_csv(const std::vector<std::vector<cplx>>& pm,
                             const std::string& path) {
  std::ostringstream out;
  for (const auto& row : pm) {
    for (size_t k = 0; k < row.size(); ++k)
      out << (k ? "," : "") << fmt_g17(row[k].real()) << ','
          << fmt_g17(row[k].imag());
    out << '\n';
  }
  write_text_file(path, out.str());
}

std::string mechanics_json(const FluxTorque& ft, double end_growth,
                           double consistency) {
  std::ostringstream out;
  out << "{\n  \"fluxes\": [";
  for (size_t j = 0; j < ft.fluxes.size(); ++j)
    out << (j ? ", " : "") << vec3(ft.fluxes[j]);
  out << "],\n  \"torques\": [";
  for (size_t j = 0; j < ft.torques.size(); ++j)
    out << (j ? ", " : "") << vec3(ft.torques[j]);
  out << "],\n  \"balance_residual_flux\": " << fmt_g17(ft.balance_residual_flux)
      << ",\n  \"balance_residual_torque\": "
      << fmt_g17(ft.balance_residual_torque)
      << ",\n  \"end_growth\": " << fmt_g17(end_growth)
      << ",\n  \"consistency\": " << fmt_g17(consistency) << "\n}\n";
  return out.str();
}

}  // namespace maxgraph
