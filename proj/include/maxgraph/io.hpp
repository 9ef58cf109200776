#pragma once

#include <string>
#include <vector>

#include "maxgraph/extended.hpp"
#include "maxgraph/graph.hpp"
#include "maxgraph/mechanics.hpp"

namespace maxgraph {

// 17 significant digits: enough to reproduce the double exactly on read.
std::string fmt_g17(double x);

void write_text_file(const std::string& path, const std::string& content);

// "v x1 x2 x3" lines followed by "f i j k" lines with 1-based corners.
void write_obj(const Mesh& mesh, const std::string& path);

// Header re_z,im_z,x1,x2,x3,abs_g and one row per vertex.
void write_mesh_csv(const Mesh& mesh, const std::string& path);

// Row-major entries, each printed as a re,im pair.
void write_period_matrix_csv(const std::vector<std::vector<cplx>>& pm,
                             const std::string& path);

std::string mechanics_json(const FluxTorque& ft, double end_growth,
                           double consistency);

}  // namespace maxgraph
