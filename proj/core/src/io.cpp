#include "surfpoisson/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "surfpoisson/errors.hpp"

namespace surfpoisson {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json meta_object(const std::string& config_hash, const std::string& command) {
  ordered_json meta;
  meta["config"] = config_hash;
  meta["version"] = tool_version();
  meta["command"] = command;
  return meta;
}

/// NaN has no JSON representation; reports carry it as null.
ordered_json json_number(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

ordered_json solve_report_object(const SolveReport& report) {
  ordered_json j;
  j["dof"] = static_cast<int>(report.solution.size());
  j["iterations"] = report.iterations;
  j["status"] = report.status == SolveStatus::converged ? "converged" : "max_iterations";
  j["algebraic_residual"] = json_number(report.algebraic_residual);
  j["compatibility_defect"] = json_number(report.compatibility_defect);
  j["mean_value"] = json_number(report.mean_value);
  j["flux_residual"] = json_number(report.flux_residual);
  j["energy"] = json_number(report.energy);
  return j;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s) {
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  return std::stod(s);
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string csv_meta_line(const std::string& config_hash) {
  return "# config=" + config_hash + " version=" + tool_version();
}

void export_mesh_csv(const ParamMesh& mesh, const std::string& dir,
                     const std::string& config_hash) {
  std::filesystem::create_directories(dir);
  {
    std::ostringstream os;
    os << csv_meta_line(config_hash) << "\n";
    os << "# h_target=" << format_double(mesh.h_target) << "\n";
    os << "vertex_id,X1,X2,boundary,s\n";
    for (int i = 0; i < mesh.n_vertices(); ++i)
      os << i << ',' << format_double(mesh.vertices[i].x()) << ','
         << format_double(mesh.vertices[i].y()) << ',' << (mesh.boundary_vertex_flags[i] ? 1 : 0)
         << ',' << format_double(mesh.boundary_params[i]) << "\n";
    write_text_file(dir + "/vertices.csv", os.str());
  }
  {
    std::ostringstream os;
    os << csv_meta_line(config_hash) << "\n";
    os << "triangle_id,v0,v1,v2\n";
    for (int t = 0; t < mesh.n_triangles(); ++t)
      os << t << ',' << mesh.triangles[t][0] << ',' << mesh.triangles[t][1] << ','
         << mesh.triangles[t][2] << "\n";
    write_text_file(dir + "/triangles.csv", os.str());
  }
  {
    std::ostringstream os;
    os << csv_meta_line(config_hash) << "\n";
    os << "edge_id,v0,v1,n1,n2,s0,s1\n";
    for (size_t k = 0; k < mesh.boundary_edges.size(); ++k) {
      const auto& e = mesh.boundary_edges[k];
      os << k << ',' << e.v0 << ',' << e.v1 << ',' << format_double(e.normal.x()) << ','
         << format_double(e.normal.y()) << ',' << format_double(e.s0) << ','
         << format_double(e.s1) << "\n";
    }
    write_text_file(dir + "/boundary.csv", os.str());
  }
}

ParamMesh import_mesh_csv(const std::string& dir) {
  ParamMesh mesh;
  auto read_lines = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
    return lines;
  };

  for (const auto& line : read_lines(dir + "/vertices.csv")) {
    if (line.rfind("# h_target=", 0) == 0) {
      mesh.h_target = parse_double(line.substr(11));
      continue;
    }
    if (line.empty() || line[0] == '#' || line.rfind("vertex_id", 0) == 0) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 5) throw Error("malformed vertex row in " + dir);
    mesh.vertices.emplace_back(parse_double(cells[1]), parse_double(cells[2]));
    mesh.boundary_vertex_flags.push_back(cells[3] == "1");
    mesh.boundary_params.push_back(parse_double(cells[4]));
  }
  for (const auto& line : read_lines(dir + "/triangles.csv")) {
    if (line.empty() || line[0] == '#' || line.rfind("triangle_id", 0) == 0) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 4) throw Error("malformed triangle row in " + dir);
    mesh.triangles.push_back({std::stoi(cells[1]), std::stoi(cells[2]), std::stoi(cells[3])});
  }
  for (const auto& line : read_lines(dir + "/boundary.csv")) {
    if (line.empty() || line[0] == '#' || line.rfind("edge_id", 0) == 0) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 7) throw Error("malformed boundary row in " + dir);
    BoundaryEdge e;
    e.v0 = std::stoi(cells[1]);
    e.v1 = std::stoi(cells[2]);
    e.normal = Vec2(parse_double(cells[3]), parse_double(cells[4]));
    e.s0 = parse_double(cells[5]);
    e.s1 = parse_double(cells[6]);
    mesh.boundary_edges.push_back(e);
  }
  return mesh;
}

void export_operator_csv(const SparseOperator& op, const std::string& path,
                         const std::string& config_hash) {
  std::vector<std::tuple<int, int, double>> entries;
  entries.reserve(op.matrix.nonZeros());
  for (int col = 0; col < op.matrix.outerSize(); ++col)
    for (SparseMat::InnerIterator it(op.matrix, col); it; ++it)
      entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  std::ostringstream os;
  os << csv_meta_line(config_hash) << "\n";
  os << "row,col,value\n";
  for (const auto& [r, c, v] : entries)
    os << r << ',' << c << ',' << format_double(v) << "\n";
  write_text_file(path, os.str());
}

void export_field_csv(const ParamMesh& mesh, const VecX& values, const std::string& path,
                      const std::string& config_hash) {
  std::ostringstream os;
  os << csv_meta_line(config_hash) << "\n";
  os << "vertex_id,X1,X2,value\n";
  for (int i = 0; i < mesh.n_vertices(); ++i)
    os << i << ',' << format_double(mesh.vertices[i].x()) << ','
       << format_double(mesh.vertices[i].y()) << ',' << format_double(values[i]) << "\n";
  write_text_file(path, os.str());
}

void export_vector_field_csv(const SurfaceVectorField& V, const std::string& path,
                             const std::string& config_hash) {
  std::ostringstream os;
  os << csv_meta_line(config_hash) << "\n";
  os << "vertex_id,V1,V2,V3\n";
  for (size_t i = 0; i < V.values.size(); ++i)
    os << i << ',' << format_double(V.values[i].x()) << ',' << format_double(V.values[i].y())
       << ',' << format_double(V.values[i].z()) << "\n";
  write_text_file(path, os.str());
}

void export_identity_reports_csv(const std::vector<IdentityReport>& reports,
                                 const std::string& path, const std::string& config_hash) {
  std::ostringstream os;
  os << csv_meta_line(config_hash) << "\n";
  os << "name,lhs,rhs,abs_defect,rel_defect,mesh_h,quad_order\n";
  for (const auto& r : reports)
    os << r.name << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
       << format_double(r.abs_defect) << ',' << format_double(r.rel_defect) << ','
       << format_double(r.mesh_h) << ',' << r.quad_order << "\n";
  write_text_file(path, os.str());
}

void export_convergence_csv(const ConvergenceTable& table, const std::string& path,
                            const std::string& config_hash) {
  std::ostringstream os;
  os << csv_meta_line(config_hash) << "\n";
  os << "h,dof,l2_error,h1_error,flux_residual,mean_value,l2_rate,h1_rate\n";
  for (const auto& r : table.rows)
    os << format_double(r.h) << ',' << r.dof << ',' << format_double(r.l2_error) << ','
       << format_double(r.h1_error) << ',' << format_double(r.flux_residual) << ','
       << format_double(r.mean_value) << ',' << format_double(r.l2_rate) << ','
       << format_double(r.h1_rate) << "\n";
  write_text_file(path, os.str());
}

std::string solve_report_json(const SolveReport& report, const std::string& config_hash,
                              const std::string& command) {
  ordered_json j;
  j["_meta"] = meta_object(config_hash, command);
  j["solve"] = solve_report_object(report);
  return j.dump(2) + "\n";
}

std::string div_report_json(const DivSolveReport& report, const std::string& config_hash,
                            const std::string& command) {
  ordered_json j;
  j["_meta"] = meta_object(config_hash, command);
  j["div_residual"] = json_number(report.div_residual);
  j["normal_residual"] = json_number(report.normal_residual);
  j["conormal_residual"] = json_number(report.conormal_residual);
  j["compatibility_defect"] = json_number(report.compatibility_defect);
  j["potential"] = solve_report_object(report.potential);
  return j.dump(2) + "\n";
}

std::string validation_report_json(const ValidationReport& report, const std::string& config_hash,
                                   const std::string& command) {
  ordered_json j;
  j["_meta"] = meta_object(config_hash, command);
  j["lambda_min_est"] = json_number(report.lambda_min_est);
  j["lambda_0_est"] = json_number(report.lambda_0_est);
  j["pass"] = report.pass;
  ordered_json worst = ordered_json::array();
  for (const auto& [X, lam] : report.worst_points) {
    ordered_json p;
    p["X1"] = X.x();
    p["X2"] = X.y();
    p["lambda_min"] = lam;
    worst.push_back(p);
  }
  j["worst_points"] = worst;
  return j.dump(2) + "\n";
}

std::string eigen_report_json(const EigenEstimate& eig, const CoercivityReport& coer,
                              std::uint64_t seed, const std::string& config_hash,
                              const std::string& command) {
  ordered_json j;
  j["_meta"] = meta_object(config_hash, command);
  j["lambda1"] = json_number(eig.lambda1);
  j["c_star"] = json_number(eig.c_star);
  j["iterations"] = eig.iterations;
  ordered_json c;
  c["min_ratio"] = json_number(coer.min_ratio);
  c["c_star"] = json_number(coer.c_star);
  c["samples"] = coer.samples;
  c["seed"] = seed;
  j["coercivity"] = c;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("failed while writing " + path);
}

}  // namespace surfpoisson
