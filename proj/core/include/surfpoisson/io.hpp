#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "surfpoisson/verify.hpp"

namespace surfpoisson {

/// FNV-1a 64-bit over raw bytes; hex string. Identifies configs in artifacts.
std::uint64_t fnv1a(std::string_view bytes);
std::string hash_hex(std::uint64_t h);

/// Shortest-roundtrip decimal formatting, deterministic across runs.
std::string format_double(double x);

/// First line of every CSV artifact: "# config=<hash> version=<version>".
std::string csv_meta_line(const std::string& config_hash);

/// vertices.csv / triangles.csv / boundary.csv under dir.
void export_mesh_csv(const ParamMesh& mesh, const std::string& dir,
                     const std::string& config_hash);
ParamMesh import_mesh_csv(const std::string& dir);

/// Coordinate-list CSV: row,col,value (lower+upper, row-major order).
void export_operator_csv(const SparseOperator& op, const std::string& path,
                         const std::string& config_hash);

/// vertex_id,X1,X2,value rows.
void export_field_csv(const ParamMesh& mesh, const VecX& values, const std::string& path,
                      const std::string& config_hash);

/// vertex_id,V1,V2,V3 rows.
void export_vector_field_csv(const SurfaceVectorField& V, const std::string& path,
                             const std::string& config_hash);

void export_identity_reports_csv(const std::vector<IdentityReport>& reports,
                                 const std::string& path, const std::string& config_hash);

void export_convergence_csv(const ConvergenceTable& table, const std::string& path,
                            const std::string& config_hash);

/// JSON text for reports; "_meta" (config hash, tool version, command) is the
/// first key so every artifact records its provenance.
std::string solve_report_json(const SolveReport& report, const std::string& config_hash,
                              const std::string& command);
std::string div_report_json(const DivSolveReport& report, const std::string& config_hash,
                            const std::string& command);
std::string validation_report_json(const ValidationReport& report, const std::string& config_hash,
                                   const std::string& command);
std::string eigen_report_json(const EigenEstimate& eig, const CoercivityReport& coer,
                              std::uint64_t seed, const std::string& config_hash,
                              const std::string& command);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace surfpoisson
