#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "altafini/dynamics.hpp"
#include "altafini/errors.hpp"
#include "altafini/signed_graph.hpp"
#include "altafini/weight_model.hpp"

namespace altafini::io {

/// Malformed or invalid input file; the message carries file/line/field context.
class InputError : public Error {
public:
    using Error::Error;
};

// Graph files: {"n": int, "arcs": [{"from": int, "to": int, "sign": "+"|"-"}],
// "self_arcs": "implicit"|"explicit"}. Vertex ids are 1-based.
SignedDigraph parse_graph(const nlohmann::json& doc);
SignedDigraph read_graph_file(const std::filesystem::path& path);
nlohmann::json graph_to_json(const SignedDigraph& g);

// Matrix files: CSV (one row per line) or JSON {"entries": [[...]]}.
Matrix parse_matrix_csv(const std::string& text);
Matrix parse_matrix_json(const nlohmann::json& doc);
Matrix read_matrix_file(const std::filesystem::path& path);
std::string matrix_to_csv(const Matrix& m);
nlohmann::json matrix_to_json(const Matrix& m);

/// Signal files: {"mode": "constant"|"finite"|"eventually_periodic", "matrices": [...],
/// "prefix": [...], "period": [...], "extend": bool, "beta": number}. Each matrix is inline
/// (array of rows or {"entries": ...}) or a path relative to the signal file.
SwitchingSignal parse_signal(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                             double row_tol = kDefaultRowSumTolerance);
SwitchingSignal read_signal_file(const std::filesystem::path& path,
                                 double row_tol = kDefaultRowSumTolerance);
nlohmann::json signal_to_json(const SwitchingSignal& s);

/// Initial state: JSON array or CSV with the values on one row or one column.
Vector read_vector_file(const std::filesystem::path& path);

/// Header t,x1..xn, one row per time step.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// Reads a file written by write_trajectory_csv.
Trajectory read_trajectory_csv(const std::filesystem::path& path);
/// Header t,modulus_spread,lifted_spread.
void write_spread_csv(std::ostream& os, const Trajectory& traj);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

}  // namespace altafini::io
