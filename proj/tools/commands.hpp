#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "altafini/dynamics.hpp"
#include "altafini/lifting.hpp"
#include "altafini/rate.hpp"
#include "altafini/signed_graph.hpp"
#include "altafini/spectral.hpp"
#include "altafini/weight_model.hpp"

namespace altafini::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
    kOk = 0,
    kCrossCheckFailed = 1,
    kInputError = 2,
    kUndecidable = 3,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to `out` unless
/// an output file is named; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// JSON renderings shared by the commands. Vertex ids are 1-based.
nlohmann::json to_json(const Clustering& b);
nlohmann::json to_json(const NegativeCycleCertificate& c);
nlohmann::json to_json(const LiftedGraphStructure& s, int n);
nlohmann::json to_json(const LimitVerdict& v);
nlohmann::json to_json(const SequenceClassification& c);
nlohmann::json to_json(const RateBound& r);
nlohmann::json to_json(const SpectralReport& r);

nlohmann::json analyze_graph(const SignedDigraph& g);

}  // namespace altafini::cli
