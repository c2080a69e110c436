#pragma once

// JSON problem files: the on-disk description of a division problem, plus
// report plumbing shared by the command-line front end and the test suites.

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "kdiv/adjdiv.hpp"
#include "kdiv/identcheck.hpp"
#include "kdiv/l2solve.hpp"

namespace kdiv {

using Json = nlohmann::ordered_json;

struct ProblemFile {
    std::string version = "1";
    int n = 0, r = 0, p = 1;
    std::vector<std::string> generator_text;
    KoszulSection sec;
    PolyExt f;
    WeightSpec weight;
    DomainSpec domain;
    int degree = -1;       // -1: use the default rule
    int n_rad = 32, n_ang = 32;

    // optional raw-matrix payload (exactness E1 mode, adjugate mode with q > 1)
    std::optional<PolyMatrix> matrix;
    std::optional<std::vector<Poly>> rhs;
    // optional scalar division data for the adjugate path
    std::optional<ScalarDivisionData> scalar_data;

    ProblemFile() : f(1, 0) {}

    DivisionProblem to_division_problem() const;
    int resolved_degree() const;
};

// Throws ParseError (with location context) or std::invalid_argument on
// malformed input.
ProblemFile load_problem_file(const std::string& path);
ProblemFile parse_problem_json(const Json& j, const std::string& origin);

// "1,3" -> MultiIndex{1,3}; "" is the empty index.
MultiIndex parse_multi_index(const std::string& key, int ambient);
std::string multi_index_key(const MultiIndex& I);

// Points file: JSON array of points, each point an array of n [re, im] pairs.
std::vector<CPoint> load_points_file(const std::string& path, int n);

// FNV-1a over the raw file bytes; stable across runs.
std::string file_digest(const std::string& path);

Json ext_to_json(const PolyExt& e);
Json certificate_to_json(const DivisionCertificate& cert);

}  // namespace kdiv
