#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwreath/actions.hpp"
#include "qwreath/ktheory.hpp"
#include "qwreath/repcat.hpp"

namespace qwreath
{

/// Reads a JSON file; ParseError on I/O or syntax problems.
nlohmann::json load_json(const std::string& path);

/// Parses a weight given as a number, a decimal string or "p/q" (exact).
double parse_weight(const nlohmann::json& node, const std::string& pointer);

/// {"blocks":[{"size":N,"weights":[...]}],"tolerance":t}
MultiMatrixAlgebra parse_algebra(const nlohmann::json& j, std::optional<double> tolerance_override = std::nullopt,
                                 const std::string& pointer = "");

/// {"table":[[...]]} | {"symmetric":N} | {"cyclic":n} | {"trivial":true}
FiniteGroup parse_group(const nlohmann::json& j, const std::string& pointer = "");

/// {"kind":"classical","group":...,"algebra":...,"autos":[...]|"permutations":[...]}
/// {"kind":"dual","group":...,"algebra":...,"grading":[...],"basis":[[...]]}
Action parse_action(const nlohmann::json& j, std::optional<double> tolerance_override = std::nullopt,
                    const std::string& pointer = "");

/// Square or rectangular complex matrix as rows; entries are numbers or [re, im].
Matrix parse_matrix(const nlohmann::json& j, const std::string& pointer);

struct MorphismCase
{
    FiniteGroup g;
    ClassicalAction h;
    RepData v;
    RepData w;
    RepData t;
    /// Intertwiners to check; when the file gives none, a basis of Mor(v⊗w, t).
    std::vector<Matrix> s;
};

/// {"group":...,"h":action,"v":rep,"w":rep,"t":rep,"s":[[...]]}; a rep is
/// {"irrep":"label"} or {"matrices":[...],"q":[...]}.
MorphismCase parse_morphism_case(const nlohmann::json& j, std::optional<double> tolerance_override = std::nullopt);

/// {"k0":{"free_rank":r,"torsion":[...]},"k1":{...},"marked":[{"label":..,"coords":[..]}],
///  "block_sizes":[...],"beta":[[class,...],...]}; "group" is accepted for "k0".
KTheoryData parse_k_data(const nlohmann::json& j, const std::string& name = "file");

} // namespace qwreath
