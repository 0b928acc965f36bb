#pragma once

#include <string>

#include <json.hpp>

#include "opschur/completion.hpp"
#include "opschur/cones.hpp"
#include "opschur/factorization.hpp"
#include "opschur/multiplier.hpp"
#include "opschur/pattern.hpp"

namespace opschur::io {

using nlohmann::json;

// Complex numbers serialize as [re, im]; blocks as row-major arrays of rows.

json to_json(const linalg::ComplexMatrix& m);
linalg::ComplexMatrix matrix_from_json(const json& j);

json to_json(const pattern::Pattern& p);
pattern::Pattern pattern_from_json(const json& j);

// Multiplier JSON: {"n", "d", "pairs": [{"x", "y", "block"}, ...]}; only pairs
// with x <= y are emitted, mirrors are derived by adjoint on read.
json to_json(const multiplier::PartialBlockMultiplier& phi);
json to_json(const multiplier::BlockMultiplier& phi);
multiplier::PartialBlockMultiplier multiplier_from_json(const json& j);

json to_json(const multiplier::ScalarKernel& k);
multiplier::ScalarKernel kernel_from_json(const json& j);

json to_json(const completion::CompletionResult& res);
json to_json(const completion::GramFactorization& f);
completion::GramFactorization gram_factorization_from_json(const json& j);
json to_json(const completion::ExtensionReport& rep);
json to_json(const completion::C4Demonstration& demo);
json to_json(const factorization::TwoSidedFactorization& f);
factorization::TwoSidedFactorization factorization_from_json(const json& j);
json to_json(const cones::ConeEquivalenceReport& rep);

// Parse with line/field diagnostics folded into the thrown Error.
json load_json_file(const std::string& path);

// Temp file plus rename, so partial output is never observed.
void write_json_file(const std::string& path, const json& j);

std::string dump(const json& j);

}  // namespace opschur::io
