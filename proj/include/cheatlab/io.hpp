#pragma once

#include <string>

#include "cheatlab/model.hpp"
#include "cheatlab/solve.hpp"

#include "json.hpp"

namespace cheatlab {

// Operator serialization: {"space":[["A",3],["B",3]], "entries":[[[re,im],...],...]}.
nlohmann::json operator_to_json(const TensorOperator& op);
TensorOperator operator_from_json(const nlohmann::json& j);

// Candidate matrices may be a bare nested array of [re,im] pairs (or plain
// numbers), or the full operator form above.
TensorOperator candidate_from_json(const nlohmann::json& j);

nlohmann::json result_to_json(const std::string& model, const std::string& backend,
                              const SolveResult& result);

// SDPA sparse (.dat-s) export of the canonical data. The comment header
// records the model identifier and the objective scaling of the block data.
std::string sdpa_export(const CanonicalProblem& p);
void sdpa_export_file(const CanonicalProblem& p, const std::string& path);

// Re-import of an exported file; spaces are synthesized, which is enough to
// solve and to compare constraint data bit-exactly.
CanonicalProblem sdpa_import(const std::string& text);
CanonicalProblem sdpa_import_file(const std::string& path);

bool canonical_equal(const CanonicalProblem& a, const CanonicalProblem& b);

}  // namespace cheatlab
