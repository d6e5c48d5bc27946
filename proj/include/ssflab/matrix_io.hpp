#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ssflab/hermitian.hpp"

namespace ssflab {

/// Matrix documents:
///   {"n": 2, "entries": [[[re, im], [re, im]], [[re, im], [re, im]]]}
///   {"diag": [r1, ..., rn]}
/// Entries may also be plain numbers (imaginary part 0).
/// Malformed documents raise InvalidInput whose message starts with the JSON
/// path of the offending element.
ComplexMatrix parse_matrix(const nlohmann::json& doc, const std::string& path = "$");
HermitianOperator parse_hermitian(const nlohmann::json& doc, const std::string& path = "$");

nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json hermitian_to_json(const HermitianOperator& h);

/// Operator documents bundle named matrices: {"A": <matrix>, "B": <matrix>, "C": <matrix>}.
struct OperatorDocument {
  HermitianOperator a;
  HermitianOperator b;
  std::optional<HermitianOperator> c;
};

OperatorDocument parse_operator_document(const nlohmann::json& doc);
nlohmann::json pair_to_json(const OperatorPair& pair);

/// Reads and parses a JSON file; parse errors become InvalidInput with the
/// byte offset.
nlohmann::json read_json_file(const std::string& filename);

}  // namespace ssflab
