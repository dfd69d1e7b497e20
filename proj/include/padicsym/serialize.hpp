#pragma once

// JSON encodings used by the CLI. Probabilities are exact rationals or
// intervals; floats appear only in sampling reports.

#include <json.hpp>

#include <string>

#include "padicsym/canonical.hpp"
#include "padicsym/localglobal.hpp"
#include "padicsym/montecarlo.hpp"
#include "padicsym/oracle.hpp"
#include "padicsym/rational.hpp"

namespace padicsym {

using Json = nlohmann::ordered_json;

Json to_json(const BigRational& q);
Json to_json(const Interval& iv);
Json to_json(const SymClass& cls);
Json to_json(const QpClass& c);
Json to_json(const TallyTable& t);
Json to_json(const GofReport& r);
Json to_json(const EulerProductResult& r);
Json to_json(const DecimalInterval& iv);
Json matrix_json(const ResidueMatrix& A);

/// Accepts [[..],[..]] or {"matrix": [[..],[..]]}. Entries may be negative.
ResidueMatrix parse_matrix(const std::string& text);

}  // namespace padicsym
