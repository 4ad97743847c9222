#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "srk/descent.hpp"
#include "srk/grank.hpp"
#include "srk/linalg.hpp"
#include "srk/poly.hpp"
#include "srk/slicerank.hpp"

namespace srk {

using json = nlohmann::ordered_json;

std::string rational_string(const mpq_class& q);

json to_json(const Matrix& M);
json to_json(const Subspace& S);
json to_json(const HomPoly& f, const std::vector<std::string>& vars);
json to_json(const TRankResult& t);
json to_json(const GRankBracket& b);
json to_json(const DescentCertificate& c);
json to_json(const BoundCheck& b);

/// Rank report: rank, witness, tests and transcript.
json slice_rank_json(const SliceRankResult& r);
/// Configuration report; `bounds` is filled when supplied.
json config_json(const SlicingConfig& cfg, const BoundsReport* bounds = nullptr);

/// Inverses used by round-trip tests and by reproducer files.
Subspace subspace_from_json(const json& j);
HomPoly poly_from_json(const json& j);

/// Aligned "key  value" rendering of a report object.
std::string render_text(const json& j);

}  // namespace srk
