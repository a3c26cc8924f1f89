#pragma once

#include <string>

#include "pnindex/convexity.hpp"
#include "pnindex/homopoly.hpp"
#include "pnindex/index_search.hpp"
#include "pnindex/norms.hpp"
#include "pnindex/numrange.hpp"

namespace pnindex {

/// JSON text layer. Output field order is fixed, results carry "schema": 1,
/// and numbers round-trip exactly, so identical inputs give identical bytes.
/// Parse failures throw std::invalid_argument naming the offending field.

std::string norm_to_json(const Norm& norm);
Norm norm_from_json(const std::string& text);

std::string poly_to_json(const VectorHomoPoly& P);
VectorHomoPoly poly_from_json(const std::string& text);

std::string radius_to_json(const RadiusEstimate& est);
std::string zero_check_to_json(const ZeroCheck& chk, double tol);
std::string index_to_json(const IndexEstimate& est, const Norm& norm);
std::string min_degree_to_json(const MinDegreeResult& res, const Norm& norm);
std::string monotonicity_to_json(const MonotonicityReport& rep, const Norm& norm);
std::string convexity_to_json(const ConvexityReport& rep);
std::string beta_to_json(const BetaClassification& cls);
std::string eps_to_json(const EpsCounterexample& ex);
std::string samples_to_json(const std::vector<double>& samples);

} // namespace pnindex
