#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dynforge/certify.hpp"
#include "dynforge/dynatomic.hpp"
#include "dynforge/julia.hpp"

namespace dynforge {

// JSON renderers for report sections. Every function returns compact JSON
// with keys in a fixed order, so identical inputs serialize to identical
// bytes. Coefficients appear as element codes next to a field descriptor;
// polynomials as strings in the z, t notation of BiPoly::str.

inline constexpr const char* kSchemaVersion = "1";

std::string json_quote(const std::string& s);

std::string json_family(const RatFamily& fam);
std::string json_certificate(const CertReport& cert);
std::string json_constants(const FamilyConstants& fc);
std::string json_series(const PuiseuxSeries& x);
std::string json_points(const std::vector<LabeledPoint>& pts);
std::string json_factor(const DynatomicFactorReport& rep);
std::string json_factor_table(const std::vector<DynatomicFactorReport>& reps);

// Assemble the document: {"schema": ..., sections...} with the sections in
// the given order. Section values must themselves be valid JSON.
std::string json_envelope(
    const std::vector<std::pair<std::string, std::string>>& sections);

}  // namespace dynforge
