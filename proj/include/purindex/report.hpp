#pragma once

#include <string>

#include "json.hpp"
#include "purindex/oracle.hpp"
#include "purindex/pure.hpp"

namespace purindex {

// JSON renderers. Every number is emitted as a decimal string so that
// arbitrary-precision values survive any JSON reader untouched.
nlohmann::ordered_json analyze_json(const AnalyzeResult& R);
nlohmann::ordered_json ore_json(const OreResult& r);
nlohmann::ordered_json order2_json(const Order2Result& r);
nlohmann::ordered_json polygon_json(const NewtonPolygon& np);
nlohmann::ordered_json oracle_json(const OracleReport& r);

// Plain-text renderers for the same data.
std::string analyze_text(const AnalyzeResult& R);
std::string ore_text(const OreResult& r);
std::string order2_text(const Order2Result& r);
std::string polygon_text(const NewtonPolygon& np);
std::string oracle_text(const OracleReport& r);

}  // namespace purindex
