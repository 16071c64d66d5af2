#pragma once

#include "hypersect/characterize.hpp"

#include <json.hpp>

#include <string>

namespace hypersect {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Vec& v);
Json to_json(const Mat& m);
Json to_json(const QuadratureConfig& cfg);
Json to_json(const IntegralValue& v);
Json to_json(const SurfacePoint& p);
Json to_json(const SectionSpec& s);
Json to_json(const SectionMeasure& m);
Json to_json(const LimitEstimate& e);
Json to_json(const HessianFactor& f);
Json to_json(const ScanReport& r);
Json to_json(const CurvatureInference& c);
Json to_json(const Classification& c);
Json to_json(const MeanValueReport& r);
Json to_json(const UTransformCheck& c);

/// Drops the fields that legitimately differ between identical runs.
Json strip_volatile(Json report);

std::string utc_timestamp();

}  // namespace hypersect
