#pragma once

#include <string>

#include "json.hpp"

#include "cheblab/chebyshev.hpp"
#include "cheblab/lemniscate.hpp"
#include "cheblab/potential.hpp"
#include "cheblab/realset.hpp"
#include "cheblab/widom.hpp"

namespace cheblab {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Serializes with every floating value printed as %.17g; non-finite values
/// become the strings "inf", "-inf" and "nan". indent < 0 gives one line.
std::string dump(const json& j, int indent = 2);

/// Reads a number written by dump(), including the non-finite spellings.
double get_double(const json& j);

void to_json(json& j, const Polynomial& p);
void from_json(const json& j, Polynomial& p);

/// {"bands": [[a, b], ...]}
json to_json_value(const IntervalUnion& e);
IntervalUnion interval_union_from_json(const json& j);

json to_json_value(const ChebyshevSolution& s);
ChebyshevSolution chebyshev_solution_from_json(const json& j);

void to_json(json& j, const GapCritical& g);
void from_json(const json& j, GapCritical& g);

void to_json(json& j, const CapacitySequence& s);
void from_json(const json& j, CapacitySequence& s);

void to_json(json& j, const BoundStatus& b);
void from_json(const json& j, BoundStatus& b);

void to_json(json& j, const WidomReport& r);
void from_json(const json& j, WidomReport& r);

void to_json(json& j, const RealSaturation& r);
void from_json(const json& j, RealSaturation& r);

void to_json(json& j, const IdentityCheck& r);
void from_json(const json& j, IdentityCheck& r);

void to_json(json& j, const TwoBandResult& r);
void from_json(const json& j, TwoBandResult& r);

void to_json(json& j, const LemniscateCurve& c);
void from_json(const json& j, LemniscateCurve& c);

void to_json(json& j, const ComplexSaturation& s);
void from_json(const json& j, ComplexSaturation& s);

void to_json(json& j, const AverageResult& r);
void from_json(const json& j, AverageResult& r);

json to_json_value(const TransferReport& r);
TransferReport transfer_report_from_json(const json& j);

/// Top-level document: {"schema": 1, "command": ..., "result": ...}.
json envelope(const std::string& command, json result);

}  // namespace cheblab
