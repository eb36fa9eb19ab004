#pragma once

#include "billiards/curve_model.hpp"

#include <json.hpp>
#include <string>

namespace billiards {

/// Curve from a preset string or a JSON file path.
///
/// Presets:
///   circle:R
///   ellipse:A,B
///   fourier:A0/C1,C2,.../S1,S2,...   (support function, sine part optional)
/// File format:
///   {"kind": "ellipse", "a": 2.0, "b": 1.0}
///   {"kind": "support_fourier", "a0": 1.0, "cos": [0, 0, 0.05], "sin": []}
/// where cos[i] and sin[i] multiply harmonic i + 1. Either form accepts an
/// optional "transform": [[m11, m12], [m21, m22]] with positive determinant.
CurveSpec parse_curve(const std::string& source);

CurveSpec curve_from_json(const nlohmann::json& j);
nlohmann::ordered_json curve_to_json(const CurveSpec& spec);

}  // namespace billiards
