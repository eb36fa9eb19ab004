#include "billiards/curve_io.hpp"

#include "billiards/errors.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string_view>
#include <vector>

namespace billiards {

namespace {

double to_number(std::string_view text) {
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    while (first < last && *first == ' ') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ValidationError("malformed number '" + std::string(text) + "'");
    }
    return v;
}

std::vector<double> to_numbers(std::string_view text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(to_number(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

CurveSpec parse_preset(std::string_view name, std::string_view args) {
    if (name == "circle") {
        const auto v = to_numbers(args);
        if (v.size() != 1) throw ValidationError("circle preset takes one radius");
        return CurveSpec::circle(v[0]);
    }
    if (name == "ellipse") {
        const auto v = to_numbers(args);
        if (v.size() != 2) throw ValidationError("ellipse preset takes two semi-axes");
        return CurveSpec::ellipse(v[0], v[1]);
    }
    if (name == "fourier") {
        std::vector<std::string_view> parts;
        std::size_t start = 0;
        while (true) {
            const auto slash = args.find('/', start);
            parts.push_back(args.substr(start, slash - start));
            if (slash == std::string_view::npos) break;
            start = slash + 1;
        }
        if (parts.size() < 2 || parts.size() > 3) {
            throw ValidationError("fourier preset is fourier:A0/C1,C2,.../S1,S2,...");
        }
        return CurveSpec::support_fourier(to_number(parts[0]), to_numbers(parts[1]),
                                          parts.size() == 3 ? to_numbers(parts[2]) : std::vector<double>{});
    }
    throw ValidationError("unknown curve preset '" + std::string(name) + "'");
}

std::vector<double> number_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return {};
    const auto& arr = j.at(key);
    if (!arr.is_array()) throw ValidationError(std::string("'") + key + "' must be an array");
    std::vector<double> out;
    for (const auto& v : arr) {
        if (!v.is_number()) throw ValidationError(std::string("'") + key + "' must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

double number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ValidationError(std::string("curve file needs a numeric '") + key + "'");
    }
    return j.at(key).get<double>();
}

}  // namespace

CurveSpec curve_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw ValidationError("curve file needs a string 'kind'");
    }
    const auto kind = j.at("kind").get<std::string>();
    CurveSpec spec;
    if (kind == "ellipse") {
        spec = CurveSpec::ellipse(number(j, "a"), number(j, "b"));
    } else if (kind == "support_fourier") {
        spec = CurveSpec::support_fourier(number(j, "a0"), number_list(j, "cos"), number_list(j, "sin"));
    } else {
        throw ValidationError("unknown curve kind '" + kind + "'");
    }
    if (j.contains("transform")) {
        const auto& t = j.at("transform");
        if (!t.is_array() || t.size() != 2 || !t[0].is_array() || !t[1].is_array() || t[0].size() != 2 ||
            t[1].size() != 2) {
            throw ValidationError("'transform' must be a 2x2 array");
        }
        Mat2 m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                if (!t[r][c].is_number()) throw ValidationError("'transform' must hold numbers");
                m(r, c) = t[r][c].get<double>();
            }
        spec = spec.transformed(m);
    }
    validate(spec);
    return spec;
}

nlohmann::ordered_json curve_to_json(const CurveSpec& spec) {
    nlohmann::ordered_json j;
    if (spec.kind == CurveKind::Ellipse) {
        j["kind"] = "ellipse";
        j["a"] = spec.a;
        j["b"] = spec.b;
    } else {
        j["kind"] = "support_fourier";
        j["a0"] = spec.a0;
        j["cos"] = spec.cos_coeffs;
        j["sin"] = spec.sin_coeffs;
    }
    if (spec.transform != Mat2::Identity()) {
        j["transform"] = {{spec.transform(0, 0), spec.transform(0, 1)},
                          {spec.transform(1, 0), spec.transform(1, 1)}};
    }
    return j;
}

CurveSpec parse_curve(const std::string& source) {
    const auto colon = source.find(':');
    if (colon != std::string::npos && !std::filesystem::exists(source)) {
        auto spec = parse_preset(std::string_view(source).substr(0, colon),
                                 std::string_view(source).substr(colon + 1));
        validate(spec);
        return spec;
    }
    std::ifstream in(source);
    if (!in) throw ValidationError("cannot open curve file '" + source + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("malformed curve file '" + source + "': " + e.what());
    }
    return curve_from_json(j);
}

}  // namespace billiards
