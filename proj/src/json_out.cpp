#include "billiards/json_out.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace billiards {

namespace {

void write(std::ostream& out, const nlohmann::ordered_json& v, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    switch (v.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (v.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            bool first = true;
            for (const auto& [key, item] : v.items()) {
                if (!first) out << ",\n";
                first = false;
                out << pad << nlohmann::ordered_json(key).dump() << ": ";
                write(out, item, indent, depth + 1);
            }
            out << '\n' << close << '}';
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (v.empty()) {
                out << "[]";
                return;
            }
            // Short numeric arrays (points, matrix rows) stay on one line.
            const bool inline_row = v.size() <= 2 && v[0].is_number();
            out << (inline_row ? "[" : "[\n");
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i > 0) out << (inline_row ? ", " : ",\n");
                if (!inline_row) out << pad;
                write(out, v[i], indent, depth + 1);
            }
            if (!inline_row) out << '\n' << close;
            out << ']';
            return;
        }
        case nlohmann::ordered_json::value_t::number_float: {
            const double d = v.get<double>();
            if (!std::isfinite(d)) {
                out << "null";
                return;
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", d);
            out << buf;
            return;
        }
        default:
            out << v.dump();
    }
}

}  // namespace

void write_json(std::ostream& out, const nlohmann::ordered_json& value, int indent) {
    write(out, value, indent, 0);
    out << '\n';
}

}  // namespace billiards
