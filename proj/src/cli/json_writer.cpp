#include "cli/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace spinlab::cli {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void indent(std::ostream& os, int depth) {
    for (int i = 0; i < depth; ++i) os << "  ";
}

bool is_scalar_array(const Json& v) {
    for (const auto& e : v)
        if (e.is_structured()) return false;
    return true;
}

void write(std::ostream& os, const Json& v, int depth) {
    switch (v.type()) {
    case Json::value_t::object: {
        if (v.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) os << ",\n";
            first = false;
            indent(os, depth + 1);
            os << Json(it.key()).dump() << ": ";
            write(os, it.value(), depth + 1);
        }
        os << "\n";
        indent(os, depth);
        os << "}";
        return;
    }
    case Json::value_t::array: {
        // short scalar arrays stay on one line
        if (is_scalar_array(v)) {
            os << "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) os << ", ";
                write(os, v[i], depth);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ",\n";
            indent(os, depth + 1);
            write(os, v[i], depth + 1);
        }
        os << "\n";
        indent(os, depth);
        os << "]";
        return;
    }
    case Json::value_t::number_float: {
        const double d = v.get<double>();
        if (std::isfinite(d))
            os << format_double(d);
        else
            os << '"' << format_double(d) << '"';
        return;
    }
    default:
        os << v.dump();
    }
}

} // namespace

void write_json(std::ostream& os, const Json& value) {
    write(os, value, 0);
    os << "\n";
}

std::string to_json_string(const Json& value) {
    std::ostringstream os;
    write_json(os, value);
    return os.str();
}

Json optional_number(const std::optional<double>& v) {
    if (v) return *v;
    return "undefined";
}

} // namespace spinlab::cli
