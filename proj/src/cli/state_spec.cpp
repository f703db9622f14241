#include "cli/state_spec.hpp"

#include "spinlab/errors.hpp"
#include "spinlab/squeezing.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace spinlab::cli {

namespace {

std::string located(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
}

} // namespace

ParseError::ParseError(const std::string& what, int line, int column)
    : std::invalid_argument(located(what, line, column)), line_(line), column_(column) {}

const char* to_string(StateKind k) {
    switch (k) {
    case StateKind::fock: return "fock";
    case StateKind::gauss: return "gauss";
    case StateKind::flatpeak: return "flatpeak";
    case StateKind::mixture: return "mixture";
    case StateKind::amplitudes: return "amplitudes";
    }
    return "unknown";
}

namespace {

struct Field {
    std::string_view text;
    int column; // 1-based
};

std::vector<Field> split(Field f, char sep, std::size_t max_parts = std::string_view::npos) {
    std::vector<Field> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = out.size() + 1 == max_parts ? std::string_view::npos : f.text.find(sep, start);
        out.push_back({f.text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start),
                       f.column + static_cast<int>(start)});
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

Field trim(Field f) {
    while (!f.text.empty() && std::isspace(static_cast<unsigned char>(f.text.front()))) {
        f.text.remove_prefix(1);
        ++f.column;
    }
    while (!f.text.empty() && std::isspace(static_cast<unsigned char>(f.text.back()))) f.text.remove_suffix(1);
    return f;
}

[[noreturn]] void fail(const std::string& ctx, const std::string& msg, int column) {
    throw ParseError(ctx + ": " + msg, 1, column);
}

double parse_double(Field f, const std::string& ctx, const char* what) {
    f = trim(f);
    std::string_view t = f.text;
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        fail(ctx, std::string("expected a number for ") + what + ", got '" + std::string(f.text) + "'", f.column);
    return v;
}

int parse_int(Field f, const std::string& ctx, const char* what) {
    f = trim(f);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
    if (f.text.empty() || ec != std::errc() || ptr != f.text.data() + f.text.size())
        fail(ctx, std::string("expected an integer for ") + what + ", got '" + std::string(f.text) + "'", f.column);
    return v;
}

std::vector<cplx> parse_amplitude_list(Field f, const std::string& ctx) {
    std::vector<cplx> out;
    std::size_t i = 0;
    const std::string_view t = f.text;
    auto skip_ws = [&] {
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    };
    auto col = [&] { return f.column + static_cast<int>(i); };
    while (true) {
        skip_ws();
        if (i >= t.size() || t[i] != '[') fail(ctx, "expected '[' opening an amplitude pair", col());
        const std::size_t close = t.find(']', i);
        if (close == std::string_view::npos) fail(ctx, "unterminated amplitude pair", col());
        const Field inner{t.substr(i + 1, close - i - 1), col() + 1};
        const std::vector<Field> parts = split(inner, ',');
        if (parts.size() != 2) fail(ctx, "amplitude pair needs exactly [re,im]", inner.column);
        out.emplace_back(parse_double(parts[0], ctx, "re"), parse_double(parts[1], ctx, "im"));
        i = close + 1;
        skip_ws();
        if (i == t.size()) break;
        if (t[i] != ',') fail(ctx, "expected ',' between amplitude pairs", col());
        ++i;
    }
    return out;
}

} // namespace

StateSpec parse_state_spec(std::string_view text) {
    const std::string ctx = "--state";
    const std::vector<Field> head = split({text, 1}, ':', 3);
    const Field kind = trim(head[0]);
    StateSpec s;
    auto need = [&](std::size_t parts, const char* usage) {
        if (head.size() != parts) fail(ctx, std::string("expected ") + usage, head.back().column);
    };

    if (kind.text == "fock") s.kind = StateKind::fock;
    else if (kind.text == "gauss") s.kind = StateKind::gauss;
    else if (kind.text == "flatpeak") s.kind = StateKind::flatpeak;
    else if (kind.text == "mixture") s.kind = StateKind::mixture;
    else if (kind.text == "amplitudes") s.kind = StateKind::amplitudes;
    else fail(ctx, "unknown state kind '" + std::string(kind.text) +
                       "' (fock, gauss, flatpeak, mixture, amplitudes)", kind.column);

    if (head.size() < 2) fail(ctx, "missing particle count", static_cast<int>(text.size()) + 1);
    s.n = parse_int(head[1], ctx, "n");
    const std::vector<Field> rest = head.size() == 3 ? split(head[2], ':') : std::vector<Field>{};

    switch (s.kind) {
    case StateKind::fock:
        if (rest.size() != 1) fail(ctx, "expected fock:n:k", head.back().column);
        s.k = parse_int(rest[0], ctx, "k");
        break;
    case StateKind::gauss:
        if (rest.size() != 2) fail(ctx, "expected gauss:n:l:sigma", head.back().column);
        s.k = parse_int(rest[0], ctx, "l");
        s.sigma = parse_double(rest[1], ctx, "sigma");
        break;
    case StateKind::flatpeak:
        if (rest.size() != 1) fail(ctx, "expected flatpeak:n:p", head.back().column);
        s.p = parse_double(rest[0], ctx, "p");
        break;
    case StateKind::mixture: {
        need(3, "mixture:n:uniform or mixture:n:p0,p1,...");
        const Field body = trim(head[2]);
        if (body.text == "uniform") {
            s.uniform = true;
            break;
        }
        for (const Field& f : split(body, ',')) s.probabilities.push_back(parse_double(f, ctx, "probability"));
        break;
    }
    case StateKind::amplitudes:
        need(3, "amplitudes:n:[re,im],...");
        s.amplitudes = parse_amplitude_list(head[2], ctx);
        break;
    }
    return s;
}

std::string StateSpec::canonical() const {
    std::string out = std::string(cli::to_string(kind)) + ":" + std::to_string(n) + ":";
    switch (kind) {
    case StateKind::fock: out += std::to_string(k); break;
    case StateKind::gauss: out += std::to_string(k) + ":" + format_double(sigma); break;
    case StateKind::flatpeak: out += format_double(p); break;
    case StateKind::mixture:
        if (uniform) {
            out += "uniform";
            break;
        }
        for (std::size_t i = 0; i < probabilities.size(); ++i) out += (i ? "," : "") + format_double(probabilities[i]);
        break;
    case StateKind::amplitudes:
        for (std::size_t i = 0; i < amplitudes.size(); ++i)
            out += std::string(i ? "," : "") + "[" + format_double(amplitudes[i].real()) + "," +
                   format_double(amplitudes[i].imag()) + "]";
        break;
    }
    return out;
}

Json StateSpec::to_json() const {
    Json j;
    j["v"] = 1;
    j["kind"] = cli::to_string(kind);
    j["n"] = n;
    switch (kind) {
    case StateKind::fock: j["k"] = k; break;
    case StateKind::gauss:
        j["l"] = k;
        j["sigma"] = sigma;
        break;
    case StateKind::flatpeak: j["p"] = p; break;
    case StateKind::mixture:
        if (uniform)
            j["uniform"] = true;
        else
            j["probabilities"] = probabilities;
        break;
    case StateKind::amplitudes: {
        Json a = Json::array();
        for (const cplx& c : amplitudes) a.push_back({c.real(), c.imag()});
        j["amplitudes"] = std::move(a);
        break;
    }
    }
    return j;
}

namespace {

[[noreturn]] void schema_fail(const std::string& msg) { throw ParseError("state file: " + msg, 1, 1); }

template <typename T>
T field(const Json& j, const char* key) {
    if (!j.contains(key)) schema_fail(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        schema_fail(std::string("field '") + key + "' has the wrong type");
    }
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

StateSpec state_from_json(const Json& j) {
    if (!j.is_object()) schema_fail("top level must be an object");
    if (field<int>(j, "v") != 1) schema_fail("unsupported version; expected \"v\": 1");
    const std::string kind = field<std::string>(j, "kind");
    StateSpec s;
    s.n = field<int>(j, "n");
    if (kind == "fock") {
        s.kind = StateKind::fock;
        s.k = field<int>(j, "k");
    } else if (kind == "gauss") {
        s.kind = StateKind::gauss;
        s.k = field<int>(j, "l");
        s.sigma = field<double>(j, "sigma");
    } else if (kind == "flatpeak") {
        s.kind = StateKind::flatpeak;
        s.p = field<double>(j, "p");
    } else if (kind == "mixture") {
        s.kind = StateKind::mixture;
        if (j.contains("uniform") && field<bool>(j, "uniform"))
            s.uniform = true;
        else
            s.probabilities = field<std::vector<double>>(j, "probabilities");
    } else if (kind == "amplitudes") {
        s.kind = StateKind::amplitudes;
        for (const auto& pair : field<std::vector<std::vector<double>>>(j, "amplitudes")) {
            if (pair.size() != 2) schema_fail("each amplitude must be [re, im]");
            s.amplitudes.emplace_back(pair[0], pair[1]);
        }
    } else {
        schema_fail("unknown kind '" + kind + "'");
    }
    return s;
}

StateSpec parse_state_file_text(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        throw ParseError("state file: malformed JSON", line, col);
    }
    return state_from_json(j);
}

StateSpec read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("--state-file: cannot open '" + path + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state_file_text(buf.str());
}

State realize(const StateSpec& s) {
    if (s.n < 0 || s.n > max_particles())
        throw DomainError("state: n must lie in 0.." + std::to_string(max_particles()));
    switch (s.kind) {
    case StateKind::fock: return number_state(s.n, s.k);
    case StateKind::gauss: return gaussian_state(s.n, s.k, s.sigma);
    case StateKind::flatpeak: return flat_peak_state(s.n, s.p);
    case StateKind::mixture:
        if (s.uniform) return DiagonalMixture::uniform(s.n);
        return DiagonalMixture(s.n, s.probabilities);
    case StateKind::amplitudes: {
        if (static_cast<int>(s.amplitudes.size()) != s.n + 1)
            throw DomainError("state: amplitudes needs n+1 = " + std::to_string(s.n + 1) + " entries");
        CVector a(s.n + 1);
        for (int i = 0; i <= s.n; ++i) a(i) = s.amplitudes[static_cast<std::size_t>(i)];
        return superposition(s.n, a);
    }
    }
    throw DomainError("state: unknown kind");
}

DensityOperator as_density(const State& s) {
    if (const auto* p = std::get_if<PureState>(&s)) return DensityOperator::from_pure(*p);
    return mixture_density(std::get<DiagonalMixture>(s));
}

int particle_count(const State& s) {
    return std::visit([](const auto& v) { return v.n(); }, s);
}

namespace {

std::optional<Direction> axis_name(std::string_view t) {
    double sign = 1.0;
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
        if (t.front() == '-') sign = -1.0;
        t.remove_prefix(1);
    }
    if (t == "x") return Direction(sign, 0.0, 0.0);
    if (t == "y") return Direction(0.0, sign, 0.0);
    if (t == "z") return Direction(0.0, 0.0, sign);
    return std::nullopt;
}

Direction parse_vector(Field f, const std::string& ctx, std::ostream& warn) {
    f = trim(f);
    if (const auto a = axis_name(f.text)) return *a;
    const std::vector<Field> parts = split(f, ',');
    if (parts.size() != 3)
        fail(ctx, "expected an axis name or 3 comma-separated components, got " + std::to_string(parts.size()) +
                      " component" + (parts.size() == 1 ? "" : "s"),
             f.column);
    const double x = parse_double(parts[0], ctx, "x"), y = parse_double(parts[1], ctx, "y"),
                 z = parse_double(parts[2], ctx, "z");
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm == 0.0) fail(ctx, "zero vector", f.column);
    if (std::abs(norm - 1.0) > 1e-6) warn << "warning: " << ctx << " has norm " << format_double(norm) << "; normalized\n";
    return Direction::normalized(x, y, z);
}

} // namespace

Direction parse_direction(std::string_view text, std::string_view flag, std::ostream& warn) {
    return parse_vector({text, 1}, std::string(flag), warn);
}

OrthogonalTriplet parse_triplet(std::string_view text, std::string_view flag, std::ostream& warn) {
    const std::string ctx(flag);
    const Field all = trim({text, 1});
    if (all.text == "auto-z") return OrthogonalTriplet::standard();

    std::vector<Direction> dirs;
    if (all.text.find(';') == std::string_view::npos) {
        const std::vector<Field> names = split(all, ',');
        if (names.size() != 3) fail(ctx, "expected auto-z, three axis names, or vectors separated by ';'", all.column);
        for (const Field& nf : names) {
            const auto a = axis_name(trim(nf).text);
            if (!a) fail(ctx, "unknown axis '" + std::string(trim(nf).text) + "'", nf.column);
            dirs.push_back(*a);
        }
    } else {
        for (const Field& vf : split(all, ';')) dirs.push_back(parse_vector(vf, ctx, warn));
        if (dirs.size() != 2 && dirs.size() != 3) fail(ctx, "expected 2 or 3 vectors", all.column);
    }
    try {
        if (dirs.size() == 2) return OrthogonalTriplet::complete(dirs[0], dirs[1]);
        return OrthogonalTriplet(dirs[0], dirs[1], dirs[2]);
    } catch (const DomainError& e) {
        fail(ctx, e.what(), all.column);
    }
}

Json direction_json(const Direction& d) { return Json::array({d.x(), d.y(), d.z()}); }

Json triplet_json(const OrthogonalTriplet& t) {
    return Json::array({direction_json(t.n1()), direction_json(t.n2()), direction_json(t.n3())});
}

} // namespace spinlab::cli
