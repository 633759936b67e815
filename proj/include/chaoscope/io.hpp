#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "chaos_game.hpp"
#include "cloud.hpp"
#include "gallery.hpp"
#include "ifs.hpp"
#include "report.hpp"
#include "space.hpp"

namespace chaoscope {

/// Ill-formed or unreadable input. Messages carry "source:line:" context.
struct parse_error : std::runtime_error {
    parse_error(const std::string& source, long long line, const std::string& msg)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg) {}
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shortest decimal form that parses back to the identical double.
inline std::string fmt_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw std::logic_error("fmt_double: buffer too small");
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad number '" + std::string(s) + "'");
    return x;
}

inline long long parse_int(std::string_view s) {
    long long x = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer '" + std::string(s) + "'");
    return x;
}

inline std::uint64_t parse_uint64(std::string_view s) {
    std::uint64_t x = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad unsigned integer '" + std::string(s) + "'");
    return x;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::vector<double> parse_double_list(std::string_view s, char sep) {
    std::vector<double> out;
    for (std::string_view item : split_on(s, sep)) out.push_back(parse_double(item));
    return out;
}

inline std::string join_doubles(const std::vector<double>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += fmt_double(v[i]);
    }
    return out;
}

// Sequential line access with position tracking for error context.
struct LineReader {
    std::istream& in;
    std::string source;
    long long line_no = 0;

    std::optional<std::string> next() {
        std::string line;
        if (!std::getline(in, line)) return std::nullopt;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    std::string expect() {
        auto l = next();
        if (!l) throw parse_error(source, line_no + 1, "unexpected end of input");
        return *l;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(source, line_no, msg);
    }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// space and map lines (shared by the trace and config formats)

inline std::string space_to_string(const SpaceModel& space) {
    std::string out = space_kind_name(space.kind);
    if (space.kind == SpaceKind::euclidean || space.kind == SpaceKind::sequence)
        out += " " + std::to_string(space.dim);
    return out;
}

inline SpaceModel parse_space(const std::vector<std::string_view>& tokens) {
    if (tokens.empty()) throw std::invalid_argument("missing space kind");
    std::string kind(tokens[0]);
    if (kind == "euclidean" || kind == "sequence") {
        if (tokens.size() != 2) throw std::invalid_argument(kind + " needs a dimension");
        int d = static_cast<int>(parse_int(tokens[1]));
        return kind == "euclidean" ? SpaceModel::euclidean(d) : SpaceModel::sequence(d);
    }
    if (tokens.size() != 1) throw std::invalid_argument(kind + " takes no parameters");
    if (kind == "circle") return SpaceModel::circle();
    if (kind == "projective2") return SpaceModel::projective2();
    throw std::invalid_argument("unknown space '" + kind + "'");
}

inline std::string map_to_string(const MapSpec& map) {
    switch (map.kind) {
        case MapSpec::Kind::identity: return "identity";
        case MapSpec::Kind::rotation: return "rotation " + fmt_double(map.angle);
        case MapSpec::Kind::affine:
            return "affine " + detail::join_doubles(map.matrix, " ") + " " +
                   detail::join_doubles(map.offset, " ");
        case MapSpec::Kind::projective:
            return "projective " + detail::join_doubles(map.matrix, " ");
        case MapSpec::Kind::builtin: return std::string("builtin ") + builtin_map_name(map.builtin);
    }
    throw std::logic_error("map_to_string: unknown kind");
}

inline MapSpec parse_map(const SpaceModel& space, const std::vector<std::string_view>& tokens) {
    if (tokens.empty()) throw std::invalid_argument("missing map kind");
    std::string kind(tokens[0]);
    auto numbers = [&](std::size_t want) {
        if (tokens.size() - 1 != want)
            throw std::invalid_argument(kind + ": expected " + std::to_string(want) +
                                        " numbers, got " + std::to_string(tokens.size() - 1));
        std::vector<double> v;
        for (std::size_t i = 1; i < tokens.size(); ++i) v.push_back(parse_double(tokens[i]));
        return v;
    };
    if (kind == "identity") {
        numbers(0);
        return MapSpec::identity();
    }
    if (kind == "rotation") return MapSpec::rotation(numbers(1)[0]);
    if (kind == "projective") return MapSpec::projective(numbers(9));
    if (kind == "affine") {
        std::size_t d = static_cast<std::size_t>(space.dim);
        std::vector<double> v = numbers(d * d + d);
        std::vector<double> m(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d * d));
        std::vector<double> b(v.begin() + static_cast<std::ptrdiff_t>(d * d), v.end());
        return MapSpec::affine(std::move(m), std::move(b));
    }
    if (kind == "builtin") {
        if (tokens.size() != 2) throw std::invalid_argument("builtin needs a name");
        for (BuiltinMap b : {BuiltinMap::successor_compactification, BuiltinMap::hilbert_diagonal,
                             BuiltinMap::two_arrows_1, BuiltinMap::two_arrows_2,
                             BuiltinMap::two_arrows_3})
            if (tokens[1] == builtin_map_name(b)) return MapSpec::builtin_map(b);
        throw std::invalid_argument("unknown builtin map '" + std::string(tokens[1]) + "'");
    }
    throw std::invalid_argument("unknown map kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// selection model descriptors
//   uniform | iid:w,... | cyclic:w,..;w,.. | markov:w,..;w,.. |
//   decaying:w,...@p_min[@scale]

inline std::string serialize_model(const SelectionModel& m) {
    using Kind = SelectionModel::Kind;
    switch (m.kind) {
        case Kind::iid: return "iid:" + detail::join_doubles(m.weights[0], ",");
        case Kind::cyclic:
        case Kind::markov: {
            std::string out = m.kind == Kind::cyclic ? "cyclic:" : "markov:";
            for (std::size_t i = 0; i < m.weights.size(); ++i) {
                if (i) out += ";";
                out += detail::join_doubles(m.weights[i], ",");
            }
            return out;
        }
        case Kind::decaying:
            return "decaying:" + detail::join_doubles(m.weights[0], ",") + "@" +
                   fmt_double(m.decay_floor) + "@" + fmt_double(m.decay_scale);
    }
    throw std::logic_error("serialize_model: unknown kind");
}

inline SelectionModel parse_model(std::string_view desc, int n_maps) {
    if (desc == "uniform") return SelectionModel::iid_uniform(n_maps);
    std::size_t colon = desc.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("bad model descriptor '" + std::string(desc) +
                                    "' (expected kind:params or 'uniform')");
    std::string_view kind = desc.substr(0, colon);
    std::string_view rest = desc.substr(colon + 1);
    if (kind == "iid") return SelectionModel::iid(detail::parse_double_list(rest, ','));
    if (kind == "cyclic" || kind == "markov") {
        std::vector<std::vector<double>> rows;
        for (std::string_view row : detail::split_on(rest, ';'))
            rows.push_back(detail::parse_double_list(row, ','));
        return kind == "cyclic" ? SelectionModel::cyclic(std::move(rows))
                                : SelectionModel::markov(std::move(rows));
    }
    if (kind == "decaying") {
        std::vector<std::string_view> parts = detail::split_on(rest, '@');
        if (parts.size() < 2 || parts.size() > 3)
            throw std::invalid_argument("decaying descriptor needs base@p_min[@scale]");
        std::vector<double> base = detail::parse_double_list(parts[0], ',');
        double p_min = parse_double(parts[1]);
        double c = parts.size() == 3 ? parse_double(parts[2]) : 0.0;
        return SelectionModel::decaying(std::move(base), p_min, c);
    }
    throw std::invalid_argument("unknown selection model '" + std::string(kind) + "'");
}

// ---------------------------------------------------------------------------
// point cloud files

inline void write_cloud(const PointCloud& cloud, std::ostream& out) {
    out << "chaoscope-cloud 1\n";
    out << "space " << space_to_string(cloud.space) << "\n";
    out << "resolution " << (cloud.resolution ? fmt_double(*cloud.resolution) : "exact") << "\n";
    out << "count " << cloud.points.size() << "\n";
    for (const SpacePoint& p : cloud.points) out << detail::join_doubles(p.coords, " ") << "\n";
}

inline PointCloud read_cloud(std::istream& in, const std::string& source = "<cloud>") {
    detail::LineReader r{in, source};
    if (r.expect() != "chaoscope-cloud 1") r.fail("expected header 'chaoscope-cloud 1'");
    auto space_tokens = detail::split_ws(r.expect());
    if (space_tokens.size() < 2 || space_tokens[0] != "space") r.fail("expected 'space ...'");
    SpaceModel space;
    try {
        space = parse_space({space_tokens.begin() + 1, space_tokens.end()});
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
    auto res_tokens = detail::split_ws(r.expect());
    if (res_tokens.size() != 2 || res_tokens[0] != "resolution")
        r.fail("expected 'resolution ...'");
    std::optional<double> resolution;
    if (res_tokens[1] != "exact") {
        try {
            resolution = parse_double(res_tokens[1]);
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        }
    }
    auto count_tokens = detail::split_ws(r.expect());
    if (count_tokens.size() != 2 || count_tokens[0] != "count") r.fail("expected 'count N'");
    long long count = 0;
    try {
        count = parse_int(count_tokens[1]);
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
    if (count < 1) r.fail("count must be >= 1");
    std::vector<SpacePoint> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
        auto tokens = detail::split_ws(r.expect());
        std::vector<double> coords;
        try {
            for (auto t : tokens) coords.push_back(parse_double(t));
            pts.push_back(canonicalize(space, std::move(coords)));
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        }
    }
    return PointCloud::from_points(space, std::move(pts), resolution);
}

// ---------------------------------------------------------------------------
// orbit trace files

inline void write_trace(const OrbitRecord& orbit, std::ostream& out) {
    out << "chaoscope-trace 1\n";
    out << "system " << (orbit.system.name.empty() ? "custom" : orbit.system.name) << "\n";
    out << "space " << space_to_string(orbit.system.space) << "\n";
    for (const MapSpec& m : orbit.system.maps) out << "map " << map_to_string(m) << "\n";
    out << "model " << serialize_model(orbit.model) << "\n";
    out << "rng " << orbit.rng_algorithm << "\n";
    out << "seed " << orbit.seed << "\n";
    out << "x0 " << detail::join_doubles(orbit.x0.coords, " ") << "\n";
    out << "steps " << orbit.indices.size() << "\n";
    // Map indices in the trace are 1-based, matching the descriptor order.
    std::string buf;
    for (std::size_t k = 0; k < orbit.indices.size(); ++k) {
        buf += std::to_string(k + 1);
        buf += ' ';
        buf += std::to_string(orbit.indices[k] + 1);
        buf += ' ';
        buf += detail::join_doubles(orbit.points[k + 1].coords, " ");
        buf += '\n';
        if (buf.size() > (1u << 20)) {
            out << buf;
            buf.clear();
        }
    }
    out << buf;
}

inline OrbitRecord read_trace(std::istream& in, const std::string& source = "<trace>") {
    detail::LineReader r{in, source};
    if (r.expect() != "chaoscope-trace 1") r.fail("expected header 'chaoscope-trace 1'");
    auto field = [&](const char* key) {
        auto line = r.expect();
        auto sp = line.find(' ');
        if (sp == std::string::npos || line.substr(0, sp) != key)
            r.fail("expected '" + std::string(key) + " ...'");
        return line.substr(sp + 1);
    };
    std::string name = field("system");
    SpaceModel space;
    try {
        auto tokens = detail::split_ws(field("space"));
        space = parse_space(tokens);
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
    std::vector<MapSpec> maps;
    std::string pending;
    while (true) {
        auto line = r.expect();
        if (line.rfind("map ", 0) != 0) {
            pending = line;
            break;
        }
        try {
            auto tokens = detail::split_ws(std::string_view(line).substr(4));
            maps.push_back(parse_map(space, tokens));
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        }
    }
    if (maps.empty()) r.fail("trace declares no maps");
    auto pending_field = [&](const char* key) {
        auto sp = pending.find(' ');
        if (sp == std::string::npos || pending.substr(0, sp) != key)
            r.fail("expected '" + std::string(key) + " ...'");
        std::string value = pending.substr(sp + 1);
        return value;
    };
    std::string model_desc = pending_field("model");
    SelectionModel model = SelectionModel::iid_uniform(1);
    try {
        model = parse_model(model_desc, static_cast<int>(maps.size()));
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
    pending = r.expect();
    std::string rng = pending_field("rng");
    if (rng != rng_algorithm_id) r.fail("unsupported rng '" + rng + "'");
    pending = r.expect();
    std::string seed_text = pending_field("seed");
    pending = r.expect();
    std::string x0_text = pending_field("x0");
    pending = r.expect();
    std::string steps_text = pending_field("steps");
    std::uint64_t seed = 0;
    SpacePoint x0;
    long long steps = 0;
    try {
        seed = parse_uint64(seed_text);
        std::vector<double> coords;
        for (auto t : detail::split_ws(x0_text)) coords.push_back(parse_double(t));
        x0 = canonicalize(space, std::move(coords));
        steps = parse_int(steps_text);
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
    if (steps < 0) r.fail("steps must be >= 0");
    IFSSystem system(space, std::move(maps), name);
    if (model.n_maps != static_cast<int>(system.maps.size()))
        r.fail("model arity does not match map count");
    OrbitRecord orbit{std::move(system), x0, std::move(model), seed, rng, {}, {}};
    orbit.points.push_back(orbit.x0);
    orbit.indices.reserve(static_cast<std::size_t>(steps));
    for (long long k = 1; k <= steps; ++k) {
        auto tokens = detail::split_ws(r.expect());
        if (tokens.size() < 3) r.fail("expected 'k sigma coords...'");
        try {
            if (parse_int(tokens[0]) != k) r.fail("step lines out of order");
            long long sigma = parse_int(tokens[1]);
            if (sigma < 1 || sigma > static_cast<long long>(orbit.system.maps.size()))
                r.fail("map index out of range");
            std::vector<double> coords;
            for (std::size_t i = 2; i < tokens.size(); ++i)
                coords.push_back(parse_double(tokens[i]));
            orbit.indices.push_back(static_cast<int>(sigma - 1));
            orbit.points.push_back(canonicalize(space, std::move(coords)));
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        }
    }
    return orbit;
}

// ---------------------------------------------------------------------------
// reports and basin verdicts

inline std::string report_record(const ConvergenceReport& rep) {
    std::string out = "REPORT tol=" + fmt_double(rep.tol);
    out += " converged=";
    out += rep.converged ? "1" : "0";
    out += " ladder=";
    for (std::size_t i = 0; i < rep.ladder.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(rep.ladder[i].k) + ":" + fmt_double(rep.ladder[i].dh);
    }
    out += " reference=" + rep.reference;
    return out;
}

inline void write_report(const ConvergenceReport& rep, std::ostream& out) {
    out << "chaoscope-report 1\n";
    out << "reference " << rep.reference << "\n";
    out << "tol " << fmt_double(rep.tol) << "\n";
    out << "converged " << (rep.converged ? "true" : "false") << "\n";
    out << "entries " << rep.ladder.size() << "\n";
    for (const LadderEntry& e : rep.ladder)
        out << "entry " << e.k << " " << fmt_double(e.dh) << "\n";
    out << "record " << report_record(rep) << "\n";
}

inline std::string basin_record(const BasinVerdict& v) {
    std::string out = "BASIN probe=" + detail::join_doubles(v.probe.coords, ",");
    out += " outcome=";
    out += basin_outcome_name(v.outcome);
    out += " k=" + std::to_string(v.k_reached);
    out += " dh=" + fmt_double(v.final_dh);
    return out;
}

inline void write_basin_table(const std::vector<BasinVerdict>& verdicts, std::ostream& out) {
    out << "chaoscope-basin 1\n";
    out << "count " << verdicts.size() << "\n";
    for (const BasinVerdict& v : verdicts) out << basin_record(v) << "\n";
}

// ---------------------------------------------------------------------------
// custom system / run configuration files

/// A custom system plus optional run defaults, as read from a config file.
/// Field order in the file: name, space, map+ first; remaining keys follow
/// in any order, each at most once.
struct SystemConfig {
    std::string name = "custom";
    std::optional<SpaceModel> space;
    std::vector<MapSpec> maps;
    std::optional<std::vector<double>> x0;
    std::optional<long long> steps;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> model;
    std::optional<std::vector<long long>> burnin;
    std::optional<double> eps;
    std::optional<double> tol;

    IFSSystem build_system() const {
        if (!space) throw std::invalid_argument("config declares no space");
        return IFSSystem(*space, maps, name);
    }

    bool operator==(const SystemConfig&) const = default;
};

inline SystemConfig parse_config(std::istream& in, const std::string& source = "<config>") {
    detail::LineReader r{in, source};
    SystemConfig cfg;
    bool saw_name = false, saw_model = false;
    while (auto maybe_line = r.next()) {
        std::string line = *maybe_line;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto tokens = detail::split_ws(line);
        if (tokens.empty()) continue;
        std::string key(tokens[0]);
        std::vector<std::string_view> args(tokens.begin() + 1, tokens.end());
        try {
            if (key == "name") {
                if (saw_name) r.fail("duplicate 'name'");
                if (args.size() != 1) r.fail("name must be a single token");
                cfg.name = std::string(args[0]);
                saw_name = true;
            } else if (key == "space") {
                if (cfg.space) r.fail("duplicate 'space'");
                cfg.space = parse_space(args);
            } else if (key == "map") {
                if (!cfg.space) r.fail("'map' before 'space'");
                cfg.maps.push_back(parse_map(*cfg.space, args));
            } else if (key == "x0") {
                if (cfg.x0) r.fail("duplicate 'x0'");
                std::vector<double> coords;
                for (auto t : args) coords.push_back(parse_double(t));
                cfg.x0 = std::move(coords);
            } else if (key == "steps") {
                if (cfg.steps) r.fail("duplicate 'steps'");
                if (args.size() != 1) r.fail("steps takes one integer");
                cfg.steps = parse_int(args[0]);
            } else if (key == "seed") {
                if (cfg.seed) r.fail("duplicate 'seed'");
                if (args.size() != 1) r.fail("seed takes one integer");
                cfg.seed = parse_uint64(args[0]);
            } else if (key == "model") {
                if (saw_model) r.fail("duplicate 'model'");
                if (args.size() != 1) r.fail("model takes one descriptor");
                cfg.model = std::string(args[0]);
                saw_model = true;
            } else if (key == "burnin") {
                if (cfg.burnin) r.fail("duplicate 'burnin'");
                if (args.empty()) r.fail("burnin needs at least one value");
                std::vector<long long> ladder;
                for (auto t : args) ladder.push_back(parse_int(t));
                cfg.burnin = std::move(ladder);
            } else if (key == "eps") {
                if (cfg.eps) r.fail("duplicate 'eps'");
                if (args.size() != 1) r.fail("eps takes one number");
                cfg.eps = parse_double(args[0]);
            } else if (key == "tol") {
                if (cfg.tol) r.fail("duplicate 'tol'");
                if (args.size() != 1) r.fail("tol takes one number");
                cfg.tol = parse_double(args[0]);
            } else {
                r.fail("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        }
    }
    if (!cfg.space) throw parse_error(source, r.line_no, "config declares no space");
    if (cfg.maps.empty()) throw parse_error(source, r.line_no, "config declares no maps");
    try {
        cfg.build_system();  // surface map/space incompatibilities now
        if (cfg.model) parse_model(*cfg.model, static_cast<int>(cfg.maps.size()));
    } catch (const std::invalid_argument& e) {
        throw parse_error(source, r.line_no, e.what());
    }
    return cfg;
}

inline std::string serialize_config(const SystemConfig& cfg) {
    std::string out;
    out += "name " + cfg.name + "\n";
    if (cfg.space) out += "space " + space_to_string(*cfg.space) + "\n";
    for (const MapSpec& m : cfg.maps) out += "map " + map_to_string(m) + "\n";
    if (cfg.x0) out += "x0 " + detail::join_doubles(*cfg.x0, " ") + "\n";
    if (cfg.steps) out += "steps " + std::to_string(*cfg.steps) + "\n";
    if (cfg.seed) out += "seed " + std::to_string(*cfg.seed) + "\n";
    if (cfg.model) out += "model " + *cfg.model + "\n";
    if (cfg.burnin) {
        out += "burnin";
        for (long long k : *cfg.burnin) out += " " + std::to_string(k);
        out += "\n";
    }
    if (cfg.eps) out += "eps " + fmt_double(*cfg.eps) + "\n";
    if (cfg.tol) out += "tol " + fmt_double(*cfg.tol) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// path-based wrappers

namespace detail {

inline std::ifstream open_for_read(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error(path + ": cannot open for reading");
    return f;
}

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error(path + ": cannot open for writing");
    return f;
}

}  // namespace detail

inline PointCloud read_cloud_file(const std::string& path) {
    auto f = detail::open_for_read(path);
    return read_cloud(f, path);
}

inline void write_cloud_file(const PointCloud& cloud, const std::string& path) {
    auto f = detail::open_for_write(path);
    write_cloud(cloud, f);
    if (!f) throw std::runtime_error(path + ": write failed");
}

inline OrbitRecord read_trace_file(const std::string& path) {
    auto f = detail::open_for_read(path);
    return read_trace(f, path);
}

inline void write_trace_file(const OrbitRecord& orbit, const std::string& path) {
    auto f = detail::open_for_write(path);
    write_trace(orbit, f);
    if (!f) throw std::runtime_error(path + ": write failed");
}

inline void write_report_file(const ConvergenceReport& rep, const std::string& path) {
    auto f = detail::open_for_write(path);
    write_report(rep, f);
    if (!f) throw std::runtime_error(path + ": write failed");
}

inline void write_basin_table_file(const std::vector<BasinVerdict>& verdicts,
                                   const std::string& path) {
    auto f = detail::open_for_write(path);
    write_basin_table(verdicts, f);
    if (!f) throw std::runtime_error(path + ": write failed");
}

inline SystemConfig parse_config_file(const std::string& path) {
    auto f = detail::open_for_read(path);
    return parse_config(f, path);
}

}  // namespace chaoscope
