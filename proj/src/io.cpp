#include "qtoric/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace qtoric {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

Int parse_integer(const std::string& text, const char* what) {
    const std::string t = trim(text);
    if (t.empty()) {
        throw ParseError(std::string(what) + ": empty integer literal");
    }
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) {
        throw ParseError(std::string(what) + ": '" + t + "' is not an integer");
    }
    for (; i < t.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
            throw ParseError(std::string(what) + ": '" + t + "' is not an integer");
        }
    }
    // cpp_int's string constructor accepts a '-' sign but not an explicit '+'.
    return Int(t[0] == '+' ? t.substr(1) : t);
}

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const std::string t = trim(text);
    const std::size_t slash = t.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_integer(t, "rational"));
    }
    const Int num = parse_integer(t.substr(0, slash), "rational numerator");
    const Int den = parse_integer(t.substr(slash + 1), "rational denominator");
    if (den == 0) {
        throw ParseError("rational: zero denominator in '" + t + "'");
    }
    return Rational(num) / Rational(den);
}

std::string format_rational(const Rational& value) {
    const Int num = boost::multiprecision::numerator(value);
    const Int den = boost::multiprecision::denominator(value);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

HRepPolytope polytope_from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("polytope JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) {
            throw ParseError("polytope JSON: top level must be an object");
        }
        if (j.contains("schema")) {
            if (!j["schema"].is_number_integer() ||
                j["schema"].get<int>() != kPolytopeSchemaVersion) {
                throw SchemaVersionMismatch("polytope JSON: schema version " + j["schema"].dump() +
                                            " is not supported (expected " +
                                            std::to_string(kPolytopeSchemaVersion) + ")");
            }
        }
        if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
            throw ParseError("polytope JSON: missing or invalid 'dim'");
        }
        const std::size_t dim = j["dim"].get<std::size_t>();
        if (!j.contains("facets") || !j["facets"].is_array()) {
            throw ParseError("polytope JSON: missing 'facets' array");
        }
        std::vector<Facet> facets;
        for (const auto& jf : j["facets"]) {
            if (!jf.is_object() || !jf.contains("normal") || !jf.contains("offset") ||
                !jf["normal"].is_array()) {
                throw ParseError("polytope JSON: each facet needs a 'normal' array and an 'offset'");
            }
            Facet f;
            for (const auto& entry : jf["normal"]) {
                if (entry.is_number_integer()) {
                    f.normal.push_back(Int(entry.get<long long>()));
                } else if (entry.is_string()) {
                    f.normal.push_back(parse_integer(entry.get<std::string>(), "normal entry"));
                } else {
                    throw ParseError("polytope JSON: normal entries must be integers");
                }
            }
            if (f.normal.size() != dim) {
                throw ParseError("polytope JSON: a normal has length " +
                                 std::to_string(f.normal.size()) + ", expected " +
                                 std::to_string(dim));
            }
            const auto& jo = jf["offset"];
            if (jo.is_string()) {
                f.offset = parse_rational(jo.get<std::string>());
            } else if (jo.is_number_integer()) {
                f.offset = Rational(Int(jo.get<long long>()));
            } else {
                throw ParseError("polytope JSON: offsets must be exact fraction strings");
            }
            facets.push_back(std::move(f));
        }
        const std::string name = j.contains("name") && j["name"].is_string()
                                     ? j["name"].get<std::string>()
                                     : std::string();
        return HRepPolytope(dim, std::move(facets), name);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("polytope JSON: ") + e.what());
    }
}

std::string polytope_to_json_text(const HRepPolytope& P) {
    ordered_json j;
    j["schema"] = kPolytopeSchemaVersion;
    j["dim"] = P.dim();
    if (!P.name().empty()) {
        j["name"] = P.name();
    }
    ordered_json facets = ordered_json::array();
    for (const Facet& f : P.facets()) {
        ordered_json jf;
        ordered_json normal = ordered_json::array();
        for (const Int& entry : f.normal) {
            if (entry >= std::numeric_limits<long long>::min() &&
                entry <= std::numeric_limits<long long>::max()) {
                normal.push_back(static_cast<long long>(entry));
            } else {
                normal.push_back(entry.str());
            }
        }
        jf["normal"] = std::move(normal);
        jf["offset"] = format_rational(f.offset);
        facets.push_back(std::move(jf));
    }
    j["facets"] = std::move(facets);
    return j.dump(2) + "\n";
}

HRepPolytope load_polytope(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open polytope file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return polytope_from_json_text(buffer.str());
}

void save_polytope(const HRepPolytope& P, const std::string& path) {
    write_text_file(path, polytope_to_json_text(P));
}

std::string action_table_to_text(const ActionTable& table) {
    std::string out;
    for (std::size_t coord = 0; coord < table.coords.size(); ++coord) {
        out += render_action_line(table, coord);
        out += '\n';
    }
    return out;
}

ActionTable action_table_from_text(const std::string& text) {
    struct Line {
        std::size_t coord = 0;
        bool has_left = false, has_right = false;
        char left_kind = 'h', right_kind = 'h';
        std::size_t left_index = 0, right_index = 0;
    };
    auto parse_column = [](const std::string& token, const char* what) {
        if (token.size() < 2 || (token[0] != 'h' && token[0] != 'g')) {
            throw ParseError(std::string(what) + ": bad column token '" + token + "'");
        }
        for (std::size_t i = 1; i < token.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
                throw ParseError(std::string(what) + ": bad column token '" + token + "'");
            }
        }
        const unsigned long index = std::stoul(token.substr(1));
        if (index == 0) {
            throw ParseError(std::string(what) + ": column indices are 1-based");
        }
        return std::pair<char, std::size_t>(token[0], index);
    };
    auto parse_coord = [](const std::string& token) {
        if (token.size() < 2 || token[0] != 'q') {
            throw ParseError("action table: bad coordinate token '" + token + "'");
        }
        for (std::size_t i = 1; i < token.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
                throw ParseError("action table: bad coordinate token '" + token + "'");
            }
        }
        const unsigned long index = std::stoul(token.substr(1));
        if (index == 0) {
            throw ParseError("action table: coordinates are 1-based");
        }
        return static_cast<std::size_t>(index);
    };

    std::vector<Line> lines;
    std::size_t max_h = 0, max_g = 0, max_coord = 0;
    std::istringstream stream(text);
    std::string raw;
    while (std::getline(stream, raw)) {
        const std::string line = trim(raw);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.size() < 3 || tokens[1] != "<-") {
            throw ParseError("action table: expected 'qN <- ...' in line '" + line + "'");
        }
        Line entry;
        entry.coord = parse_coord(tokens[0]);
        std::size_t pos = 2;
        // Optional left factor: "col *"
        if (pos + 1 < tokens.size() && tokens[pos + 1] == "*" && tokens[pos][0] != 'q') {
            const auto [kind, index] = parse_column(tokens[pos], "action table left factor");
            entry.has_left = true;
            entry.left_kind = kind;
            entry.left_index = index;
            pos += 2;
        }
        if (pos >= tokens.size() || parse_coord(tokens[pos]) != entry.coord) {
            throw ParseError("action table: coordinate mismatch in line '" + line + "'");
        }
        ++pos;
        // Optional right factor: "* col^-1"
        if (pos < tokens.size()) {
            if (tokens[pos] != "*" || pos + 1 >= tokens.size()) {
                throw ParseError("action table: malformed right factor in line '" + line + "'");
            }
            std::string right = tokens[pos + 1];
            const std::string suffix = "^-1";
            if (right.size() <= suffix.size() ||
                right.compare(right.size() - suffix.size(), suffix.size(), suffix) != 0) {
                throw ParseError("action table: right factor must end in ^-1 in line '" + line +
                                 "'");
            }
            right.resize(right.size() - suffix.size());
            const auto [kind, index] = parse_column(right, "action table right factor");
            entry.has_right = true;
            entry.right_kind = kind;
            entry.right_index = index;
            pos += 2;
        }
        if (pos != tokens.size()) {
            throw ParseError("action table: trailing tokens in line '" + line + "'");
        }
        max_coord = std::max(max_coord, entry.coord);
        if (entry.has_left) {
            (entry.left_kind == 'h' ? max_h : max_g) =
                std::max(entry.left_kind == 'h' ? max_h : max_g, entry.left_index);
        }
        if (entry.has_right) {
            (entry.right_kind == 'h' ? max_h : max_g) =
                std::max(entry.right_kind == 'h' ? max_h : max_g, entry.right_index);
        }
        lines.push_back(entry);
    }
    if (lines.empty()) {
        throw ParseError("action table: no lines");
    }

    ActionTable table;
    table.n_h = max_h;
    table.n_g = max_g;
    table.coords.assign(max_coord, ActionFactor{});
    for (const Line& entry : lines) {
        ActionFactor& factor = table.coords[entry.coord - 1];
        if (entry.has_left) {
            factor.left = (entry.left_kind == 'h') ? entry.left_index - 1
                                                   : max_h + entry.left_index - 1;
        }
        if (entry.has_right) {
            factor.right = (entry.right_kind == 'h') ? entry.right_index - 1
                                                     : max_h + entry.right_index - 1;
        }
    }
    return table;
}

std::string samples_to_csv(const SampleSet& samples, const std::string& polytope_name) {
    std::string out;
    out += "# polytope: " + (polytope_name.empty() ? std::string("(unnamed)") : polytope_name) +
           "\n";
    out += "# seed: " + std::to_string(samples.seed) + "\n";
    out += "# samples: " + std::to_string(samples.points.size()) + "\n";
    const std::size_t d = samples.images.empty() ? 0 : samples.images.front().size();
    const std::size_t m = samples.projections.empty() ? 0 : samples.projections.front().size();
    for (std::size_t i = 0; i < d; ++i) {
        out += (i ? "," : "") + std::string("image_") + std::to_string(i + 1);
    }
    for (std::size_t i = 0; i < m; ++i) {
        out += ",proj_" + std::to_string(i + 1);
    }
    out += "\n";
    for (std::size_t row = 0; row < samples.points.size(); ++row) {
        std::string line;
        for (std::size_t i = 0; i < d; ++i) {
            line += (i ? "," : "") + format_double(samples.images[row][i]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            line += "," + format_double(samples.projections[row][i]);
        }
        out += line + "\n";
    }
    return out;
}

std::string hull_to_csv(const std::vector<std::vector<double>>& generators,
                        const std::string& label) {
    std::string out;
    out += "# fixed-point images: " + (label.empty() ? std::string("(unnamed)") : label) + "\n";
    const std::size_t m = generators.empty() ? 0 : generators.front().size();
    for (std::size_t i = 0; i < m; ++i) {
        out += (i ? "," : "") + std::string("x_") + std::to_string(i + 1);
    }
    out += "\n";
    for (const auto& g : generators) {
        std::string line;
        for (std::size_t i = 0; i < g.size(); ++i) {
            line += (i ? "," : "") + format_double(g[i]);
        }
        out += line + "\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write file '" + tmp + "'");
        }
        out << content;
        if (!out) {
            throw Error("failed while writing '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw Error("cannot move '" + tmp + "' into place: " + ec.message());
    }
}

std::string catalog_directory() {
    if (const char* env = std::getenv("QTORIC_CATALOG_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
#ifdef QTORIC_CATALOG_DIR
    return QTORIC_CATALOG_DIR;
#else
    return "data/catalog";
#endif
}

std::vector<CatalogEntry> catalog_polytopes() {
    const std::string dir = catalog_directory();
    std::vector<CatalogEntry> entries;
    std::error_code ec;
    for (const auto& item : std::filesystem::directory_iterator(dir, ec)) {
        if (!item.is_regular_file() || item.path().extension() != ".json") continue;
        CatalogEntry entry;
        entry.path = item.path().string();
        try {
            entry.name = load_polytope(entry.path).name();
        } catch (const Error&) {
            entry.name.clear();
        }
        if (entry.name.empty()) {
            entry.name = item.path().stem().string();
        }
        entries.push_back(std::move(entry));
    }
    std::sort(entries.begin(), entries.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) { return a.path < b.path; });
    return entries;
}

}  // namespace qtoric
