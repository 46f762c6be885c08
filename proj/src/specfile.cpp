#include "monokit/specfile.hpp"

#include <fstream>
#include <sstream>

#include "monokit/errors.hpp"

namespace monokit {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("spec file: '" + s + "' is not a number (" + where + ")");
    }
}

}  // namespace

SpecFile SpecFile::parse(const std::string& text) {
    SpecFile f;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("spec file line " + std::to_string(lineno) +
                                      ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            f.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("spec file line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty())
            throw ValidationError("spec file line " + std::to_string(lineno) + ": empty key");
        f.sections_[section][key] = value;
    }
    return f;
}

SpecFile SpecFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("spec file: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

bool SpecFile::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string SpecFile::get_string(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end() || !s->second.count(key))
        throw ValidationError("spec file: missing [" + section + "] " + key);
    return s->second.at(key);
}

std::string SpecFile::get_string(const std::string& section, const std::string& key,
                                 const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double SpecFile::get_double(const std::string& section, const std::string& key) const {
    return to_double(get_string(section, key), "[" + section + "] " + key);
}

double SpecFile::get_double(const std::string& section, const std::string& key,
                            double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int SpecFile::get_int(const std::string& section, const std::string& key) const {
    const double v = get_double(section, key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ValidationError("spec file: [" + section + "] " + key + " must be an integer");
    return i;
}

int SpecFile::get_int(const std::string& section, const std::string& key, int fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> SpecFile::get_list(const std::string& section, const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(get_string(section, key));
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(to_double(trim(item), "[" + section + "] " + key));
    return out;
}

namespace {

OpPtr load_a_part(const SpecFile& f) {
    const std::string type = f.get_string("A", "type");
    if (type == "power_graph")
        return make_power_graph(f.get_int("A", "n", 1), f.get_double("A", "gamma"));
    if (type == "scaled_identity")
        return make_scaled_identity(f.get_int("A", "n", 1), f.get_double("A", "a"));
    if (type == "plaplacian_1d")
        return make_plaplacian_1d(f.get_int("A", "nx"), f.get_double("A", "h"),
                                  f.get_double("A", "p"));
    if (type == "plaplacian_2d")
        return make_plaplacian_2d(f.get_int("A", "nx"), f.get_int("A", "ny"),
                                  f.get_double("A", "h"), f.get_double("A", "p"));
    if (type == "zero_homogeneous") {
        // The zero operator with a declared degree, for inconclusive demos.
        const int n = f.get_int("A", "n", 1);
        return make_scaled(0.0, make_power_graph(n, f.get_double("A", "gamma", 1.0)));
    }
    throw ValidationError("spec file: unknown [A] type '" + type + "'");
}

MapFn load_c_part(const SpecFile& f, int n, double p) {
    const double c_lin = f.get_double("C", "c_lin", 0.0);
    const double c_phi = f.get_double("C", "c_phi", 0.0);
    const double c_j = f.get_double("C", "c_j", 0.0);  // normalized duality term
    Vec g(static_cast<std::size_t>(n), f.get_double("C", "g_const", 0.0));
    if (f.has("C", "g")) {
        g = f.get_list("C", "g");
        if (static_cast<int>(g.size()) != n)
            throw ValidationError("spec file: [C] g must have one entry per dimension");
    }
    return [c_lin, c_phi, c_j, p, g](const Vec& u) {
        Vec out(u.size());
        const Vec ju = c_j != 0.0 ? normalized_duality_raw(u, p) : Vec(u.size(), 0.0);
        for (std::size_t i = 0; i < u.size(); ++i)
            out[i] = c_lin * u[i] + c_phi * signed_power(p, u[i]) + c_j * ju[i] + g[i];
        return out;
    };
}

Multifunction load_t_part(const SpecFile& f, int n) {
    const std::string type = f.get_string("T", "type", "zero");
    if (type == "zero") return Multifunction::zero(n);
    if (type == "interval") {
        auto affine = [](double c0, double c1) {
            return [c0, c1](const Vec& u) {
                Vec out(u.size());
                for (std::size_t i = 0; i < u.size(); ++i) out[i] = c0 + c1 * u[i];
                return out;
            };
        };
        return Multifunction::interval(
            affine(f.get_double("T", "lo_const", 0.0), f.get_double("T", "lo_lin", 0.0)),
            affine(f.get_double("T", "hi_const", 0.0), f.get_double("T", "hi_lin", 0.0)));
    }
    throw ValidationError("spec file: unknown [T] type '" + type + "'");
}

}  // namespace

InclusionProblem load_inclusion(const SpecFile& f) {
    OpPtr a = load_a_part(f);
    const int n = a->dim();
    const auto gamma = a->homogeneity();
    const double p = gamma ? *gamma + 1.0 : 2.0;
    MapFn c = load_c_part(f, n, p);
    Multifunction t = load_t_part(f, n);
    std::optional<Vec> v0;
    if (f.has("regions", "v0_star")) {
        v0 = f.get_list("regions", "v0_star");
        if (static_cast<int>(v0->size()) != n)
            throw ValidationError("spec file: [regions] v0_star must have one entry per dimension");
    }
    return make_problem(std::move(a), std::move(c), std::move(t),
                        f.get_double("regions", "g1_radius"),
                        f.get_double("regions", "g2_radius"), std::move(v0));
}

EllipticSpec load_elliptic_spec(const SpecFile& f) {
    EllipticSpec s;
    s.nx = f.get_int("grid", "nx");
    s.ny = f.get_int("grid", "ny", 0);
    s.h = f.get_double("grid", "h");
    s.p = f.get_double("grid", "p");
    s.a_scale = f.get_double("A", "scale", 1.0);
    s.c_lin = f.get_double("C", "c_lin", 0.0);
    s.c_phi = f.get_double("C", "c_phi", 0.0);
    if (f.has("C", "g")) s.g = f.get_list("C", "g");
    if (f.has("C", "g_const") && !f.has("C", "g")) {
        const int n = s.ny > 0 ? s.nx * s.ny : s.nx;
        s.g.assign(static_cast<std::size_t>(n), f.get_double("C", "g_const"));
    }
    const std::string rtype = f.get_string("reaction", "type", "none");
    if (rtype == "interval") {
        s.has_reaction = true;
        s.react_lo_const = f.get_double("reaction", "lo_const", 0.0);
        s.react_lo_lin = f.get_double("reaction", "lo_lin", 0.0);
        s.react_hi_const = f.get_double("reaction", "hi_const", 0.0);
        s.react_hi_lin = f.get_double("reaction", "hi_lin", 0.0);
    } else if (rtype != "none") {
        throw ValidationError("spec file: unknown [reaction] type '" + rtype + "'");
    }
    s.delta1 = f.get_double("annulus", "delta1", s.delta1);
    s.delta2 = f.get_double("annulus", "delta2", s.delta2);
    s.radius_norm = f.get_string("annulus", "radius_norm", s.radius_norm);
    return s;
}

ParabolicProblem load_parabolic(const SpecFile& f) {
    EllipticSpec spatial = load_elliptic_spec(f);
    const double horizon = f.get_double("time", "horizon");
    const double dt = f.get_double("time", "dt");
    const double h_const = f.get_double("time", "forcing_const", 0.0);
    return build_parabolic(spatial, horizon, dt,
                           [h_const](int, double) { return h_const; });
}

}  // namespace monokit
