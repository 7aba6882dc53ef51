#include "cgo/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace cgo {

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct Binder {
    std::map<std::string, std::function<void(const std::string&)>> setters;
    std::map<std::string, std::function<std::string()>> getters;
    std::vector<std::string> order;

    void bind_double(const std::string& key, double* v) {
        setters[key] = [v](const std::string& s) { *v = std::stod(s); };
        getters[key] = [v]() { return g17(*v); };
        order.push_back(key);
    }
    void bind_int(const std::string& key, int* v) {
        setters[key] = [v](const std::string& s) { *v = std::stoi(s); };
        getters[key] = [v]() { return std::to_string(*v); };
        order.push_back(key);
    }
    void bind_u64(const std::string& key, std::uint64_t* v) {
        setters[key] = [v](const std::string& s) { *v = std::stoull(s); };
        getters[key] = [v]() { return std::to_string(*v); };
        order.push_back(key);
    }
    void bind_uint(const std::string& key, unsigned* v) {
        setters[key] = [v](const std::string& s) { *v = static_cast<unsigned>(std::stoul(s)); };
        getters[key] = [v]() { return std::to_string(*v); };
        order.push_back(key);
    }
    void bind_bool(const std::string& key, bool* v) {
        setters[key] = [v](const std::string& s) {
            if (s == "true" || s == "1")
                *v = true;
            else if (s == "false" || s == "0")
                *v = false;
            else
                throw InvalidInputError("config: bad boolean '" + s + "'");
        };
        getters[key] = [v]() { return *v ? std::string("true") : std::string("false"); };
        order.push_back(key);
    }
    void bind_string(const std::string& key, std::string* v) {
        setters[key] = [v](const std::string& s) { *v = s; };
        getters[key] = [v]() { return *v; };
        order.push_back(key);
    }
    void bind_complex(const std::string& key, Complex* v) {
        bind_double(key + "_re", reinterpret_cast<double*>(v));
        bind_double(key + "_im", reinterpret_cast<double*>(v) + 1);
    }
};

Binder make_binder(RunConfig& c) {
    Binder b;
    b.bind_complex("geometry.outer_center", &c.outer_center);
    b.bind_double("geometry.outer_radius", &c.outer_radius);
    b.bind_complex("geometry.jump_center", &c.jump_center);
    b.bind_double("geometry.jump_radius", &c.jump_radius);
    b.bind_int("geometry.gamma_nodes", &c.gamma_nodes);
    b.bind_int("geometry.boundary_nodes", &c.boundary_nodes);
    b.bind_int("geometry.area_radial", &c.area_radial);
    b.bind_int("geometry.area_angular", &c.area_angular);
    b.bind_string("model.kind", &c.model_kind);
    b.bind_complex("model.jump", &c.model_jump);
    b.bind_complex("model.bump_amp", &c.bump_amplitude);
    b.bind_complex("model.bump_center", &c.bump_center);
    b.bind_double("model.bump_radius", &c.bump_radius);
    b.bind_complex("point.w", &c.w);
    b.bind_bool("admissible.auto", &c.auto_lambda);
    b.bind_complex("admissible.lambda_O", &c.lambda_O);
    b.bind_double("annulus.r_base", &c.annulus_r);
    b.bind_int("annulus.ladder_rungs", &c.ladder_rungs);
    b.bind_int("annulus.n_radial", &c.n_radial);
    b.bind_int("annulus.n_angular", &c.n_angular);
    b.bind_string("solver.method", &c.method);
    b.bind_double("solver.tol", &c.tol);
    b.bind_int("solver.max_iter", &c.max_iter);
    b.bind_double("solver.r_cut", &c.r_cut);
    b.bind_bool("mesh.auto_refine", &c.auto_refine);
    b.bind_double("mesh.phase_step", &c.phase_step);
    b.bind_string("output.dir", &c.out_dir);
    b.bind_bool("output.dump_fields", &c.dump_fields);
    b.bind_u64("run.seed", &c.seed);
    b.bind_uint("run.threads", &c.threads);
    return b;
}

}  // namespace

std::string serialize_config(const RunConfig& config) {
    RunConfig copy = config;
    Binder b = make_binder(copy);
    std::ostringstream out;
    for (const std::string& key : b.order) out << key << " = " << b.getters[key]() << "\n";
    return out.str();
}

RunConfig parse_config(std::istream& in) {
    RunConfig c;
    Binder b = make_binder(c);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw InvalidInputError("config line " + std::to_string(lineno) + ": missing '='");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        auto it = b.setters.find(key);
        if (it == b.setters.end())
            throw InvalidInputError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        it->second(val);
    }
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open config file: " + path);
    return parse_config(in);
}

}  // namespace cgo
