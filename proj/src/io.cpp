#include "egps/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace egps::io {

using json = nlohmann::ordered_json;

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string classification_name(flow::Classification c) {
    switch (c) {
        case flow::Classification::GroundState: return "GroundState";
        case flow::Classification::SpreadingNoGroundState: return "SpreadingNoGroundState";
        default: return "MaxIterations";
    }
}

namespace {

json potential_to_json(const Potential& p) {
    json j;
    if (std::holds_alternative<ZeroPotential>(p)) {
        j["kind"] = "zero";
    } else if (const auto* h = std::get_if<HarmonicPotential>(&p)) {
        j["kind"] = "harmonic";
        j["gamma"] = h->gamma;
    } else if (const auto* l = std::get_if<OpticalLatticePotential>(&p)) {
        j["kind"] = "lattice";
        j["amplitude"] = l->amplitude;
        j["wavenumber"] = l->wavenumber;
    } else if (const auto* r = std::get_if<RadialPowerPotential>(&p)) {
        j["kind"] = "radial_power";
        j["coefficient"] = r->coefficient;
        j["exponent"] = r->exponent;
    } else {
        const auto& t = std::get<TabulatedPotential>(p);
        j["kind"] = "tabulated";
        j["values"] = t.values;
    }
    return j;
}

Potential potential_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return ZeroPotential{};
    if (kind == "harmonic") {
        HarmonicPotential h;
        h.gamma = j.at("gamma").get<std::array<double, 3>>();
        return h;
    }
    if (kind == "lattice") {
        return OpticalLatticePotential{j.at("amplitude").get<double>(),
                                       j.at("wavenumber").get<double>()};
    }
    if (kind == "radial_power") {
        return RadialPowerPotential{j.at("coefficient").get<double>(),
                                    j.at("exponent").get<double>()};
    }
    if (kind == "tabulated") {
        TabulatedPotential t;
        t.values = j.at("values").get<std::vector<double>>();
        return t;
    }
    throw std::runtime_error("unknown potential kind '" + kind + "'");
}

json grid_to_json(const GridDescriptor& g) {
    json j;
    if (const auto* rg = std::get_if<RadialGrid>(&g)) {
        j["kind"] = "radial";
        j["dimension"] = rg->dimension;
        j["outer_radius"] = rg->outer_radius;
        j["cells"] = rg->cells;
    } else {
        const auto& tg = std::get<TensorGrid>(g);
        j["kind"] = "tensor";
        j["dimension"] = tg.dimension;
        j["lo"] = tg.lo;
        j["hi"] = tg.hi;
        j["nodes"] = tg.nodes;
    }
    return j;
}

GridDescriptor grid_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "radial") {
        return RadialGrid(j.at("dimension").get<int>(),
                          j.at("outer_radius").get<double>(),
                          j.at("cells").get<int>());
    }
    if (kind == "tensor") {
        return TensorGrid(j.at("dimension").get<int>(),
                          j.at("lo").get<std::array<double, 3>>(),
                          j.at("hi").get<std::array<double, 3>>(),
                          j.at("nodes").get<std::array<int, 3>>());
    }
    throw std::runtime_error("unknown grid kind '" + kind + "'");
}

std::string metric_name(flow::StopMetric m) {
    return m == flow::StopMetric::MaxDiff ? "max_diff" : "l2_diff";
}

flow::StopMetric metric_from_name(const std::string& s) {
    if (s == "max_diff") return flow::StopMetric::MaxDiff;
    if (s == "l2_diff") return flow::StopMetric::L2Diff;
    throw std::runtime_error("unknown stop metric '" + s + "'");
}

}  // namespace

std::string serialize_run_record(const RunRecord& rec) {
    json j;
    j["schema_version"] = rec.schema_version;
    j["model"] = {{"dimension", rec.model.dimension},
                  {"beta", rec.model.beta},
                  {"lambda", rec.model.lambda},
                  {"mass", rec.model.mass},
                  {"potential", potential_to_json(rec.model.potential)}};
    j["grid"] = grid_to_json(rec.grid);
    j["config"] = {{"time_step", rec.config.time_step},
                   {"stop_tolerance", rec.config.stop_tolerance},
                   {"stop_metric", metric_name(rec.config.stop_metric)},
                   {"max_iterations", rec.config.max_iterations},
                   {"spread_window", rec.config.spread.window},
                   {"spread_decay_threshold", rec.config.spread.peak_decay_threshold},
                   {"linear_tolerance", rec.config.linear_tolerance},
                   {"linear_max_iterations", rec.config.linear_max_iterations}};
    j["initial_width"] = rec.initial_width;
    j["theta"] = rec.theta;
    if (rec.result) {
        const auto& r = *rec.result;
        json jr;
        jr["classification"] = r.classification;
        jr["converged"] = r.converged;
        jr["iterations"] = r.iterations;
        jr["energy"] = r.energy;
        jr["chemical_potential"] = r.chemical_potential;
        jr["peak_value"] = r.peak_value;
        jr["peak_location"] = r.peak_location;
        if (r.eta) {
            jr["eta"] = *r.eta;
        } else {
            jr["eta"] = nullptr;
        }
        jr["residual"] = r.residual;
        jr["boundary_peak_ratio"] = r.boundary_peak_ratio;
        jr["max_energy_increase"] = r.max_energy_increase;
        jr["max_mass_deviation"] = r.max_mass_deviation;
        jr["linear_iterations"] = r.linear_iterations;
        jr["wall_seconds"] = r.wall_seconds;
        j["result"] = jr;
    }
    return j.dump(2) + "\n";
}

RunRecord parse_run_record(const std::string& text) {
    const json j = json::parse(text);
    RunRecord rec;
    rec.schema_version = j.at("schema_version").get<int>();
    const auto& jm = j.at("model");
    rec.model = ModelParams(jm.at("dimension").get<int>(), jm.at("beta").get<double>(),
                            jm.at("lambda").get<double>(), jm.at("mass").get<double>(),
                            potential_from_json(jm.at("potential")));
    rec.grid = grid_from_json(j.at("grid"));
    const auto& jc = j.at("config");
    rec.config.time_step = jc.at("time_step").get<double>();
    rec.config.stop_tolerance = jc.at("stop_tolerance").get<double>();
    rec.config.stop_metric = metric_from_name(jc.at("stop_metric").get<std::string>());
    rec.config.max_iterations = jc.at("max_iterations").get<long>();
    rec.config.spread.window = jc.at("spread_window").get<int>();
    rec.config.spread.peak_decay_threshold = jc.at("spread_decay_threshold").get<double>();
    rec.config.linear_tolerance = jc.at("linear_tolerance").get<double>();
    rec.config.linear_max_iterations = jc.at("linear_max_iterations").get<long>();
    rec.initial_width = j.at("initial_width").get<double>();
    rec.theta = j.at("theta").get<double>();
    if (j.contains("result")) {
        const auto& jr = j.at("result");
        RunRecord::Result r;
        r.classification = jr.at("classification").get<std::string>();
        r.converged = jr.at("converged").get<bool>();
        r.iterations = jr.at("iterations").get<long>();
        r.energy = jr.at("energy").get<double>();
        r.chemical_potential = jr.at("chemical_potential").get<double>();
        r.peak_value = jr.at("peak_value").get<double>();
        r.peak_location = jr.at("peak_location").get<std::array<double, 3>>();
        if (!jr.at("eta").is_null()) r.eta = jr.at("eta").get<double>();
        r.residual = jr.at("residual").get<double>();
        r.boundary_peak_ratio = jr.at("boundary_peak_ratio").get<double>();
        r.max_energy_increase = jr.at("max_energy_increase").get<double>();
        r.max_mass_deviation = jr.at("max_mass_deviation").get<double>();
        r.linear_iterations = jr.at("linear_iterations").get<long>();
        r.wall_seconds = jr.at("wall_seconds").get<double>();
        rec.result = r;
    }
    return rec;
}

void write_run_record(const std::string& path, const RunRecord& rec) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << serialize_run_record(rec);
}

RunRecord load_run_record(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_run_record(ss.str());
}

void write_field_dump(std::ostream& os, const Field& f, double mass) {
    os << "#schema=1\n";
    if (const auto* rg = std::get_if<RadialGrid>(&f.grid)) {
        os << "#grid=radial dim=" << rg->dimension
           << " R=" << format_full(rg->outer_radius) << " M=" << rg->cells << "\n";
    } else {
        const auto& tg = std::get<TensorGrid>(f.grid);
        os << "#grid=tensor dim=" << tg.dimension << " lo=";
        for (int a = 0; a < tg.dimension; ++a) {
            os << (a ? "," : "") << format_full(tg.lo[a]);
        }
        os << " hi=";
        for (int a = 0; a < tg.dimension; ++a) {
            os << (a ? "," : "") << format_full(tg.hi[a]);
        }
        os << " n=";
        for (int a = 0; a < tg.dimension; ++a) {
            os << (a ? "," : "") << tg.nodes[a];
        }
        os << "\n";
    }
    os << "#c=" << format_full(mass) << "\n";
    const int d = grid_dimension(f.grid);
    if (std::holds_alternative<RadialGrid>(f.grid)) {
        os << "r,phi\n";
    } else {
        os << (d == 1 ? "x,phi\n" : d == 2 ? "x,y,phi\n" : "x,y,z,phi\n");
    }
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const auto x = node_coordinates(f.grid, i);
        const int ncoord = std::holds_alternative<RadialGrid>(f.grid) ? 1 : d;
        for (int a = 0; a < ncoord; ++a) os << format_full(x[a]) << ",";
        os << format_full(f.values[i]) << "\n";
    }
}

void write_field_dump(const std::string& path, const Field& f, double mass) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write '" + path + "'");
    write_field_dump(os, f, mass);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::map<std::string, std::string> parse_spec_line(const std::string& line) {
    // "#grid=radial dim=3 R=1 M=2048" -> {grid: radial, dim: 3, ...}
    std::map<std::string, std::string> kv;
    for (const auto& tok : split(line.substr(1), ' ')) {
        const auto eq = tok.find('=');
        if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

}  // namespace

FieldDump load_field_dump(std::istream& is) {
    std::string line;
    std::map<std::string, std::string> spec;
    double mass = 0.0;
    bool have_mass = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] != '#') break;  // column header row
        if (line.rfind("#grid=", 0) == 0) {
            spec = parse_spec_line(line);
        } else if (line.rfind("#c=", 0) == 0) {
            mass = std::stod(line.substr(3));
            have_mass = true;
        }
    }
    if (spec.empty() || !have_mass) {
        throw std::runtime_error("field dump: missing #grid or #c header");
    }

    GridDescriptor grid;
    if (spec.at("grid") == "radial") {
        grid = RadialGrid(std::stoi(spec.at("dim")), std::stod(spec.at("R")),
                          std::stoi(spec.at("M")));
    } else if (spec.at("grid") == "tensor") {
        const int d = std::stoi(spec.at("dim"));
        std::array<double, 3> lo{0, 0, 0}, hi{0, 0, 0};
        std::array<int, 3> n{1, 1, 1};
        const auto los = split(spec.at("lo"), ',');
        const auto his = split(spec.at("hi"), ',');
        const auto ns = split(spec.at("n"), ',');
        for (int a = 0; a < d; ++a) {
            lo[a] = std::stod(los.at(a));
            hi[a] = std::stod(his.at(a));
            n[a] = std::stoi(ns.at(a));
        }
        grid = TensorGrid(d, lo, hi, n);
    } else {
        throw std::runtime_error("field dump: unknown grid kind '" + spec.at("grid") + "'");
    }

    const std::size_t count = grid_node_count(grid);
    std::vector<double> values;
    values.reserve(count);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        values.push_back(std::stod(cols.back()));
    }
    if (values.size() != count) {
        throw std::runtime_error("field dump: row count does not match the grid");
    }
    return FieldDump{Field(std::move(grid), std::move(values)), mass};
}

FieldDump load_field_dump(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read '" + path + "'");
    return load_field_dump(is);
}

void write_sweep_csv(std::ostream& os, const std::vector<analysis::PhaseDiagramCell>& cells,
                     double theta, double eta_threshold) {
    os << "#schema=1\n";
    os << "#theta=" << format_full(theta)
       << " eta_threshold=" << format_full(eta_threshold) << "\n";
    std::string boundary;
    for (const auto& c : cells) {
        if (c.near_threshold) {
            if (!boundary.empty()) boundary += ";";
            boundary += "(" + format_full(c.beta) + "," + format_full(c.lambda) + ")";
        }
    }
    if (!boundary.empty()) os << "#boundary_cells=" << boundary << "\n";
    os << "beta,lambda,eta,regime,iterations,converged\n";
    for (const auto& c : cells) {
        os << format_full(c.beta) << "," << format_full(c.lambda) << ",";
        if (c.eta) os << format_full(*c.eta);
        os << "," << analysis::regime_name(c.regime) << "," << c.iterations << ","
           << (c.converged ? "true" : "false") << "\n";
    }
}

std::string sweep_csv_string(const std::vector<analysis::PhaseDiagramCell>& cells,
                             double theta, double eta_threshold) {
    std::ostringstream ss;
    write_sweep_csv(ss, cells, theta, eta_threshold);
    return ss.str();
}

std::map<std::string, ConfigValue> parse_key_values(std::istream& is,
                                                    const std::string& path) {
    std::map<std::string, ConfigValue> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": empty key");
        }
        out[key] = ConfigValue{value, lineno};
    }
    return out;
}

std::map<std::string, ConfigValue> load_key_values(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read config '" + path + "'");
    return parse_key_values(is, path);
}

}  // namespace egps::io
