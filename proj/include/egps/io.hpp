#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egps/analysis.hpp"
#include "egps/flow.hpp"
#include "egps/grid.hpp"
#include "egps/model.hpp"

namespace egps::io {

// Everything needed to reproduce a run bitwise, plus the result summary.
struct RunRecord {
    int schema_version = 1;
    ModelParams model;
    GridDescriptor grid;
    flow::SolverConfig config;
    double initial_width = 0.25;
    double theta = 0.99;

    struct Result {
        std::string classification;
        bool converged = false;
        long iterations = 0;
        double energy = 0.0;
        double chemical_potential = 0.0;
        double peak_value = 0.0;
        std::array<double, 3> peak_location{0.0, 0.0, 0.0};
        std::optional<double> eta;
        double residual = 0.0;
        double boundary_peak_ratio = 0.0;
        double max_energy_increase = 0.0;
        double max_mass_deviation = 0.0;
        long linear_iterations = 0;
        double wall_seconds = 0.0;
    };
    std::optional<Result> result;
};

std::string classification_name(flow::Classification c);

// JSON (numbers serialize losslessly; parsing restores them bit for bit).
std::string serialize_run_record(const RunRecord& rec);
RunRecord parse_run_record(const std::string& text);
void write_run_record(const std::string& path, const RunRecord& rec);
RunRecord load_run_record(const std::string& path);

// Field dump: '#'-prefixed header (grid spec and mass), a column-name row,
// then one `x[,y[,z]],phi` row per node. Values carry 17 significant digits
// so a reload reproduces the field bitwise.
void write_field_dump(std::ostream& os, const Field& f, double mass);
void write_field_dump(const std::string& path, const Field& f, double mass);

struct FieldDump {
    Field field;
    double mass = 0.0;
};
FieldDump load_field_dump(std::istream& is);
FieldDump load_field_dump(const std::string& path);

// Sweep CSV: `#schema=1` comment header, then one
// `beta,lambda,eta,regime,iterations,converged` row per cell (eta empty when
// no ground state exists). Cells within 0.02 of the eta threshold are listed
// in a `#boundary_cells=` comment.
void write_sweep_csv(std::ostream& os, const std::vector<analysis::PhaseDiagramCell>& cells,
                     double theta, double eta_threshold);
std::string sweep_csv_string(const std::vector<analysis::PhaseDiagramCell>& cells,
                             double theta, double eta_threshold);

// Flat key = value configuration text; '#' starts a comment. Parse errors
// carry "path:line:" prefixes.
struct ConfigValue {
    std::string value;
    int line = 0;
};
std::map<std::string, ConfigValue> load_key_values(const std::string& path);
std::map<std::string, ConfigValue> parse_key_values(std::istream& is,
                                                    const std::string& path);

// 17-significant-digit decimal, enough to round-trip any double.
std::string format_full(double v);

}  // namespace egps::io
