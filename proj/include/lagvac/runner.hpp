#pragma once

#include <map>
#include <string>
#include <vector>

#include "lagvac/config.hpp"
#include "lagvac/diagnostics.hpp"
#include "lagvac/solver.hpp"

namespace lagvac {

inline constexpr const char* kVersion = "v0.1.0";

/// Exit codes shared by the CLI subcommands: 0 pass, 1 runtime or
/// configuration error, 2 verdict failure.
int cmd_run(const RunConfig& cfg);
int cmd_sweep(const RunConfig& base, const std::string& grid_spec, int jobs, const std::string& out_root);
int cmd_verify(const std::string& run_dir);

/// Byte-stable float formatting used by every output file.
std::string format17(double v);

void write_snapshot(const std::string& path, const Sample& sample, double rho_l);
Sample read_snapshot(const std::string& path);

std::map<std::string, std::string> read_manifest(const std::string& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;   // -1 when absent
};
CsvTable read_csv(const std::string& path);

/// Cartesian sweep grid parsed from "gamma=2:2.5,beta=0.5:1".
struct SweepGrid {
    std::vector<std::pair<std::string, double>> gamma;   // token, value
    std::vector<std::pair<std::string, double>> beta;
};
SweepGrid parse_grid(const std::string& spec);

}  // namespace lagvac
