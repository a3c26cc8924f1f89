#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pnindex/homopoly.hpp"
#include "pnindex/norms.hpp"

namespace pncli {

/// Everything a run needs, collected from flags and an optional JSON config.
/// Numeric fields hold defaults that only matter once `given` says the user
/// (or the config file) actually supplied them; command handlers check
/// presence before trusting a value.
struct Options {
    std::string command;
    std::string norm_arg;   // variant name or inline NormSpec JSON
    std::string poly_arg;   // constructor name or inline polynomial JSON
    std::string recipe;
    std::string method = "both"; // convexity: midpoint | hessian | both | log-convexity
    std::string out;             // empty = stdout
    std::string format = "json"; // json | csv
    std::string config_path;

    double p = 4.0;
    int d = 2;
    double beta = 2.0;
    double a = 0.3;
    int m = 3;
    double theta = 0.4;
    double p0 = 2.0;
    double p1 = 4.0;
    double eps = 0.01;
    double tol = 1e-9;
    int k = 0;
    int kmax = 0;
    int grid = 4096;
    int pairs = 2000;
    int starts = 64;
    int iterations = 300;
    std::uint64_t seed = 0;

    std::vector<std::string> given;

    bool has(const std::string& name) const;
    void mark(const std::string& name);
};

/// One CSV line of emit_table. The first five columns are fixed; the angle
/// column is only populated by radius runs and stays empty elsewhere.
struct TableRow {
    int k = 0;
    std::string norm;
    double estimate = 0.0;
    bool certified = false;
    std::uint64_t seed = 0;
    bool has_angle = false;
    double witness_angle = 0.0;
};

std::string emit_table(const std::vector<TableRow>& rows);

/// Fills fields the command line left untouched from a JSON config file.
void merge_config(Options& opt);

pnindex::Norm build_norm(const Options& opt);
pnindex::VectorHomoPoly build_poly(const Options& opt, const pnindex::Norm& norm);

/// Writes to stdout, or atomically (temp file + rename) when --out is set.
void deliver(const Options& opt, std::string text);

/// Runs the selected command. Returns the process exit code.
int dispatch(Options& opt);

int run_recipe(Options& opt);

} // namespace pncli
