#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "options.hpp"

namespace {

const char* const kRecipeList =
    "Bundled verification recipes:\n"
    "  example-2.1a-p4       cubic zero-radius map on the 4-norm plane\n"
    "  example-2.1a-p6       quintic zero-radius map on the 6-norm plane\n"
    "  hilbert-rotation      rotation generator on the Euclidean plane\n"
    "  theorem-2.6-family    tangent construction on the quartic family (--beta)\n"
    "  example-2.8           asymmetric norm zero-radius cubic (--a)\n"
    "  example-2.9           interpolated norm zero-radius map (--m, --theta)\n"
    "  corollary-2.2-embed   planar map embedded into lp^d (--p, --d)\n"
    "  prop-3.1-classification  quartic family norm/non-norm table\n"
    "  final-example         eps geometric mean triangle-inequality failure\n"
    "  square-order-2        order-2 index of the max norm near 1/2\n"
    "  monotonicity-l4       index sweep k=1..4 on the 4-norm plane\n";

} // namespace

int main(int argc, char** argv) {
    pncli::Options opt;
    CLI::App app{"numerical ranges, radii, and polynomial numerical indices of plane norms"};
    app.require_subcommand(0, 1);

    app.add_option("--config", opt.config_path, "JSON config file; flags override its fields");
    app.add_option("--norm", opt.norm_arg,
                   "norm variant (lp, l1, linf, beta-quartic, asym-a, interp-sym, geom-mean, "
                   "eps-geom-mean) or inline JSON");
    app.add_option("--poly", opt.poly_arg,
                   "polynomial constructor (lp-zero, example8, example9, tangent) or inline JSON");
    app.add_option("--p", opt.p, "lp exponent");
    app.add_option("--d", opt.d, "lp dimension");
    app.add_option("--beta", opt.beta, "quartic family parameter");
    app.add_option("--a", opt.a, "asymmetric norm parameter, in (0,1)");
    app.add_option("--m", opt.m, "interpolated norm degree parameter, >= 3");
    app.add_option("--theta", opt.theta, "interpolation weight");
    app.add_option("--p0", opt.p0, "geometric mean: first exponent");
    app.add_option("--p1", opt.p1, "geometric mean: second exponent");
    app.add_option("--eps", opt.eps, "eps geometric mean parameter");
    app.add_option("--k", opt.k, "polynomial degree for index estimation");
    app.add_option("--kmax", opt.kmax, "largest degree for sweeps / min-degree");
    app.add_option("--grid", opt.grid, "angular grid size");
    app.add_option("--pairs", opt.pairs, "midpoint test sample pairs");
    app.add_option("--tol", opt.tol, "verification tolerance");
    app.add_option("--seed", opt.seed, "RNG seed");
    app.add_option("--starts", opt.starts, "optimizer restarts");
    app.add_option("--iterations", opt.iterations, "simplex iterations per stage");
    app.add_option("--method", opt.method, "convexity route: midpoint | hessian | both | log-convexity");
    app.add_option("--out", opt.out, "output file (atomic write); stdout when omitted");
    app.add_option("--format", opt.format, "output format: json | csv");

    CLI::App* rec = nullptr;
    for (const char* name : {"radius", "index", "min-degree", "convexity", "beta-classify", "recipe"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->fallthrough();
        if (std::string(name) == "recipe") rec = sub;
    }
    rec->add_option("name", opt.recipe, "recipe id");
    rec->footer(kRecipeList);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the message
        return 2;
    }

    for (const char* name :
         {"config", "norm", "poly", "p", "d", "beta", "a", "m", "theta", "p0", "p1", "eps", "k",
          "kmax", "grid", "pairs", "tol", "seed", "starts", "iterations", "method", "out", "format"}) {
        if (app.count(std::string("--") + name) > 0)
            opt.mark(name == std::string("poly") ? "polynomial" : name);
    }
    if (!opt.recipe.empty()) opt.mark("recipe");
    if (!app.get_subcommands().empty()) opt.command = app.get_subcommands().front()->get_name();

    try {
        return pncli::dispatch(opt);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
