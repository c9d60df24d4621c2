#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ddqsl/cli.hpp"
#include "ddqsl/errors.hpp"

namespace {

void add_physics_flags(CLI::App* sub, ddqsl::cli::Options& o) {
    sub->add_option("--gamma0", o.gamma0,
                    "Reservoir decay rate gamma0 (default 0.2)");
    sub->add_option("--lambda", o.lambda,
                    "Reservoir spectral width lambda (default 1)");
    sub->add_option("--tau", o.tau, "Driving time tau (default 10)");
}

void add_output_flags(CLI::App* sub, ddqsl::cli::Options& o) {
    sub->add_option("--preset", o.preset,
                    "Figure preset fig2|fig3|fig4|fig5a|fig5b; fixes gamma0, "
                    "lambda, tau (and the trace set for fig5a/fig5b)");
    sub->add_option("--out", o.out, "Output file (default: stdout)");
    sub->add_option("--config", o.config_path,
                    "Flat 'key = value' config file; command-line flags win");
}

void add_sweep_flags(CLI::App* sub, ddqsl::cli::Options& o) {
    add_physics_flags(sub, o);
    sub->add_option("--n", o.n, "First pulse count of the sweep (default 0)");
    sub->add_option("--n-max", o.n_max,
                    "Last pulse count of the sweep (default 25)");
    add_output_flags(sub, o);
}

}  // namespace

int main(int argc, char** argv) {
    ddqsl::cli::Options opts;
    CLI::App app{
        "Exact qubit dynamics under periodic decoupling pulses in a "
        "Lorentzian reservoir: population traces, speed-limit and "
        "information-backflow sweeps, and built-in verification."};
    app.require_subcommand(1);

    auto* trace = app.add_subcommand(
        "population-trace",
        "Excited-state population P(t) over [0, tau] as CSV");
    add_physics_flags(trace, opts);
    trace->add_option("--n", opts.n,
                      "Number of pulses for the trace (default 0)");
    trace->add_option("--grid", opts.grid,
                      "Time steps per trace; rows = grid + 1 (default 1000)");
    add_output_flags(trace, opts);

    auto* qslt =
        app.add_subcommand("qslt-sweep", "Speed-limit time vs pulse count as CSV");
    add_sweep_flags(qslt, opts);

    auto* psweep = app.add_subcommand("population-sweep",
                                      "Final population vs pulse count as CSV");
    add_sweep_flags(psweep, opts);

    auto* nmsweep = app.add_subcommand(
        "nonmarkov-sweep", "Information-backflow measure vs pulse count as CSV");
    add_sweep_flags(nmsweep, opts);

    auto* verify = app.add_subcommand(
        "verify",
        "Check the closed-form amplitude against an independent integrator "
        "and the rank-two form against dense evolution");
    verify->add_option("--grid", opts.grid,
                       "Comparison grid points per parameter set (default 1000)");
    verify->add_option("--config", opts.config_path,
                       "Flat 'key = value' config file; command-line flags win");
    verify
        ->add_flag("--inject-wrong-sign", opts.inject_wrong_sign,
                   "Freeze the integrator's pulse coupling (negative control; "
                   "verification must then fail)")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (app.got_subcommand(trace))
        opts.command = ddqsl::cli::Command::population_trace;
    else if (app.got_subcommand(qslt))
        opts.command = ddqsl::cli::Command::qslt_sweep;
    else if (app.got_subcommand(psweep))
        opts.command = ddqsl::cli::Command::population_sweep;
    else if (app.got_subcommand(nmsweep))
        opts.command = ddqsl::cli::Command::nonmarkov_sweep;
    else
        opts.command = ddqsl::cli::Command::verify;

    try {
        return ddqsl::cli::run(ddqsl::cli::resolve(opts));
    } catch (const ddqsl::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
