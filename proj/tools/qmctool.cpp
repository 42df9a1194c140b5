// Command-line front end: point generation, t certification, worst-case
// error, hierarchical coefficients, and full experiment sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmc/errors.hpp"
#include "qmc/experiment.hpp"
#include "qmc/faber.hpp"
#include "qmc/kernels.hpp"
#include "qmc/net.hpp"
#include "qmc/numeric.hpp"
#include "qmc/pointsets.hpp"
#include "qmc/tent.hpp"
#include "qmc/testfunction.hpp"

namespace {

struct PointArgs {
    std::string construction = "net";
    std::string matrix_file;
    int alpha = 0;
    int size = -1;  // n (N = 2^n) or the Fibonacci index m
    bool tent = false;
    std::uint64_t seed = 1;
};

void add_point_options(CLI::App* cmd, PointArgs& a) {
    cmd->add_option("-c,--construction", a.construction,
                    "net | fibonacci | halton | zaremba | halton_shifted")
        ->capture_default_str();
    cmd->add_option("-f,--matrix-file", a.matrix_file, "generator matrix file (net)");
    cmd->add_option("-a,--alpha", a.alpha,
                    "interlacing order; 0 keeps the file's order as stored");
    cmd->add_option("-n,--size", a.size, "size parameter: n for N = 2^n, Fibonacci index m");
    cmd->add_flag("--tent", a.tent, "apply the tent transform to every coordinate");
    cmd->add_option("-s,--seed", a.seed, "shift seed (halton_shifted)")->capture_default_str();
}

qmc::PointSet make_points(const PointArgs& a) {
    qmc::PointSet p;
    if (a.construction == "net") {
        if (a.matrix_file.empty()) throw qmc::ConfigError("net needs --matrix-file");
        qmc::GeneratorMatrixSet g = qmc::load_matrix_file(a.matrix_file);
        if (a.size >= 0 && g.n != a.size)
            throw qmc::ConfigError("matrix file has n = " + std::to_string(g.n) +
                                   ", --size asked for " + std::to_string(a.size));
        if (a.alpha > 0 && a.alpha != g.alpha) {
            if (g.alpha != 1)
                throw qmc::ConfigError("cannot interlace a file that is already order " +
                                       std::to_string(g.alpha));
            g = qmc::interlace_matrices(g, a.alpha);
        }
        p = qmc::net_points(g);
    } else {
        if (a.size < 0) throw qmc::ConfigError(a.construction + " needs --size");
        if (a.construction == "fibonacci") {
            p = qmc::fibonacci_lattice(a.size);
        } else if (a.construction == "halton") {
            p = qmc::halton2d(a.size);
        } else if (a.construction == "zaremba") {
            p = qmc::zaremba_shift(qmc::halton2d(a.size));
        } else if (a.construction == "halton_shifted") {
            p = qmc::apply_digital_shift(qmc::halton2d(a.size),
                                         qmc::random_shift(2, a.size, a.seed));
        } else {
            throw qmc::ConfigError("unknown construction: " + a.construction);
        }
    }
    return a.tent ? qmc::tent_pullback(p) : p;
}

void write_or_print(const std::string& path, const std::string& what,
                    const std::function<void(std::ostream&)>& emit) {
    if (path.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw qmc::ConfigError("cannot open " + path + " for writing");
    emit(os);
    std::cerr << "wrote " << what << " to " << path << "\n";
}

const char* mode_name(qmc::WceMode m) {
    switch (m) {
        case qmc::WceMode::Exact: return "exact";
        case qmc::WceMode::Fixed60: return "fixed60";
        default: return "auto";
    }
}

qmc::WceMode parse_mode_arg(const std::string& s) {
    if (s == "exact") return qmc::WceMode::Exact;
    if (s == "fixed60") return qmc::WceMode::Fixed60;
    if (s == "auto") return qmc::WceMode::Auto;
    throw qmc::ConfigError("mode must be exact, fixed60 or auto, got '" + s + "'");
}

qmc::KernelId parse_kernel_arg(const std::string& s) {
    if (s == "K1") return qmc::KernelId::K1;
    if (s == "K2") return qmc::KernelId::K2;
    if (s == "K3") return qmc::KernelId::K3;
    throw qmc::ConfigError("kernel must be K1, K2 or K3, got '" + s + "'");
}

void print_norm_report(std::ostream& os, const char* title, const qmc::NormReport& r,
                       bool per_level) {
    os << title << ": sup = " << r.sup.to_string();
    if (!r.arg_sup.empty()) {
        os << " at j = (";
        for (std::size_t i = 0; i < r.arg_sup.size(); ++i)
            os << (i ? "," : "") << r.arg_sup[i];
        os << ")";
    }
    os << "\n";
    if (!per_level) return;
    for (const auto& lq : r.levels) {
        if (lq.value.sign() == 0) continue;
        os << "  j = (";
        for (std::size_t i = 0; i < lq.j.size(); ++i) os << (i ? "," : "") << lq.j[i];
        os << ")  " << lq.value.to_string() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"digital nets, lattices and exact worst-case quadrature error"};
    app.require_subcommand(1);

    PointArgs gen_args;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen-points", "generate a point set as rational CSV");
    add_point_options(gen, gen_args);
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");

    std::string tp_file;
    int tp_alpha = 0;
    bool tp_bound_only = false;
    CLI::App* tp = app.add_subcommand("t-param", "certify the exact quality parameter t");
    tp->add_option("-f,--matrix-file", tp_file, "generator matrix file")->required();
    tp->add_option("-a,--alpha", tp_alpha, "interlace an order-1 file to this order first");
    tp->add_flag("--bound", tp_bound_only,
                 "print only the interlacing bound, skip the exhaustive search");

    PointArgs wce_args;
    std::string wce_kernel = "K1", wce_mode = "auto";
    int wce_digits = 30, wce_threads = 1;
    CLI::App* wce = app.add_subcommand("wce", "exact worst-case error of the equal-weight rule");
    add_point_options(wce, wce_args);
    wce->add_option("-k,--kernel", wce_kernel, "K1 | K2 | K3")->capture_default_str();
    wce->add_option("--mode", wce_mode, "exact | fixed60 | auto")->capture_default_str();
    wce->add_option("--digits", wce_digits, "digits of the reported error")
        ->capture_default_str();
    wce->add_option("-t,--threads", wce_threads, "worker threads")->capture_default_str();

    std::string fb_function = "bspline", fb_domain = "nonperiodic", fb_out;
    int fb_d = 1, fb_level = 3, fb_nodes = 3;
    std::uint64_t fb_seed = 1;
    bool fb_tent = false, fb_levels = false;
    CLI::App* fb = app.add_subcommand("faber", "hierarchical hat coefficients of a test function");
    fb->add_option("--function", fb_function, "bspline | pwlinear")->capture_default_str();
    fb->add_option("-d,--dim", fb_d, "dimension")->capture_default_str();
    fb->add_option("-J,--level", fb_level, "max level per coordinate")->capture_default_str();
    fb->add_option("--domain", fb_domain, "nonperiodic | periodic")->capture_default_str();
    fb->add_flag("--tent", fb_tent,
                 "push the coefficients through the tent transform (output is periodic)");
    fb->add_option("--nodes", fb_nodes, "interior nodes per pwlinear factor")
        ->capture_default_str();
    fb->add_option("-s,--seed", fb_seed, "pwlinear seed")->capture_default_str();
    fb->add_flag("--levels", fb_levels, "print the full per-level norm tables");
    fb->add_option("-o,--out", fb_out, "coefficient CSV file (default stdout)");

    std::string ex_config, ex_out = "experiment";
    int ex_threads = 0;
    CLI::App* ex = app.add_subcommand("experiment", "run a config-driven convergence sweep");
    ex->add_option("-c,--config", ex_config, "key = value config file")->required();
    ex->add_option("-o,--out", ex_out, "output prefix for <prefix>.csv and <prefix>.gp")
        ->capture_default_str();
    ex->add_option("-t,--threads", ex_threads, "override the config's thread count");

    try {
        app.parse(argc, argv);

        if (gen->parsed()) {
            qmc::PointSet p = make_points(gen_args);
            write_or_print(gen_out, std::to_string(p.size()) + " points",
                           [&](std::ostream& os) { p.write_csv(os); });
        } else if (tp->parsed()) {
            qmc::GeneratorMatrixSet g = qmc::load_matrix_file(tp_file);
            if (tp_alpha > 0 && tp_alpha != g.alpha) {
                if (g.alpha != 1)
                    throw qmc::ConfigError("cannot interlace a file that is already order " +
                                           std::to_string(g.alpha));
                int base_t = qmc::minimal_t(g);
                g = qmc::interlace_matrices(g, tp_alpha);
                std::cout << "base t = " << base_t << ", interlacing bound t <= "
                          << qmc::interlaced_t_bound(base_t, tp_alpha, g.d) << "\n";
                if (tp_bound_only) return 0;
            } else if (tp_bound_only) {
                throw qmc::ConfigError("--bound needs --alpha interlacing");
            }
            int t = qmc::minimal_t(g);
            std::cout << "t = " << t << "  (d = " << g.d << ", n = " << g.n
                      << ", alpha = " << g.alpha << ", strength " << g.n - t << ")\n";
        } else if (wce->parsed()) {
            qmc::PointSet p = make_points(wce_args);
            qmc::WceOptions opts;
            opts.mode = parse_mode_arg(wce_mode);
            if (wce_digits < 1) throw qmc::ConfigError("--digits must be positive");
            opts.digits = static_cast<unsigned>(wce_digits);
            opts.threads = wce_threads;
            qmc::WceResult r = qmc::wce_squared(parse_kernel_arg(wce_kernel), p, opts);
            std::cout << "construction = " << wce_args.construction
                      << (wce_args.tent ? " + tent" : "") << "  d = " << r.dim
                      << "  N = " << r.n_points << "\n";
            std::cout << "kernel = " << qmc::kernel_name(r.kernel)
                      << "  mode = " << mode_name(r.used_mode) << "\n";
            std::cout << "wce   = " << r.error_digits << "\n";
            if (r.used_mode == qmc::WceMode::Exact)
                std::cout << "wce^2 = " << r.squared_error.to_string() << "\n";
            else
                std::cout << "wce^2 = "
                          << qmc::decimal_string(r.squared_error, wce_digits) << "\n";
        } else if (fb->parsed()) {
            qmc::DomainKind kind;
            if (fb_domain == "nonperiodic") kind = qmc::DomainKind::NonPeriodic;
            else if (fb_domain == "periodic") kind = qmc::DomainKind::Periodic;
            else throw qmc::ConfigError("domain must be nonperiodic or periodic");
            if (fb_tent && kind == qmc::DomainKind::Periodic)
                throw qmc::ConfigError("--tent starts from nonperiodic coefficients");

            qmc::TestFunction f =
                fb_function == "bspline"
                    ? qmc::TestFunction::bspline(fb_d)
                    : (fb_function == "pwlinear"
                           ? qmc::random_piecewise_linear_tensor(fb_d, fb_nodes, fb_seed)
                           : throw qmc::ConfigError("function must be bspline or pwlinear"));
            qmc::FaberCoefficients c = qmc::analyze(
                [&](const std::vector<qmc::Rational>& x) { return f.evaluate(x); }, fb_d,
                fb_level, kind);
            if (fb_tent) c = qmc::tent_coefficient_map(c);

            write_or_print(fb_out,
                           std::to_string(c.stored_count()) + " coefficients (" + f.label() + ")",
                           [&](std::ostream& os) { c.write_csv(os); });
            print_norm_report(std::cerr, "dyadic H2 (squared)", qmc::dyadic_h2_norm(c),
                              fb_levels);
            print_norm_report(std::cerr, "besov 1,inf", qmc::besov_1inf_norm(c), fb_levels);
        } else if (ex->parsed()) {
            qmc::ExperimentConfig cfg = qmc::load_config(ex_config);
            if (ex_threads > 0) cfg.threads = ex_threads;
            std::string csv_path = ex_out + ".csv", gp_path = ex_out + ".gp";
            qmc::ExperimentResult r = qmc::run_experiment(cfg, csv_path);

            std::ofstream csv(csv_path);
            if (!csv) throw qmc::ConfigError("cannot open " + csv_path + " for writing");
            csv << r.csv;
            std::ofstream gp(gp_path);
            if (!gp) throw qmc::ConfigError("cannot open " + gp_path + " for writing");
            gp << r.plot_script;

            std::cout << "wrote " << csv_path << " (" << r.records.size() << " rows) and "
                      << gp_path << "\n";
            if (r.slope_valid)
                std::cout << "log2 slope over N in [" << r.window_lo << ", " << r.window_hi
                          << "]: " << r.slope << "\n";
            else
                std::cout << "log2 slope: not enough nonzero errors to fit\n";
        }
        return 0;
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const qmc::BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const qmc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
