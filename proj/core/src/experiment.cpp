#include "qmc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "qmc/errors.hpp"
#include "qmc/kernels.hpp"
#include "qmc/net.hpp"
#include "qmc/numeric.hpp"
#include "qmc/pointsets.hpp"
#include "qmc/tent.hpp"
#include "qmc/testfunction.hpp"

namespace qmc {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long r = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for '" + key + "': " + v);
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("expected true/false for '" + key + "': " + v);
}

bool one_of(const std::string& v, std::initializer_list<const char*> opts) {
    for (const char* o : opts)
        if (v == o) return true;
    return false;
}

double log2_of(const Rational& x) {
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, mpq_numref(x.raw()));
    double md = mpz_get_d_2exp(&ed, mpq_denref(x.raw()));
    return (std::log2(mn) + static_cast<double>(en)) -
           (std::log2(md) + static_cast<double>(ed));
}

WceMode parse_mode(const std::string& s) {
    if (s == "exact") return WceMode::Exact;
    if (s == "fixed60") return WceMode::Fixed60;
    return WceMode::Auto;
}

KernelId parse_kernel(const std::string& s) {
    if (s == "K1") return KernelId::K1;
    if (s == "K2") return KernelId::K2;
    return KernelId::K3;
}

std::string expand_size(const std::string& path, int n) {
    std::string out = path;
    std::size_t at = out.find("{n}");
    if (at == std::string::npos) return out;
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02d", n);
    out.replace(at, 3, buf);
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!one_of(construction, {"net", "fibonacci", "halton", "zaremba", "halton_shifted"}))
        throw ConfigError("unknown construction: " + construction);
    if (!one_of(kernel, {"K1", "K2", "K3", "none"})) throw ConfigError("unknown kernel: " + kernel);
    if (!one_of(test_function, {"pwlinear", "bspline", "none"}))
        throw ConfigError("unknown test_function: " + test_function);
    if ((kernel == "none") == (test_function == "none"))
        throw ConfigError("exactly one of kernel and test_function must be set");
    if (!one_of(mode, {"exact", "fixed60", "auto"})) throw ConfigError("unknown mode: " + mode);
    if (d < 1 || d > 64) throw ConfigError("dimension out of range");
    if (replicates < 1 || replicates > 100000) throw ConfigError("replicates out of range");
    if (precision_digits < 1 || precision_digits > 1000)
        throw ConfigError("precision_digits out of range");
    if (threads < 1 || threads > 64) throw ConfigError("threads out of range");
    if (pw_nodes < 0 || pw_nodes > 4096) throw ConfigError("pw_nodes out of range");

    if (construction == "fibonacci") {
        if (d != 2) throw ConfigError("fibonacci construction is two-dimensional");
        if (m_min < 2 || m_max < m_min || m_max > 92)
            throw ConfigError("fibonacci needs 2 <= m_min <= m_max <= 92");
    } else {
        if (n_min < 0 || n_max < n_min || n_max > 26)
            throw ConfigError("need 0 <= n_min <= n_max <= 26");
        if (construction == "net") {
            if (matrix_file.empty()) throw ConfigError("net construction needs matrix_file");
            if (alpha < 0 || alpha > 8) throw ConfigError("alpha out of range");
        } else {
            if (d != 2) throw ConfigError(construction + " construction is two-dimensional");
            if (n_min < 1) throw ConfigError(construction + " needs n_min >= 1");
        }
    }
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");

        if (key == "construction") cfg.construction = val;
        else if (key == "matrix_file") cfg.matrix_file = val;
        else if (key == "alpha") cfg.alpha = static_cast<int>(to_long(key, val));
        else if (key == "tent") cfg.tent = to_bool(key, val);
        else if (key == "kernel") cfg.kernel = val;
        else if (key == "test_function") cfg.test_function = val;
        else if (key == "d") cfg.d = static_cast<int>(to_long(key, val));
        else if (key == "n_min") cfg.n_min = static_cast<int>(to_long(key, val));
        else if (key == "n_max") cfg.n_max = static_cast<int>(to_long(key, val));
        else if (key == "m_min") cfg.m_min = static_cast<int>(to_long(key, val));
        else if (key == "m_max") cfg.m_max = static_cast<int>(to_long(key, val));
        else if (key == "replicates") cfg.replicates = static_cast<int>(to_long(key, val));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(key, val));
        else if (key == "precision_digits") cfg.precision_digits = static_cast<int>(to_long(key, val));
        else if (key == "mode") cfg.mode = val;
        else if (key == "threads") cfg.threads = static_cast<int>(to_long(key, val));
        else if (key == "pw_nodes") cfg.pw_nodes = static_cast<int>(to_long(key, val));
        else if (key == "timing") cfg.timing = to_bool(key, val);
        else if (key == "window_n_min") cfg.window_n_min = to_long(key, val);
        else if (key == "window_n_max") cfg.window_n_max = to_long(key, val);
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in);
}

std::pair<double, bool> fit_log2_slope(
    const std::vector<std::pair<std::uint64_t, Rational>>& points) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& [n, err] : points) {
        if (err.sign() <= 0) continue;
        xy.emplace_back(std::log2(static_cast<double>(n)), log2_of(err));
    }
    if (xy.size() < 2) return {0.0, false};
    double mx = 0, my = 0;
    for (auto& [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(xy.size());
    my /= static_cast<double>(xy.size());
    double sxx = 0, sxy = 0;
    for (auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) return {0.0, false};
    return {sxy / sxx, true};
}

PointSet build_point_set(const ExperimentConfig& cfg, int size_param, std::uint64_t rep_seed) {
    PointSet p;
    if (cfg.construction == "net") {
        GeneratorMatrixSet g = load_matrix_file(expand_size(cfg.matrix_file, size_param));
        if (g.n != size_param)
            throw ConfigError("matrix file declares n=" + std::to_string(g.n) + ", wanted n=" +
                              std::to_string(size_param));
        if (cfg.alpha > 0 && cfg.alpha != g.alpha) {
            if (g.alpha != 1)
                throw ConfigError("cannot interlace a file that is already order " +
                                  std::to_string(g.alpha));
            g = interlace_matrices(g, cfg.alpha);
        }
        if (g.d != cfg.d)
            throw ConfigError("matrix set yields d=" + std::to_string(g.d) + ", config wants d=" +
                              std::to_string(cfg.d));
        p = net_points(g);
    } else if (cfg.construction == "fibonacci") {
        p = fibonacci_lattice(size_param);
    } else if (cfg.construction == "halton") {
        p = halton2d(size_param);
    } else if (cfg.construction == "zaremba") {
        p = zaremba_shift(halton2d(size_param));
    } else if (cfg.construction == "halton_shifted") {
        p = apply_digital_shift(halton2d(size_param), random_shift(2, size_param, rep_seed));
    } else {
        throw ConfigError("unknown construction: " + cfg.construction);
    }
    return cfg.tent ? tent_pullback(p) : p;
}

namespace {

struct SizeCase {
    int param;  // n or m
    std::uint64_t n_points;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& csv_name) {
    cfg.validate();

    std::vector<SizeCase> sizes;
    if (cfg.construction == "fibonacci") {
        for (int m = cfg.m_min; m <= cfg.m_max; ++m) sizes.push_back({m, fibonacci(m)});
    } else {
        for (int n = cfg.n_min; n <= cfg.n_max; ++n)
            sizes.push_back({n, std::uint64_t{1} << n});
    }

    const bool use_wce = cfg.kernel != "none";
    const bool randomized =
        cfg.construction == "halton_shifted" || (!use_wce && cfg.test_function == "pwlinear");
    const int reps = randomized ? cfg.replicates : 1;

    std::string transform = cfg.construction == "halton_shifted"
                                ? "shift:" + std::to_string(cfg.seed)
                                : std::string("none");
    if (cfg.tent) transform = transform == "none" ? "tent" : transform + "+tent";

    ExperimentResult result;
    for (const SizeCase& sz : sizes) {
        auto t0 = std::chrono::steady_clock::now();

        Rational err_sum;
        Rational single_squared;
        std::string single_digits;
        for (int r = 0; r < reps; ++r) {
            std::uint64_t rep_seed = cfg.seed + static_cast<std::uint64_t>(r);
            PointSet p = build_point_set(cfg, sz.param, rep_seed);

            if (use_wce) {
                WceOptions opts;
                opts.mode = parse_mode(cfg.mode);
                opts.threads = cfg.threads;
                opts.digits = static_cast<unsigned>(cfg.precision_digits);
                WceResult w = wce_squared(parse_kernel(cfg.kernel), p, opts);
                err_sum += rational_from_decimal(w.error_digits);
                if (reps == 1) {
                    single_squared = w.squared_error;
                    single_digits = w.error_digits;
                }
            } else {
                TestFunction f = cfg.test_function == "bspline"
                                     ? TestFunction::bspline(cfg.d)
                                     : random_piecewise_linear_tensor(cfg.d, cfg.pw_nodes, rep_seed);
                Rational e = (qmc_estimate(f, p) - f.integral()).abs();
                err_sum += e;
                if (reps == 1) single_squared = e * e;
            }
        }

        ExperimentRecord rec;
        rec.construction = cfg.construction;
        rec.transform = transform;
        rec.kernel_or_function = use_wce ? cfg.kernel : cfg.test_function;
        rec.d = cfg.d;
        rec.n_points = sz.n_points;
        rec.error_value = err_sum / Rational(reps);
        rec.squared_error = reps == 1 ? single_squared : rec.error_value * rec.error_value;
        rec.error = !single_digits.empty() ? single_digits
                                           : decimal_string(rec.error_value, cfg.precision_digits);
        auto t1 = std::chrono::steady_clock::now();
        rec.seconds = cfg.timing ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
        result.records.push_back(std::move(rec));
    }

    // slope over the configured window (default: everything)
    std::vector<std::pair<std::uint64_t, Rational>> pts;
    std::uint64_t lo = cfg.window_n_min >= 0 ? static_cast<std::uint64_t>(cfg.window_n_min)
                                             : sizes.front().n_points;
    std::uint64_t hi = cfg.window_n_max >= 0 ? static_cast<std::uint64_t>(cfg.window_n_max)
                                             : sizes.back().n_points;
    for (const auto& r : result.records)
        if (r.n_points >= lo && r.n_points <= hi) pts.emplace_back(r.n_points, r.error_value);
    auto [slope, ok] = fit_log2_slope(pts);
    result.slope = slope;
    result.slope_valid = ok;
    result.window_lo = lo;
    result.window_hi = hi;

    std::ostringstream csv;
    csv << "construction,transform,kernel_or_function,d,N,error,squared_error_num,"
           "squared_error_den,seconds\n";
    for (const auto& r : result.records) {
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.6f", r.seconds);
        csv << r.construction << ',' << r.transform << ',' << r.kernel_or_function << ',' << r.d
            << ',' << r.n_points << ',' << r.error << ',' << r.squared_error.num_string() << ','
            << r.squared_error.den_string() << ',' << secs << '\n';
    }
    result.csv = csv.str();

    std::ostringstream plot;
    plot << "# gnuplot script generated alongside " << csv_name << "\n"
         << "set datafile separator ','\n"
         << "set logscale xy\n"
         << "set xlabel 'N'\n"
         << "set ylabel 'error'\n"
         << "set format y '%.1e'\n"
         << "set key top right\n"
         << "plot '" << csv_name << "' skip 1 using 5:6 with linespoints title '"
         << cfg.construction << " / " << transform << " / "
         << (use_wce ? cfg.kernel : cfg.test_function) << "'\n";
    result.plot_script = plot.str();
    return result;
}

}  // namespace qmc
