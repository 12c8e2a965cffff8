// Command-line front end: evaluate the information matrix, scan quantities over
// delay grids, verify exclusive-zero-coincidence, probe weak commutativity,
// compare the numeric engine against the closed-form reference, and analyze the
// no-control baseline. Everything prints deterministically for a given config
// and seed. Exit codes: 0 ok, 2 config/parse error, 3 numeric failure,
// 4 verification failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ghom/ezc.hpp"
#include "ghom/oracle.hpp"
#include "ghom/qfim.hpp"
#include "ghom/spectra.hpp"
#include "ghom/textio.hpp"

namespace {

using namespace ghom;

constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Option plumbing: every value is carried as a string so that command line,
// config file, and defaults merge with one rule (flags > file > defaults) and
// the effective configuration can be echoed verbatim into every output.
// ---------------------------------------------------------------------------

struct OptionBag {
    CLI::App* cmd = nullptr;
    std::vector<std::string> order;                  // registration order, for the echo
    std::map<std::string, std::string> value;        // storage bound to CLI11
    std::map<std::string, std::string> fallback;     // built-in defaults
    std::map<std::string, bool> flag_value;
    std::vector<std::string> flag_order;

    void add(const std::string& name, const std::string& def, const std::string& desc) {
        order.push_back(name);
        fallback[name] = def;
        value[name] = "";
        cmd->add_option("--" + name, value[name], desc);
    }

    void add_flag(const std::string& name, const std::string& desc) {
        flag_order.push_back(name);
        flag_value[name] = false;
        cmd->add_flag("--" + name, flag_value[name], desc);
    }

    // Fill unset options from the config file, then from the defaults.
    void merge_config() {
        const std::string path = value["config"].empty() ? fallback["config"] : value["config"];
        std::map<std::string, std::string> file_vals;
        std::map<std::string, bool> file_flags;
        if (!path.empty()) {
            for (const auto& [key, val] : parse_config_file(path)) {
                if (flag_value.count(key)) {
                    file_flags[key] = (val == "true" || val == "1" || val == "yes");
                    continue;
                }
                if (!value.count(key))
                    throw ConfigError("config file option '" + key + "' is not recognized");
                file_vals[key] = val;
            }
        }
        for (const std::string& name : order) {
            if (cmd->count("--" + name) > 0) continue;  // command line wins
            if (file_vals.count(name))
                value[name] = file_vals[name];
            else
                value[name] = fallback[name];
        }
        for (const std::string& name : flag_order)
            if (cmd->count("--" + name) == 0 && file_flags.count(name))
                flag_value[name] = file_flags[name];
    }

    const std::string& get(const std::string& name) const { return value.at(name); }
    bool flag(const std::string& name) const { return flag_value.at(name); }
    bool provided(const std::string& name) const {
        return cmd->count("--" + name) > 0 || value.at(name) != fallback.at(name);
    }
};

void add_common_options(OptionBag& bag) {
    bag.add("config", "", "config file, one 'key = value' per line, '#' comments");
    bag.add("k", "", "number of phase modules (default 2, or inferred from --tau)");
    bag.add("tau", "", "comma-separated delays tau_1..tau_k (default all 0)");
    bag.add("theta", "",
            "comma-separated achromatic phases theta_2..theta_k; accepts pi/2, pi/3, pi/4, "
            "pi/6, acos(1/sqrt3)");
    bag.add("theta2", "", "shorthand for --theta with k=2");
    bag.add("omega0", "5", "JSA center frequency");
    bag.add("omega1", "0.3333333333333333", "JSA sum-coordinate spread");
    bag.add("omega2", "1", "JSA difference-coordinate spread (global frequency unit)");
    bag.add("nodes", "80", "quadrature nodes per axis");
    bag.add("out", "", "write CSV here (default: stdout)");
    bag.add("copies", "1", "number of probe copies M for the covariance bounds");
    bag.add("seed", "42", "seed for randomized draws");
    bag.add("precision", "12", "significant digits in printed floats");
    bag.add("threads", "1", "worker threads for grid scans (output order is fixed)");
    bag.add_flag("no-controls", "disable the beam splitters (intertwined baseline)");
}

struct CommonConfig {
    int k = 2;
    std::vector<double> tau;
    std::vector<double> theta;  // theta_2..theta_k
    bool controls = true;
    GaussianJsaParams jsa;
    int nodes = 80;
    std::string out;
    int copies = 1;
    std::uint64_t seed = 42;
    int precision = 12;
    int threads = 1;
    bool theta_given = false;
};

CommonConfig parse_common(const OptionBag& bag) {
    CommonConfig c;

    if (!bag.get("tau").empty()) c.tau = parse_double_list(bag.get("tau"));
    if (!bag.get("k").empty()) {
        c.k = parse_int(bag.get("k"));
        if (c.k < 1) throw ConfigError("k must be >= 1");
        if (!c.tau.empty() && static_cast<int>(c.tau.size()) != c.k)
            throw ConfigError("--tau has " + std::to_string(c.tau.size()) +
                              " entries but k = " + std::to_string(c.k));
    } else if (!c.tau.empty()) {
        c.k = static_cast<int>(c.tau.size());
    }
    if (c.tau.empty()) c.tau.assign(c.k, 0.0);

    const bool has_theta = !bag.get("theta").empty();
    const bool has_theta2 = !bag.get("theta2").empty();
    if (has_theta && has_theta2)
        throw ConfigError("give either --theta or --theta2, not both");
    if (has_theta) {
        c.theta = parse_angle_list(bag.get("theta"));
        c.theta_given = true;
    } else if (has_theta2) {
        if (c.k != 2) throw ConfigError("--theta2 is the k=2 shorthand; use --theta for k=" +
                                        std::to_string(c.k));
        c.theta = {parse_angle(bag.get("theta2"))};
        c.theta_given = true;
    } else {
        // defaults: the exclusive-zero-coincidence phase for k=2, otherwise flat
        c.theta.assign(c.k - 1, 0.0);
        if (c.k == 2) c.theta[0] = kPi / 2.0;
    }
    if (static_cast<int>(c.theta.size()) != c.k - 1)
        throw ConfigError("expected " + std::to_string(c.k - 1) +
                          " phases theta_2..theta_k, got " + std::to_string(c.theta.size()));

    c.controls = !bag.flag("no-controls");
    c.jsa.omega0 = parse_double(bag.get("omega0"));
    c.jsa.omega1 = parse_double(bag.get("omega1"));
    c.jsa.omega2 = parse_double(bag.get("omega2"));
    c.jsa.validate();
    c.nodes = parse_int(bag.get("nodes"));
    c.out = bag.get("out");
    c.copies = parse_int(bag.get("copies"));
    c.seed = std::strtoull(bag.get("seed").c_str(), nullptr, 10);
    c.precision = parse_int(bag.get("precision"));
    if (c.precision < 1 || c.precision > 17) throw ConfigError("precision must be in [1, 17]");
    c.threads = std::max(1, parse_int(bag.get("threads")));
    return c;
}

InterferometerLayout layout_of(const CommonConfig& c) {
    return InterferometerLayout::make(c.tau, c.theta, c.controls);
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

std::string join_formatted(const std::vector<double>& v, int prec, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += format_sig(v[i], prec);
    }
    return s;
}

std::vector<std::pair<std::string, std::string>> echo_entries(const std::string& sub,
                                                              const CommonConfig& c,
                                                              const OptionBag& bag) {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("command", sub);
    e.emplace_back("k", std::to_string(c.k));
    e.emplace_back("tau", join_formatted(c.tau, c.precision));
    e.emplace_back("theta", c.theta.empty() ? "-" : join_formatted(c.theta, c.precision));
    e.emplace_back("controls", c.controls ? "on" : "off");
    e.emplace_back("omega0", format_sig(c.jsa.omega0, c.precision));
    e.emplace_back("omega1", format_sig(c.jsa.omega1, c.precision));
    e.emplace_back("omega2", format_sig(c.jsa.omega2, c.precision));
    e.emplace_back("nodes", std::to_string(c.nodes));
    e.emplace_back("copies", std::to_string(c.copies));
    e.emplace_back("seed", std::to_string(c.seed));
    e.emplace_back("precision", std::to_string(c.precision));
    e.emplace_back("threads", std::to_string(c.threads));
    for (const std::string extra : {"quantity", "vary", "range1", "range2", "grid", "tol",
                                    "samples"})
        if (bag.value.count(extra)) e.emplace_back(extra, bag.get(extra));
    return e;
}

void print_echo(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& e) {
    for (const auto& [k, v] : e) os << "# " << k << " = " << v << "\n";
}

// Sink that is either stdout or a file.
struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw ConfigError("cannot open output file '" + path + "'");
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

void write_pgm(const std::string& path, const std::vector<double>& vals, int rows, int cols) {
    double lo = vals[0], hi = vals[0];
    for (double v : vals) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open plot file '" + path + "'");
    f << "P5\n" << cols << " " << rows << "\n255\n";
    // row 0 at the top = largest axis1 value, image convention
    for (int r = rows - 1; r >= 0; --r)
        for (int cidx = 0; cidx < cols; ++cidx) {
            const double v = (vals[r * cols + cidx] - lo) / span;
            f.put(static_cast<char>(std::lround(v * 255.0)));
        }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_qfim(const CommonConfig& c, const OptionBag& bag) {
    Output out(c.out);
    std::ostream& os = out.stream();
    print_echo(os, echo_entries("qfim", c, bag));

    const Quadrature quad = build_quadrature(c.jsa, c.nodes);
    const InterferometerLayout layout = layout_of(c);
    const EvalPoint point{layout, c.jsa, &quad};
    const QfimMatrix H = qfim(point);
    const int k = c.k;

    os << "qfim k=" << k << "\n";
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) os << (j ? "," : "") << format_sig(H(i, j), c.precision);
        os << "\n";
    }
    os << "det = " << format_sig(qfim_det(H), c.precision) << "\n";

    try {
        const QcrbBounds b = qcrb_bounds(H, c.copies);
        os << "inverse_diag_bounds = " << join_formatted(b.inverse_diag, c.precision) << "\n";
        os << "diag_reciprocal_bounds = " << join_formatted(b.diag_reciprocal, c.precision)
           << "\n";
    } catch (const SingularMatrixError& e) {
        const SpectrumReport rep = qfim_spectrum(H);
        os << "singular = true\n";
        os << "eigenvalues = ";
        for (int i = 0; i < rep.eigenvalues.size(); ++i)
            os << (i ? "," : "") << format_sig(rep.eigenvalues[i], c.precision);
        os << "\n";
        os << "null_direction = " << join_formatted(e.null_direction, c.precision) << "\n";
        os << "diagnostic = " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int cmd_baseline(const CommonConfig& c_in, const OptionBag& bag) {
    CommonConfig c = c_in;
    c.controls = false;
    Output out(c.out);
    std::ostream& os = out.stream();
    print_echo(os, echo_entries("baseline", c, bag));

    const Quadrature quad = build_quadrature(c.jsa, c.nodes);
    const InterferometerLayout layout = layout_of(c);
    const EvalPoint point{layout, c.jsa, &quad};
    const QfimMatrix H = qfim(point);
    const SpectrumReport rep = qfim_spectrum(H);

    os << "baseline k=" << c.k << " (no quantum controls: delays share one generator)\n";
    for (int i = 0; i < c.k; ++i) {
        for (int j = 0; j < c.k; ++j) os << (j ? "," : "") << format_sig(H(i, j), c.precision);
        os << "\n";
    }
    os << "eigenvalues = ";
    for (int i = 0; i < rep.eigenvalues.size(); ++i)
        os << (i ? "," : "") << format_sig(rep.eigenvalues[i], c.precision);
    os << "\n";
    os << "rank = " << rep.rank << "\n";

    Eigen::VectorXd top = rep.eigenvectors.col(c.k - 1);
    if (top.sum() < 0) top = -top;
    std::vector<double> topv(top.data(), top.data() + top.size());
    os << "informative_direction = " << join_formatted(topv, c.precision) << "\n";
    os << "null_direction = " << join_formatted(rep.null_direction, c.precision) << "\n";
    os << "tau_sum_qfi = "
       << format_sig(rep.eigenvalues[rep.eigenvalues.size() - 1] / c.k, c.precision) << "\n";
    os << "note = only the delay sum " << (c.k > 1 ? "tau_1+...+tau_k" : "tau_1")
       << " is estimable; individual delays are intertwined\n";
    return 0;
}

struct ScanAxes {
    int i1 = 0;  // 0-based module indices
    int i2 = 1;
    std::string name1 = "tau1";
    std::string name2 = "tau2";
};

ScanAxes parse_vary(const std::string& text, int k) {
    std::istringstream is(text);
    std::string a, b;
    if (!std::getline(is, a, ',') || !std::getline(is, b, ','))
        throw ConfigError("--vary needs two comma-separated delay axes, e.g. tau1,tau2");
    auto index_of = [k](const std::string& n) {
        if (n.rfind("tau", 0) != 0) throw ConfigError("unknown scan axis '" + n + "'");
        const int i = parse_int(n.substr(3));
        if (i < 1 || i > k)
            throw ConfigError("scan axis '" + n + "' out of range for k=" + std::to_string(k));
        return i - 1;
    };
    ScanAxes ax;
    ax.i1 = index_of(a);
    ax.i2 = index_of(b);
    ax.name1 = a;
    ax.name2 = b;
    if (ax.i1 == ax.i2) throw ConfigError("--vary axes must differ");
    return ax;
}

int cmd_scan(const CommonConfig& c, const OptionBag& bag) {
    const std::string quantity = bag.get("quantity");
    const std::set<std::string> known{"det", "h11", "h22", "h12", "coincidence"};
    if (!known.count(quantity))
        throw ConfigError("unknown quantity '" + quantity +
                          "' (det, h11, h22, h12, coincidence)");
    const ScanAxes ax = parse_vary(bag.get("vary"), c.k);
    const RangeSpec r1 = parse_range(bag.get("range1"));
    const RangeSpec r2 = parse_range(bag.get("range2"));
    const std::vector<double> p1 = r1.points();
    const std::vector<double> p2 = r2.points();

    const Quadrature quad = build_quadrature(c.jsa, c.nodes);
    const InterferometerLayout base = layout_of(c);

    const std::size_t total = p1.size() * p2.size();
    std::vector<double> vals(total);

    auto eval_range = [&](std::size_t begin, std::size_t end) {
        InterferometerLayout probe = base;
        for (std::size_t idx = begin; idx < end; ++idx) {
            probe.modules[ax.i1].tau = p1[idx / p2.size()];
            probe.modules[ax.i2].tau = p2[idx % p2.size()];
            if (quantity == "coincidence") {
                vals[idx] = coincidence(probe, quad);
            } else {
                const EvalPoint point{probe, c.jsa, &quad};
                const QfimMatrix H = qfim(point);
                if (quantity == "det")
                    vals[idx] = qfim_det(H);
                else if (quantity == "h11")
                    vals[idx] = H(0, 0);
                else if (quantity == "h22")
                    vals[idx] = H(1, 1);
                else
                    vals[idx] = H(0, 1);
            }
        }
    };

    if (c.threads <= 1) {
        eval_range(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + c.threads - 1) / c.threads;
        for (int t = 0; t < c.threads; ++t) {
            const std::size_t b = std::min(total, t * chunk);
            const std::size_t e = std::min(total, b + chunk);
            if (b < e) pool.emplace_back(eval_range, b, e);
        }
        for (auto& th : pool) th.join();
    }

    Output out(c.out);
    std::ostream& os = out.stream();
    print_echo(os, echo_entries("scan", c, bag));
    os << ax.name1 << "," << ax.name2 << "," << quantity << "\n";
    for (std::size_t idx = 0; idx < total; ++idx) {
        os << format_sig(p1[idx / p2.size()], c.precision) << ","
           << format_sig(p2[idx % p2.size()], c.precision) << ","
           << format_sig(vals[idx], c.precision) << "\n";
    }

    if (bag.flag("plot")) {
        if (c.out.empty()) throw ConfigError("--plot needs --out to name the image file");
        write_pgm(c.out + ".pgm", vals, static_cast<int>(p1.size()),
                  static_cast<int>(p2.size()));
    }
    return 0;
}

int cmd_ezc(const CommonConfig& c_in, const OptionBag& bag) {
    CommonConfig c = c_in;
    if (bag.flag("ezc-phases")) {
        const EzcPhases ph = ezc_phase_solution(c.k);  // throws for k=3: no solution
        c.theta = ph.thetas;
    }
    const RangeSpec g = parse_range(bag.get("grid"));
    const double tol = parse_double(bag.get("tol"));
    EzcGrid grid{g.min, g.max, g.count};

    const Quadrature quad = build_quadrature(c.jsa, c.nodes);
    const InterferometerLayout layout = layout_of(c);
    const EzcReport rep = ezc_verify(layout, quad, grid, tol);

    std::cout << rep.summary() << "\n";
    if (!c.out.empty()) {
        Output out(c.out);
        std::ostream& os = out.stream();
        print_echo(os, echo_entries("ezc", c, bag));
        for (int i = 1; i <= c.k; ++i) os << "tau" << i << ",";
        os << "R\n";
        InterferometerLayout probe = layout;
        for (const auto& pt : rep.zero_points) {
            for (int i = 0; i < c.k; ++i) probe.modules[i].tau = pt[i];
            os << join_formatted(pt, c.precision) << ","
               << format_sig(coincidence(probe, quad), c.precision) << "\n";
        }
    }
    return rep.pass ? 0 : 4;
}

int cmd_weakcomm(const CommonConfig& c, const OptionBag& bag) {
    const int samples = parse_int(bag.get("samples"));
    if (samples < 1) throw ConfigError("--samples must be >= 1");
    const Quadrature quad = build_quadrature(c.jsa, c.nodes);

    UniformRng rng(c.seed);
    double worst = 0.0;
    std::vector<double> worst_tau(c.k, 0.0);
    double worst_theta2 = c.k == 2 ? c.theta[0] : 0.0;
    int worst_i = 1, worst_j = 2;

    InterferometerLayout probe = layout_of(c);
    for (int s = 0; s < samples; ++s) {
        for (int i = 0; i < c.k; ++i) probe.modules[i].tau = rng.uniform(-3.0, 3.0);
        // with k=2 and no explicit phase the draw roams over theta2 as well
        if (c.k == 2 && !c.theta_given) probe.modules[1].theta = rng.uniform(0.0, 2.0 * kPi);

        const EvalPoint point{probe, c.jsa, &quad};
        const OverlapSet ov = overlaps(point);
        for (int i = 0; i < c.k; ++i)
            for (int j = i + 1; j < c.k; ++j) {
                const double im = std::abs(std::imag(ov.d(i, j)));
                if (im > worst) {
                    worst = im;
                    for (int t = 0; t < c.k; ++t) worst_tau[t] = probe.modules[t].tau;
                    worst_theta2 = c.k >= 2 ? probe.modules[1].theta : 0.0;
                    worst_i = i + 1;
                    worst_j = j + 1;
                }
            }
    }

    Output out(c.out);
    std::ostream& os = out.stream();
    print_echo(os, echo_entries("weakcomm", c, bag));
    os << "samples = " << samples << "\n";
    os << "max_abs_im_overlap = " << format_sig(worst, c.precision) << "\n";
    os << "worst_pair = " << worst_i << "," << worst_j << "\n";
    os << "worst_tau = " << join_formatted(worst_tau, c.precision) << "\n";
    if (c.k == 2) os << "worst_theta2 = " << format_sig(worst_theta2, c.precision) << "\n";
    os << "compatible = " << (worst <= 1e-9 ? "yes" : "no") << "\n";
    return 0;
}

int cmd_oracle_diff(const CommonConfig& c, const OptionBag& bag) {
    if (c.k != 2)
        throw ConfigError("the closed-form reference covers k=2 only");
    const double th2 = c.theta.at(0);
    if (std::abs(th2 - kPi / 2.0) > 1e-12)
        throw ConfigError("the closed-form information entries hold only at theta2 = pi/2; "
                          "rerun with --theta2 pi/2");

    oracle::self_check(1000, c.seed);

    oracle::OracleParams op;
    op.omega0 = c.jsa.omega0;
    op.omega1 = c.jsa.omega1;
    op.omega2 = c.jsa.omega2;

    const RangeSpec r1 = parse_range(bag.get("range1"));
    const RangeSpec r2 = parse_range(bag.get("range2"));
    const Quadrature quad = build_quadrature(c.jsa, c.nodes);

    // deviation measure: relative where the closed form is appreciable,
    // absolute where it sits below 1e-3
    auto deviation = [](double numeric, double closed) {
        const double diff = std::abs(numeric - closed);
        return std::abs(closed) >= 1e-3 ? diff / std::abs(closed) : diff;
    };

    double dev11 = 0.0, dev22 = 0.0, dev12 = 0.0;
    InterferometerLayout probe = layout_of(c);
    Output out(c.out);
    std::ostream& os = out.stream();
    print_echo(os, echo_entries("oracle-diff", c, bag));
    os << "tau1,tau2,h11_num,h11_closed,h22_num,h22_closed,h12_num,h12_closed\n";
    for (double t1 : r1.points()) {
        for (double t2 : r2.points()) {
            probe.modules[0].tau = t1;
            probe.modules[1].tau = t2;
            const EvalPoint point{probe, c.jsa, &quad};
            const QfimMatrix H = qfim(point);
            const double c11 = oracle::h11_closed(t1, t2, op);
            const double c22 = oracle::h22_closed(t1, t2, op);
            const double c12 = oracle::h12_closed(t1, t2, op);
            dev11 = std::max(dev11, deviation(H(0, 0), c11));
            dev22 = std::max(dev22, deviation(H(1, 1), c22));
            dev12 = std::max(dev12, deviation(H(0, 1), c12));
            os << format_sig(t1, c.precision) << "," << format_sig(t2, c.precision) << ","
               << format_sig(H(0, 0), c.precision) << "," << format_sig(c11, c.precision) << ","
               << format_sig(H(1, 1), c.precision) << "," << format_sig(c22, c.precision) << ","
               << format_sig(H(0, 1), c.precision) << "," << format_sig(c12, c.precision)
               << "\n";
        }
    }
    os << "# max_deviation_h11 = " << format_sig(dev11, c.precision) << "\n";
    os << "# max_deviation_h22 = " << format_sig(dev22, c.precision) << "\n";
    os << "# max_deviation_h12 = " << format_sig(dev12, c.precision) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Hong-Ou-Mandel interferometer: information matrices, "
                 "coincidence statistics, and estimability diagnostics"};
    app.require_subcommand(1);

    struct Sub {
        std::string name;
        std::string desc;
        OptionBag bag;
    };
    std::vector<Sub> subs;
    subs.push_back({"qfim", "information matrix, determinant, covariance bounds at one point",
                    {}});
    subs.push_back({"scan", "CSV scan of det/h11/h22/h12/coincidence over two delay axes", {}});
    subs.push_back({"ezc", "verify that zero coincidence happens only at zero delays", {}});
    subs.push_back({"weakcomm", "max |Im <d_i Psi | d_j Psi>| over seeded random draws", {}});
    subs.push_back({"oracle-diff", "numeric engine vs closed-form reference on a delay grid",
                    {}});
    subs.push_back({"baseline", "no-control device: rank, directions, delay-sum information",
                    {}});

    for (Sub& s : subs) {
        s.bag.cmd = app.add_subcommand(s.name, s.desc);
        add_common_options(s.bag);
        if (s.name == "scan") {
            s.bag.add("quantity", "det", "det, h11, h22, h12, or coincidence");
            s.bag.add("vary", "tau1,tau2", "the two delay axes to scan");
            s.bag.add("range1", "-3:3:121", "axis 1 as min:max:count");
            s.bag.add("range2", "-3:3:121", "axis 2 as min:max:count");
            s.bag.add_flag("plot", "also write a grayscale .pgm image next to the CSV");
        } else if (s.name == "ezc") {
            s.bag.add("grid", "-3:3:41", "per-axis delay grid as min:max:count (must contain 0)");
            s.bag.add("tol", "1e-6", "coincidence threshold counted as zero");
            s.bag.add_flag("ezc-phases", "use the tabulated zero-coincidence phases for this k");
        } else if (s.name == "weakcomm") {
            s.bag.add("samples", "100", "number of random draws");
        } else if (s.name == "oracle-diff") {
            s.bag.add("range1", "-3:3:41", "tau1 axis as min:max:count");
            s.bag.add("range2", "-3:3:41", "tau2 axis as min:max:count");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        for (Sub& s : subs) {
            if (!s.bag.cmd->parsed()) continue;
            s.bag.merge_config();
            const CommonConfig c = parse_common(s.bag);
            if (s.name == "qfim") return cmd_qfim(c, s.bag);
            if (s.name == "scan") return cmd_scan(c, s.bag);
            if (s.name == "ezc") return cmd_ezc(c, s.bag);
            if (s.name == "weakcomm") return cmd_weakcomm(c, s.bag);
            if (s.name == "oracle-diff") return cmd_oracle_diff(c, s.bag);
            if (s.name == "baseline") return cmd_baseline(c, s.bag);
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SingularMatrixError& e) {
        std::cerr << "singular: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
