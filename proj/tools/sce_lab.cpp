#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sce/airy.hpp"
#include "sce/errors.hpp"
#include "sce/lab.hpp"

using namespace sce;

namespace {

struct SweepOptions {
    std::string g = "1";
    std::string z = "1";
    std::string q = "4";
    int NN = 2;
    int N = 20;
    std::string orders;
    std::string schedule = "4/3";
    std::string axis = "N";
    std::string grid;
    std::string oracle = "closed";
    std::string target = "quartic";
};

struct Globals {
    std::string config;
    std::string emit;
    bool full = false;
    int digits = 30;
    int threads = 1;
    std::string output;
    bool timing = false;
};

void add_sweep_options(CLI::App* sub, SweepOptions& o, bool airy)
{
    if (airy)
        sub->add_option("--z", o.z, "coupling z as re or re,im (modulus for an arg sweep)");
    else
        sub->add_option("--g", o.g, "coupling g, e.g. 1, 0.01 or 1/160");
    sub->add_option("--N", o.N, "order for alpha, coupling and arg sweeps");
    sub->add_option("--orders", o.orders, "order axis, first:last[:step] or a list");
    sub->add_option("--schedule", o.schedule, "moment schedule M(N): 4/3, 1.5, pow:2.5[:c]");
    sub->add_option("--axis", o.axis, "swept axis")->check(CLI::IsMember({"N", "alpha", "g", "arg"}));
    sub->add_option("--grid", o.grid, "values for the alpha, g or arg axis, [log:]lo:hi:count or a list");
    sub->add_option("--oracle", o.oracle, "reference values")->check(CLI::IsMember({"closed", "quadrature"}));
}

SweepSpec make_spec(Target target, const SweepOptions& o, const Globals& gl)
{
    int wd = 3 * gl.digits + 10;
    SweepSpec spec;
    spec.target = target;
    spec.coupling = parse_coupling(target == Target::airy ? o.z : o.g, wd);
    spec.q = parse_number(o.q, wd);
    spec.NN = o.NN;
    spec.N = o.N;
    spec.schedule = MomentSchedule::parse(o.schedule);
    spec.axis = parse_axis(o.axis);
    if (spec.axis == Axis::order)
        spec.orders = parse_orders(o.orders.empty() ? "0:" + std::to_string(o.N) : o.orders);
    else
        spec.grid = parse_grid(o.grid, wd);
    spec.oracle = o.oracle == "quadrature" ? Oracle::quadrature : Oracle::closed_form;
    spec.target_digits = gl.digits;
    spec.threads = gl.threads;
    spec.timing = gl.timing;
    return spec;
}

// Flat config values fill in options that were not given on the command line.
void apply_config(CLI::App& app, CLI::App* sub, const Config& cfg)
{
    for (const auto& [key, value] : cfg.values) {
        CLI::Option* opt = sub != nullptr ? sub->get_option_no_throw("--" + key) : nullptr;
        if (opt == nullptr)
            opt = app.get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw DomainError("config key not understood by this command: " + key);
        if (opt->count() > 0)
            continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw DomainError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

int report_errors(const ConvergenceSeries& rows)
{
    int failed = 0;
    for (const auto& r : rows)
        if (!r.ok()) {
            std::cerr << "point N=" << r.N << " g=" << r.g.re().str(12) << "," << r.g.im().str(12) << ": " << r.error
                      << '\n';
            ++failed;
        }
    return failed == 0 ? 0 : 1;
}

int report_errors(const std::vector<ComparisonRow>& rows)
{
    int failed = 0;
    for (const auto& row : rows)
        for (const auto& c : row.cells)
            if (!c.error.empty()) {
                std::cerr << to_string(c.method) << " at " << row.coupling.re().str(12) << ","
                          << row.coupling.im().str(12) << ": " << c.error << '\n';
                ++failed;
            }
    return failed == 0 ? 0 : 1;
}

// N and rel_err columns of a sweep CSV.
ConvergenceSeries read_sweep_csv(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw DomainError("cannot read " + path);
    std::string line;
    std::getline(is, line);
    if (line != csv_header())
        throw DomainError(path + " does not carry the sweep header");
    ConvergenceSeries out;
    while (std::getline(is, line)) {
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() < 10)
            continue;
        SweepRecord r;
        r.N = std::stoi(f[4]);
        if (f[9] == "nan" || f[9].empty())
            r.error = "no value";
        else
            r.rel_err = BigReal::from_string(f[9], 30);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Self-consistent expansion laboratory: sweeps, fits, comparisons and tables as CSV"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    Globals gl;
    try {
        gl.digits = default_target_digits();
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    app.add_option("--config", gl.config, "flat key=value file; command-line flags take precedence");
    app.add_option("--emit", gl.emit, "write a preset, e.g. recipes/fig2 (use list to show presets)");
    app.add_flag("--full", gl.full, "run long presets at full size");
    app.add_option("--digits", gl.digits, "target decimal digits (default SCE_LAB_PRECISION or 30)")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", gl.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--output,-o", gl.output, "CSV path (stdout when omitted)");
    app.add_flag("--timing", gl.timing, "fill the wall_ms column");

    SweepOptions o;
    auto* quartic = app.add_subcommand("quartic", "Z(g) for the single-well quartic");
    add_sweep_options(quartic, o, false);
    auto* dw = app.add_subcommand("double-well", "Z(g) for the quartic double well");
    add_sweep_options(dw, o, false);
    auto* general = app.add_subcommand("general", "Z(g) for g|x|^q");
    add_sweep_options(general, o, false);
    general->add_option("--q", o.q, "anharmonic exponent q > 2");
    auto* airy = app.add_subcommand("airy", "Ai(z)");
    add_sweep_options(airy, o, true);
    auto* radial = app.add_subcommand("radial", "radial integral of x^NN exp(-x^2/2 - g x^4) on [0, inf)");
    add_sweep_options(radial, o, false);
    radial->add_option("--NN", o.NN, "power of x in the measure")->check(CLI::NonNegativeNumber);
    auto* sweep = app.add_subcommand("sweep", "generic sweep with an explicit target");
    add_sweep_options(sweep, o, false);
    sweep->add_option("--target", o.target, "quartic, double-well, general, airy or radial");
    sweep->add_option("--z", o.z, "Airy coupling when the target is airy");
    sweep->add_option("--q", o.q, "anharmonic exponent for the general target");
    sweep->add_option("--NN", o.NN, "radial measure power");

    std::string stokes_abs = "8", stokes_args = "0:0.9pi:10", stokes_orders = "0:40:4", stokes_schedule = "1";
    auto* stokes = app.add_subcommand("stokes", "Airy error profile over arg z at fixed |z|");
    stokes->add_option("--z-abs", stokes_abs, "|z|");
    stokes->add_option("--args", stokes_args, "arg z grid (pi suffix allowed)");
    stokes->add_option("--orders", stokes_orders, "orders");
    stokes->add_option("--schedule", stokes_schedule, "moment schedule");

    std::string cmp_problem = "quartic", cmp_couplings = "1/160", cmp_order = "N0", cmp_methods;
    auto* compare = app.add_subcommand("compare", "method comparison against the exact value");
    compare->add_option("--problem", cmp_problem, "quartic or airy")->check(CLI::IsMember({"quartic", "airy"}));
    compare->add_option("--couplings", cmp_couplings, "g or z grid, [log:]lo:hi:count or a list");
    compare->add_option("--order", cmp_order, "N0 for the superasymptotic order or a fixed N");
    compare->add_option("--methods", cmp_methods, "comma list of sce, superasymptotic, borel, pade, tau, hyper1");

    std::string fit_input, fit_s = "1/2";
    int fit_nmin = 21, fit_nmax = INT_MAX;
    bool fit_all_orders = false;
    auto* fit = app.add_subcommand("fit", "fit log10|R/Z| = C - A N - B N^s to a sweep CSV");
    fit->add_option("--input", fit_input, "sweep CSV")->required();
    fit->add_option("--s", fit_s, "stretched exponent, 1/2 or 2/3");
    fit->add_option("--n-min", fit_nmin, "first order in the window");
    fit->add_option("--n-max", fit_nmax, "last order in the window");
    fit->add_flag("--all-orders", fit_all_orders, "use even orders as well");

    auto* t1 = app.add_subcommand("table1", "critical and optimal alpha for q = 3, 4, 6, 8, 10, 12");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        CLI::App* active = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        if (!gl.config.empty())
            apply_config(app, active, Config::load(gl.config));

        if (!gl.emit.empty()) {
            if (gl.emit == "list") {
                for (const auto& r : recipes())
                    std::cout << r.name << (r.long_running ? " [--full extends]" : "") << ": " << r.description
                              << '\n';
                return 0;
            }
            std::filesystem::path p(gl.emit);
            std::string dir = p.has_parent_path() ? p.parent_path().string() : ".";
            for (const auto& f : emit_recipe(p.filename().string(), dir, gl.full, gl.threads))
                std::cout << f << '\n';
            return 0;
        }
        if (active == nullptr) {
            std::cout << app.help();
            return 2;
        }

        Output out(gl.output);
        if (active == t1) {
            write_table1_csv(out.stream(), table1(gl.digits), gl.digits);
            return 0;
        }
        if (active == stokes) {
            int wd = 3 * gl.digits;
            PrecisionScope scope(wd);
            auto prof = stokes_profile(parse_number(stokes_abs, wd), parse_grid(stokes_args, wd),
                                       parse_orders(stokes_orders), MomentSchedule::parse(stokes_schedule),
                                       gl.digits);
            auto& os = out.stream();
            os << "arg_z,N,log10_rel_err,sector,max_factor\n";
            for (const auto& rec : prof)
                for (std::size_t k = 0; k < rec.orders.size(); ++k)
                    os << rec.arg_z.str(gl.digits) << ',' << rec.orders[k] << ',' << rec.log10_error[k] << ','
                       << to_string(rec.sector) << ',' << rec.max_factor << '\n';
            return 0;
        }
        if (active == compare) {
            Problem problem = cmp_problem == "quartic" ? Problem::quartic_Z : Problem::airy_tilde;
            std::vector<Method> methods;
            if (cmp_methods.empty())
                methods = all_methods(problem);
            else {
                std::stringstream ss(cmp_methods);
                std::string m;
                while (std::getline(ss, m, ','))
                    methods.push_back(parse_method(m));
            }
            OrderRule rule = cmp_order == "N0" ? OrderRule::at_N0() : OrderRule::fixed(std::stoi(cmp_order));
            std::vector<BigComplex> cs;
            for (const auto& v : parse_grid(cmp_couplings, 3 * gl.digits + 10))
                cs.emplace_back(v);
            auto rows = compare_methods(problem, cs, rule, methods, gl.digits, gl.threads);
            write_csv(out.stream(), problem, rows, gl.digits, gl.timing);
            return report_errors(rows);
        }
        if (active == fit) {
            FitWindow w{fit_nmin, fit_nmax, !fit_all_orders};
            auto series = read_sweep_csv(fit_input);
            FitModel m = fit_convergence(series, parse_number(fit_s, 50), w);
            auto& os = out.stream();
            os << "s,A,B,C,chi2,A_no_B,C_no_B,chi2_no_B,points\n";
            os << m.s.str(6) << ',' << m.A.str(6) << ',' << m.B.str(6) << ',' << m.C.str(6) << ',' << m.chi2.str(6)
               << ',' << m.A_no_B.str(6) << ',' << m.C_no_B.str(6) << ',' << m.chi2_no_B.str(6) << ',' << m.points
               << '\n';
            return 0;
        }

        Target target = active == quartic ? Target::quartic
                        : active == dw    ? Target::double_well
                        : active == general ? Target::general_q
                        : active == airy  ? Target::airy
                        : active == radial ? Target::radial
                                           : parse_target(o.target);
        SweepSpec spec = make_spec(target, o, gl);
        auto rows = run_sweep(spec);
        write_csv(out.stream(), rows, gl.digits, gl.timing);
        return report_errors(rows);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
