#include "sce/lab.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "sce/airy.hpp"
#include "sce/errors.hpp"
#include "sce/general.hpp"
#include "sce/quadrature.hpp"
#include "sce/special.hpp"

namespace sce {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs fn(0..n-1) on up to `threads` workers. fn must not throw.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn)
{
    std::size_t workers = std::min<std::size_t>(std::max(threads, 1), n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < n;)
            fn(i);
    };
    if (workers <= 1) {
        work();
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(trim(item));
    return out;
}

std::string fmt(const BigReal& x, int digits)
{
    if (x.is_nan())
        return "nan";
    if (!x.is_finite())
        return x.sign() > 0 ? "inf" : "-inf";
    return x.str(digits);
}

template <class T>
bool strictly_monotone(const std::vector<T>& v)
{
    if (v.size() < 2)
        return true;
    bool up = v[1] > v[0];
    for (std::size_t i = 1; i < v.size(); ++i)
        if (up ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1]))
            return false;
    return true;
}

int oracle_digits(const PrecisionPolicy& policy) { return policy.working_digits + 10; }

BigComplex target_oracle(const SweepSpec& spec, const BigComplex& c, int digits)
{
    PrecisionScope scope(digits);
    BigComplex cc = c.at_digits(digits);
    const BigReal& g = cc.re();
    bool quad = spec.oracle == Oracle::quadrature;
    switch (spec.target) {
    case Target::quartic:
        return quad ? BigComplex(quadrature_Z(BigReal(4), g, 1, digits)) : BigComplex(exact_Z_quartic(g, digits));
    case Target::double_well:
        return quad ? BigComplex(quadrature_Z(BigReal(4), g, 1, digits, Well::double_well))
                    : BigComplex(exact_Z_quartic_dw(g, digits));
    case Target::general_q:
        return BigComplex(quadrature_Z(spec.q.at_digits(digits), g, 1, digits));
    case Target::radial:
        return BigComplex(quadrature_Z(BigReal(4), g, spec.NN + 1, digits, Well::single_well, true));
    case Target::airy:
        return airy_reference(cc, digits);
    }
    throw DomainError("unknown target");
}

BigReal target_q(const SweepSpec& spec)
{
    switch (spec.target) {
    case Target::general_q:
        return spec.q;
    case Target::airy:
        return BigReal(3);
    default:
        return BigReal(4);
    }
}

struct Point {
    BigComplex coupling;
    int N = 0;
    BigReal M;
};

Point point_at(const SweepSpec& spec, std::size_t i, int wd)
{
    Point p;
    p.coupling = spec.coupling.at_digits(wd);
    p.N = spec.N;
    switch (spec.axis) {
    case Axis::order:
        p.N = spec.orders[i];
        p.M = spec.schedule.M(p.N, wd);
        break;
    case Axis::alpha:
        p.M = spec.grid[i].at_digits(wd) * p.N;
        break;
    case Axis::coupling:
        if (spec.target == Target::airy) {
            BigComplex unit = p.coupling / BigComplex(abs(p.coupling));
            p.coupling = unit * BigComplex(spec.grid[i].at_digits(wd));
        } else {
            p.coupling = BigComplex(spec.grid[i].at_digits(wd));
        }
        p.M = spec.schedule.M(p.N, wd);
        break;
    case Axis::arg_z:
        p.coupling = BigComplex::polar(abs(p.coupling), spec.grid[i].at_digits(wd));
        p.M = spec.schedule.M(p.N, wd);
        break;
    }
    return p;
}

SCEEvaluation evaluate(const SweepSpec& spec, const Point& p, const PrecisionPolicy& policy)
{
    switch (spec.target) {
    case Target::quartic:
    case Target::double_well: {
        QuarticSCEParams params;
        params.g = p.coupling.re();
        params.N = p.N;
        params.M = p.M;
        params.well = spec.target == Target::quartic ? Well::single_well : Well::double_well;
        params.precision = policy;
        return sce_partition_quartic(params);
    }
    case Target::general_q: {
        GeneralQParams params;
        params.q = spec.q.at_digits(policy.working_digits);
        params.g = p.coupling.re();
        params.N = p.N;
        params.M = p.M;
        params.precision = policy;
        return sce_partition_general(params);
    }
    case Target::radial:
        return sce_partition_radial(spec.NN, p.N, p.M, p.coupling.re(), policy);
    case Target::airy: {
        AirySCEParams params;
        params.z = p.coupling;
        params.N = p.N;
        params.M = p.M;
        params.precision = policy;
        return airy_sce(params).ai;
    }
    }
    throw DomainError("unknown target");
}

BigComplex quartic_sce(const BigComplex& g, int N, const PrecisionPolicy& policy)
{
    QuarticSCEParams params;
    params.g = g.re();
    params.N = N;
    params.M = BigReal(4 * N).at_digits(policy.working_digits) / 3;
    params.precision = policy;
    return sce_partition_quartic(params).value;
}

BigComplex airy_sce_value(const BigComplex& z, int N, const PrecisionPolicy& policy)
{
    AirySCEParams params;
    params.z = z;
    params.N = N;
    params.M = BigReal(N).at_digits(policy.working_digits);
    params.precision = policy;
    return airy_sce(params).ai.value;
}

BigReal numeric_value(const std::string& text, int digits)
{
    std::string t = trim(text);
    if (t.empty())
        throw DomainError("empty number");
    bool in_pi = false;
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        in_pi = true;
        t = trim(t.substr(0, t.size() - 2));
        if (t.empty() || t == "+")
            t = "1";
        else if (t == "-")
            t = "-1";
    }
    BigReal v;
    auto slash = t.find('/');
    if (slash != std::string::npos)
        v = BigReal::from_string(trim(t.substr(0, slash)), digits) /
            BigReal::from_string(trim(t.substr(slash + 1)), digits);
    else
        v = BigReal::from_string(t, digits);
    return in_pi ? v * const_pi(digits) : v;
}

}  // namespace

std::string to_string(Target t)
{
    switch (t) {
    case Target::quartic:
        return "quartic";
    case Target::double_well:
        return "double-well";
    case Target::general_q:
        return "general";
    case Target::airy:
        return "airy";
    case Target::radial:
        return "radial";
    }
    return "?";
}

Target parse_target(const std::string& text)
{
    for (Target t : {Target::quartic, Target::double_well, Target::general_q, Target::airy, Target::radial})
        if (to_string(t) == text)
            return t;
    throw DomainError("unknown target: " + text);
}

std::string to_string(Axis a)
{
    switch (a) {
    case Axis::order:
        return "N";
    case Axis::alpha:
        return "alpha";
    case Axis::coupling:
        return "g";
    case Axis::arg_z:
        return "arg";
    }
    return "?";
}

Axis parse_axis(const std::string& text)
{
    for (Axis a : {Axis::order, Axis::alpha, Axis::coupling, Axis::arg_z})
        if (to_string(a) == text)
            return a;
    throw DomainError("unknown sweep axis: " + text);
}

void SweepSpec::validate() const
{
    if (target_digits < 1)
        throw DomainError("target digits must be positive");
    if (threads < 1)
        throw DomainError("thread count must be positive");
    if (N < 0)
        throw DomainError("order must be non-negative");
    if (target == Target::general_q && !(q > 2))
        throw DomainError("general target needs q > 2");
    if (target == Target::airy && axis == Axis::coupling && abs(coupling).is_zero())
        throw DomainError("an Airy coupling sweep needs a nonzero base z for its direction");
    if (target == Target::radial && NN < 0)
        throw DomainError("radial target needs NN >= 0");
    if (axis == Axis::order) {
        if (orders.empty())
            throw DomainError("order axis is empty");
        if (!strictly_monotone(orders))
            throw DomainError("order axis is not strictly monotone");
        if (*std::min_element(orders.begin(), orders.end()) < 0)
            throw DomainError("negative order on the axis");
    } else {
        if (grid.empty())
            throw DomainError(to_string(axis) + " axis is empty");
        if (!strictly_monotone(grid))
            throw DomainError(to_string(axis) + " axis is not strictly monotone");
    }
}

std::size_t SweepSpec::size() const { return axis == Axis::order ? orders.size() : grid.size(); }

ConvergenceSeries run_sweep(const SweepSpec& spec)
{
    spec.validate();
    const PrecisionPolicy policy = PrecisionPolicy::for_target(spec.target_digits);
    const int wd = policy.working_digits;
    const int od = oracle_digits(policy);

    // Axes that keep the coupling fixed share one oracle value.
    bool shared = spec.axis == Axis::order || spec.axis == Axis::alpha;
    BigComplex common;
    std::string common_error;
    if (shared) {
        try {
            common = target_oracle(spec, spec.coupling, od);
        } catch (const std::exception& e) {
            common_error = std::string("oracle: ") + e.what();
        }
    }

    ConvergenceSeries out(spec.size());
    parallel_for(out.size(), spec.threads, [&](std::size_t i) {
        PrecisionScope scope(wd);
        SweepRecord& r = out[i];
        r.problem = to_string(spec.target);
        r.q = target_q(spec);
        r.precision_digits = wd;
        auto t0 = Clock::now();
        try {
            Point p = point_at(spec, i, wd);
            r.g = p.coupling;
            r.N = p.N;
            r.M = p.M;
            r.alpha = p.N > 0 ? p.M / p.N : BigReal::with_digits(wd);
            if (!common_error.empty())
                throw Error(common_error);
            BigComplex ref = shared ? common : target_oracle(spec, p.coupling, od);
            SCEEvaluation ev = evaluate(spec, p, policy);
            r.value = ev.value;
            r.bound = ev.remainder_bound;
            r.precision_digits = ev.working_digits;
            r.rel_err = rel_diff(ev.value, ref);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        r.wall_ms = ms_since(t0);
    });

    if (!spec.output_path.empty()) {
        std::ofstream os(spec.output_path);
        if (!os)
            throw DomainError("cannot write " + spec.output_path);
        write_csv(os, out, spec.target_digits, spec.timing);
    }
    return out;
}

std::string csv_header()
{
    return "problem,q,g_re,g_im,N,M,alpha,value_re,value_im,rel_err,bound,method,precision_digits,wall_ms";
}

void write_csv(std::ostream& os, const ConvergenceSeries& rows, int digits, bool timing)
{
    os << csv_header() << '\n';
    for (const auto& r : rows) {
        os << r.problem << ',' << fmt(r.q, digits) << ',' << fmt(r.g.re(), digits) << ',' << fmt(r.g.im(), digits)
           << ',' << r.N << ',';
        if (r.has_M)
            os << fmt(r.M, digits) << ',' << fmt(r.alpha, digits);
        else
            os << ',';
        os << ',';
        if (r.ok()) {
            os << fmt(r.value.re(), digits) << ',' << fmt(r.value.im(), digits) << ',' << fmt(r.rel_err, 6) << ',';
            if (r.has_bound)
                os << fmt(r.bound, 6);
        } else {
            os << "nan,nan,nan,";
        }
        os << ',' << r.method << ',' << r.precision_digits << ',';
        if (timing) {
            std::ostringstream t;
            t.setf(std::ios::fixed);
            t.precision(3);
            t << r.wall_ms;
            os << t.str();
        }
        os << '\n';
    }
}

FitModel fit_convergence(const std::vector<int>& orders, const std::vector<BigReal>& rel_err, const BigReal& s)
{
    if (orders.size() != rel_err.size())
        throw DomainError("fit needs one error per order");
    if (orders.size() < 5)
        throw DomainError("fit needs at least 5 points");
    const int digits = 50;
    PrecisionScope scope(digits);
    const std::size_t L = orders.size();
    BigReal sd = s.at_digits(digits);
    std::vector<std::array<BigReal, 3>> X(L);
    std::vector<BigReal> y(L);
    for (std::size_t i = 0; i < L; ++i) {
        if (rel_err[i].is_zero() || !rel_err[i].is_finite())
            throw DomainError("fit needs finite nonzero errors (N = " + std::to_string(orders[i]) + ")");
        BigReal n = BigReal(orders[i]).at_digits(digits);
        X[i] = {BigReal(1).at_digits(digits), -n, orders[i] == 0 ? BigReal::with_digits(digits) : -pow(n, sd)};
        y[i] = log10(abs(rel_err[i].at_digits(digits)));
    }

    // Normal equations over the first k columns, Gaussian elimination with
    // partial pivoting.
    auto solve = [&](int k) {
        std::vector<std::vector<BigReal>> a(k, std::vector<BigReal>(k + 1, BigReal::with_digits(digits)));
        for (std::size_t i = 0; i < L; ++i)
            for (int r = 0; r < k; ++r) {
                for (int c = 0; c < k; ++c)
                    a[r][c] += X[i][r] * X[i][c];
                a[r][k] += X[i][r] * y[i];
            }
        BigReal scale = BigReal::with_digits(digits);
        for (int r = 0; r < k; ++r)
            scale = max(scale, abs(a[r][r]));
        for (int c = 0; c < k; ++c) {
            int piv = c;
            for (int r = c + 1; r < k; ++r)
                if (abs(a[r][c]) > abs(a[piv][c]))
                    piv = r;
            if (abs(a[piv][c]) <= scale * BigReal("1e-30"))
                throw SingularSystem("rank-deficient fit: the N grid cannot separate the model terms");
            std::swap(a[c], a[piv]);
            for (int r = c + 1; r < k; ++r) {
                BigReal f = a[r][c] / a[c][c];
                for (int j = c; j <= k; ++j)
                    a[r][j] -= f * a[c][j];
            }
        }
        std::vector<BigReal> x(k);
        for (int r = k - 1; r >= 0; --r) {
            BigReal acc = a[r][k];
            for (int j = r + 1; j < k; ++j)
                acc -= a[r][j] * x[j];
            x[r] = acc / a[r][r];
        }
        BigReal ss = BigReal::with_digits(digits);
        for (std::size_t i = 0; i < L; ++i) {
            BigReal m = BigReal::with_digits(digits);
            for (int c = 0; c < k; ++c)
                m += x[c] * X[i][c];
            ss += (m - y[i]) * (m - y[i]);
        }
        x.push_back(sqrt(ss / static_cast<long>(L)));
        return x;
    };

    auto full = solve(3);
    auto reduced = solve(2);
    FitModel fit;
    fit.C = full[0];
    fit.A = full[1];
    fit.B = full[2];
    fit.chi2 = full[3];
    fit.s = sd;
    fit.C_no_B = reduced[0];
    fit.A_no_B = reduced[1];
    fit.chi2_no_B = reduced[2];
    fit.points = static_cast<int>(L);
    return fit;
}

FitModel fit_convergence(const ConvergenceSeries& series, const BigReal& s, const FitWindow& window)
{
    std::vector<int> orders;
    std::vector<BigReal> errs;
    for (const auto& r : series) {
        if (!r.ok() || r.N < window.N_min || r.N > window.N_max)
            continue;
        if (window.odd_only && r.N % 2 == 0)
            continue;
        orders.push_back(r.N);
        errs.push_back(r.rel_err);
    }
    return fit_convergence(orders, errs, s);
}

std::string to_string(Method m)
{
    switch (m) {
    case Method::sce:
        return "sce";
    case Method::superasymptotic:
        return "superasymptotic";
    case Method::borel:
        return "borel";
    case Method::pade:
        return "pade";
    case Method::tau:
        return "tau";
    case Method::hyper1:
        return "hyper1";
    }
    return "?";
}

Method parse_method(const std::string& text)
{
    for (Method m : {Method::sce, Method::superasymptotic, Method::borel, Method::pade, Method::tau, Method::hyper1})
        if (to_string(m) == text)
            return m;
    throw DomainError("unknown method: " + text);
}

std::vector<Method> all_methods(Problem problem)
{
    if (problem == Problem::quartic_Z)
        return {Method::sce, Method::superasymptotic, Method::borel, Method::pade, Method::tau, Method::hyper1};
    return {Method::sce, Method::superasymptotic, Method::pade, Method::tau, Method::hyper1};
}

std::vector<ComparisonRow> compare_methods(Problem problem, const std::vector<BigComplex>& couplings,
                                           const OrderRule& rule, const std::vector<Method>& methods,
                                           int target_digits, int threads)
{
    if (rule.kind == OrderRule::Kind::fixed_N && rule.N < 0)
        throw DomainError("fixed order must be non-negative");
    const PrecisionPolicy policy = PrecisionPolicy::for_target(target_digits);
    const int wd = policy.working_digits;
    const int od = oracle_digits(policy);

    std::vector<ComparisonRow> rows(couplings.size());
    std::vector<int> orders(couplings.size(), rule.N);
    std::vector<std::string> row_error(couplings.size());
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        PrecisionScope scope(wd);
        rows[i].coupling = couplings[i].at_digits(wd);
        rows[i].cells.resize(methods.size());
        try {
            rows[i].oracle = exact_value(problem, couplings[i].at_digits(od), od);
            if (rule.kind == OrderRule::Kind::at_N0)
                orders[i] = superasymptotic(problem, rows[i].coupling, target_digits).N0;
        } catch (const std::exception& e) {
            row_error[i] = std::string("oracle: ") + e.what();
        }
    });

    parallel_for(rows.size() * methods.size(), threads, [&](std::size_t k) {
        std::size_t i = k / methods.size();
        PrecisionScope scope(wd);
        const BigComplex& c = rows[i].coupling;
        MethodCell& cell = rows[i].cells[k % methods.size()];
        cell.method = methods[k % methods.size()];
        cell.N = orders[i];
        cell.precision_digits = wd;
        auto t0 = Clock::now();
        try {
            if (!row_error[i].empty())
                throw Error(row_error[i]);
            switch (cell.method) {
            case Method::sce:
                cell.value =
                    problem == Problem::quartic_Z ? quartic_sce(c, cell.N, policy) : airy_sce_value(c, cell.N, policy);
                break;
            case Method::superasymptotic: {
                auto r = superasymptotic(problem, c, target_digits);
                cell.N = r.N0;
                cell.value = r.value;
                break;
            }
            case Method::borel:
                if (problem != Problem::quartic_Z)
                    throw DomainError("the Borel tail is defined for the quartic only");
                cell.value = BigComplex(borel_tail(c.re(), cell.N, target_digits));
                break;
            case Method::pade:
                cell.N -= cell.N % 2;
                cell.value = pade(problem, c, cell.N, target_digits);
                break;
            case Method::tau:
                cell.value = lanczos_tau(problem, c, cell.N, target_digits);
                break;
            case Method::hyper1: {
                auto r = hyper_level1(problem, c, target_digits);
                cell.N = r.N0;
                cell.value = r.value;
                break;
            }
            }
            cell.rel_err = rel_diff(cell.value, rows[i].oracle);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
        cell.wall_ms = ms_since(t0);
    });
    return rows;
}

void write_csv(std::ostream& os, Problem problem, const std::vector<ComparisonRow>& rows, int digits, bool timing)
{
    ConvergenceSeries flat;
    for (const auto& row : rows)
        for (const auto& cell : row.cells) {
            SweepRecord r;
            r.problem = problem == Problem::quartic_Z ? "quartic" : "airy";
            r.q = BigReal(problem == Problem::quartic_Z ? 4 : 3);
            r.g = row.coupling;
            r.N = cell.N;
            r.has_M = cell.method == Method::sce;
            if (r.has_M) {
                r.alpha = problem == Problem::quartic_Z ? BigReal(4).at_digits(digits) / 3 : BigReal(1);
                r.M = r.alpha * cell.N;
            }
            r.value = cell.value;
            r.rel_err = cell.rel_err;
            r.has_bound = false;
            r.method = to_string(cell.method);
            r.precision_digits = cell.precision_digits;
            r.wall_ms = cell.wall_ms;
            r.error = cell.error;
            flat.push_back(std::move(r));
        }
    write_csv(os, flat, digits, timing);
}

std::vector<Table1Row> table1(int digits)
{
    std::vector<Table1Row> rows;
    for (int q : {3, 4, 6, 8, 10, 12}) {
        PrecisionScope scope(digits + 10);
        Table1Row r;
        r.q = q;
        BigReal qb = BigReal(q).at_digits(digits + 10);
        r.alpha_c = critical_alpha(qb, digits);
        auto opt = optimal_alpha(qb, digits);
        r.alpha_star = opt.alpha_star;
        r.one_minus_Q = 1 - opt.Q_star;
        r.neg_log10_Q = -opt.log10_Q_star;
        auto large = large_r_asymptotics(qb / 2 - 1);
        r.alpha_c_large_r = large.alpha_c;
        r.one_minus_Q_large_r = large.one_minus_Q;
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows, int digits)
{
    os << "q,alpha_c,alpha_star,one_minus_Q_star,neg_log10_Q_star,alpha_c_large_r,one_minus_Q_large_r\n";
    for (const auto& r : rows)
        os << r.q << ',' << fmt(r.alpha_c, digits) << ',' << fmt(r.alpha_star, digits) << ','
           << fmt(r.one_minus_Q, digits) << ',' << fmt(r.neg_log10_Q, digits) << ','
           << fmt(r.alpha_c_large_r, digits) << ',' << fmt(r.one_minus_Q_large_r, digits) << '\n';
}

Config Config::parse(const std::string& text)
{
    Config cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw DomainError("config line " + std::to_string(lineno) + ": empty key");
        cfg.values[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

Config Config::load(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw DomainError("cannot read config " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

std::string Config::get(const std::string& key, const std::string& fallback) const
{
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

int default_target_digits()
{
    const char* env = std::getenv("SCE_LAB_PRECISION");
    if (env == nullptr || *env == '\0')
        return 30;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0 || v > 100000)
        throw DomainError(std::string("SCE_LAB_PRECISION is not a positive integer: ") + env);
    return static_cast<int>(v);
}

BigReal parse_number(const std::string& text, int digits) { return numeric_value(text, digits); }

BigComplex parse_coupling(const std::string& text, int digits)
{
    auto parts = split(text, ',');
    if (parts.size() == 1)
        return BigComplex(numeric_value(parts[0], digits));
    if (parts.size() == 2)
        return BigComplex(numeric_value(parts[0], digits), numeric_value(parts[1], digits));
    throw DomainError("coupling must be re or re,im: " + text);
}

std::vector<int> parse_orders(const std::string& text)
{
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        auto parts = split(text, ':');
        if (parts.size() < 2 || parts.size() > 3)
            throw DomainError("orders must be first:last[:step]: " + text);
        int first = std::stoi(parts[0]);
        int last = std::stoi(parts[1]);
        int step = parts.size() == 3 ? std::stoi(parts[2]) : 1;
        if (step <= 0)
            throw DomainError("order step must be positive: " + text);
        for (int n = first; n <= last; n += step)
            out.push_back(n);
        return out;
    }
    for (const auto& p : split(text, ','))
        out.push_back(std::stoi(p));
    return out;
}

std::vector<BigReal> parse_grid(const std::string& text, int digits)
{
    std::vector<BigReal> out;
    if (text.find(':') == std::string::npos) {
        for (const auto& p : split(text, ','))
            out.push_back(numeric_value(p, digits));
        return out;
    }
    auto parts = split(text, ':');
    bool geometric = !parts.empty() && parts[0] == "log";
    if (geometric)
        parts.erase(parts.begin());
    if (parts.size() != 3)
        throw DomainError("grid must be [log:]lo:hi:count: " + text);
    BigReal lo = numeric_value(parts[0], digits);
    BigReal hi = numeric_value(parts[1], digits);
    int count = std::stoi(parts[2]);
    if (count < 1)
        throw DomainError("grid count must be positive: " + text);
    if (count == 1)
        return {lo};
    if (geometric && (lo.sign() <= 0 || hi.sign() <= 0))
        throw DomainError("log grid needs positive bounds: " + text);
    for (int k = 0; k < count; ++k) {
        if (k == count - 1) {
            out.push_back(hi);
            break;
        }
        if (geometric)
            out.push_back(lo * pow(hi / lo, BigReal(k).at_digits(digits) / (count - 1)));
        else
            out.push_back(lo + (hi - lo) * k / (count - 1));
    }
    return out;
}

namespace {

void write_fit_csv(std::ostream& os, const std::vector<std::pair<std::string, FitModel>>& fits)
{
    os << "series,s,A,B,C,chi2,A_no_B,C_no_B,chi2_no_B,points\n";
    for (const auto& [name, f] : fits)
        os << name << ',' << fmt(f.s, 6) << ',' << fmt(f.A, 6) << ',' << fmt(f.B, 6) << ',' << fmt(f.C, 6) << ','
           << fmt(f.chi2, 6) << ',' << fmt(f.A_no_B, 6) << ',' << fmt(f.C_no_B, 6) << ',' << fmt(f.chi2_no_B, 6)
           << ',' << f.points << '\n';
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream os(path);
    if (!os)
        throw DomainError("cannot write " + path);
    return os;
}

struct RateSeries {
    std::string name;
    MomentSchedule schedule;
    int target;
};

// N-sweeps for several schedules with fits on odd orders from 21.
std::vector<std::string> emit_rate_recipe(const std::string& base, Target target, const std::string& g,
                                          const std::vector<RateSeries>& series, int N_max, int threads)
{
    std::ofstream csv = open_out(base + ".csv");
    std::vector<std::pair<std::string, FitModel>> fits;
    bool first = true;
    for (const auto& rs : series) {
        SweepSpec spec;
        spec.target = target;
        spec.target_digits = rs.target;
        spec.coupling = parse_coupling(g, rs.target * 3);
        spec.schedule = rs.schedule;
        spec.orders = parse_orders("1:" + std::to_string(N_max));
        spec.threads = threads;
        auto rows = run_sweep(spec);
        std::ostringstream part;
        write_csv(part, rows, 20);
        std::string text = part.str();
        csv << (first ? text : text.substr(text.find('\n') + 1));
        first = false;
        fits.emplace_back(rs.name, fit_convergence(rows, BigReal(1) / 2));
    }
    std::ofstream fit = open_out(base + "_fit.csv");
    write_fit_csv(fit, fits);
    return {base + ".csv", base + "_fit.csv"};
}

std::vector<BigComplex> to_couplings(const std::vector<BigReal>& v)
{
    std::vector<BigComplex> out;
    for (const auto& x : v)
        out.emplace_back(x);
    return out;
}

}  // namespace

const std::vector<Recipe>& recipes()
{
    static const std::vector<Recipe> list = {
        {"fig1a", "quartic error versus alpha at g = 1 for N = 20 and 21", false},
        {"fig2", "quartic odd-order convergence at g = 1, alpha = 1, 2, 4/3, with rate fits", true},
        {"fig3", "quartic method comparison at the superasymptotic order versus g", false},
        {"fig4a", "quartic fixed N = 13 comparison versus g", false},
        {"fig4b", "quartic g = 0.01 comparison versus N", true},
        {"fig5a", "double-well convergence at g = 0.01, alpha = 1, 2, 4/3, with rate fits", true},
        {"fig8b", "Airy error versus N at |z| = 8 for several arg z", false},
        {"fig9", "Airy convergence at z = 0 with rate fit", false},
        {"fig10", "Airy method comparison at the superasymptotic order versus z", false},
        {"fig11a", "Airy fixed N = 7 comparison versus z", false},
        {"table1", "critical and optimal alpha for q = 3, 4, 6, 8, 10, 12", false},
    };
    return list;
}

std::vector<std::string> emit_recipe(const std::string& name, const std::string& dir, bool full, int threads)
{
    auto known = std::find_if(recipes().begin(), recipes().end(), [&](const Recipe& r) { return r.name == name; });
    if (known == recipes().end())
        throw DomainError("unknown recipe: " + name);
    std::filesystem::create_directories(dir);
    const std::string base = (std::filesystem::path(dir) / name).string();

    if (name == "fig1a") {
        std::ofstream csv = open_out(base + ".csv");
        bool first = true;
        for (int N : {20, 21}) {
            SweepSpec spec;
            spec.coupling = BigComplex(1);
            spec.N = N;
            spec.axis = Axis::alpha;
            spec.grid = parse_grid("0.5:3:51", 90);
            spec.threads = threads;
            std::ostringstream part;
            write_csv(part, run_sweep(spec), 20);
            std::string text = part.str();
            csv << (first ? text : text.substr(text.find('\n') + 1));
            first = false;
        }
        return {base + ".csv"};
    }
    if (name == "fig2" || name == "fig5a") {
        bool dw = name == "fig5a";
        int N_max = full ? 301 : 101;
        std::vector<RateSeries> series = {{"alpha=1", MomentSchedule::linear(1), full ? 80 : 40},
                                          {"alpha=2", MomentSchedule::linear(2), full ? 80 : 40},
                                          {"alpha=4/3", MomentSchedule::linear(4, 3), full ? 110 : 40}};
        return emit_rate_recipe(base, dw ? Target::double_well : Target::quartic, dw ? "0.01" : "1", series, N_max,
                                threads);
    }
    if (name == "fig3" || name == "fig4a" || name == "fig4b") {
        std::vector<ComparisonRow> rows;
        int digits = 40;
        if (name == "fig3") {
            // F = 1/(16 g) from 2 to 40.
            std::vector<BigComplex> gs;
            for (const auto& F : parse_grid("2:40:20", 60))
                gs.emplace_back(1 / (16 * F));
            std::reverse(gs.begin(), gs.end());
            rows = compare_methods(Problem::quartic_Z, gs, OrderRule::at_N0(), all_methods(Problem::quartic_Z),
                                   digits, threads);
        } else if (name == "fig4a") {
            rows = compare_methods(Problem::quartic_Z, to_couplings(parse_grid("log:0.01:1000:21", 60)),
                                   OrderRule::fixed(13), {Method::sce, Method::pade, Method::tau}, digits, threads);
        } else {
            digits = full ? 150 : 60;
            std::vector<BigComplex> g = {BigComplex(BigReal::from_string("0.01", digits * 3))};
            for (int N : parse_orders(full ? "10:230:10" : "10:60:10")) {
                auto part = compare_methods(Problem::quartic_Z, g, OrderRule::fixed(N),
                                            {Method::sce, Method::pade, Method::tau}, digits, threads);
                rows.insert(rows.end(), part.begin(), part.end());
            }
        }
        std::ofstream csv = open_out(base + ".csv");
        write_csv(csv, Problem::quartic_Z, rows, 20);
        return {base + ".csv"};
    }
    if (name == "fig8b") {
        std::ofstream csv = open_out(base + ".csv");
        bool first = true;
        for (const char* arg : {"0", "1/4pi", "1/2pi", "4/9pi", "2/3pi", "4/5pi"}) {
            SweepSpec spec;
            spec.target = Target::airy;
            spec.coupling = BigComplex::polar(BigReal(8).at_digits(90), parse_number(arg, 90));
            spec.schedule = MomentSchedule::linear(1);
            spec.orders = parse_orders(full ? "0:80" : "0:60");
            spec.threads = threads;
            std::ostringstream part;
            write_csv(part, run_sweep(spec), 20);
            std::string text = part.str();
            csv << (first ? text : text.substr(text.find('\n') + 1));
            first = false;
        }
        return {base + ".csv"};
    }
    if (name == "fig9") {
        SweepSpec spec;
        spec.target = Target::airy;
        spec.coupling = BigComplex(0);
        spec.schedule = MomentSchedule::linear(1);
        spec.orders = parse_orders("0:61");
        spec.threads = threads;
        spec.output_path = base + ".csv";
        auto rows = run_sweep(spec);
        FitWindow all{0, INT_MAX, false};
        std::ofstream fit = open_out(base + "_fit.csv");
        write_fit_csv(fit, {{"z=0 s=2/3", fit_convergence(rows, BigReal(2) / 3, all)}});
        return {base + ".csv", base + "_fit.csv"};
    }
    if (name == "fig10" || name == "fig11a") {
        std::vector<ComparisonRow> rows;
        if (name == "fig10") {
            // F = (4/3) z^(3/2) from 2 to 30.
            std::vector<BigComplex> zs;
            for (const auto& F : parse_grid("2:30:15", 60))
                zs.emplace_back(pow(F * 3 / 4, BigReal(2) / 3));
            rows = compare_methods(Problem::airy_tilde, zs, OrderRule::at_N0(), all_methods(Problem::airy_tilde), 40,
                                   threads);
        } else {
            rows = compare_methods(Problem::airy_tilde, to_couplings(parse_grid("log:0.5:20:15", 60)),
                                   OrderRule::fixed(7), {Method::sce, Method::pade, Method::tau}, 40, threads);
        }
        std::ofstream csv = open_out(base + ".csv");
        write_csv(csv, Problem::airy_tilde, rows, 20);
        return {base + ".csv"};
    }
    std::ofstream csv = open_out(base + ".csv");
    write_table1_csv(csv, table1(30), 12);
    return {base + ".csv"};
}

}  // namespace sce
