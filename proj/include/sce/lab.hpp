#pragma once

#include <climits>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sce/complex.hpp"
#include "sce/mp.hpp"
#include "sce/quartic.hpp"
#include "sce/rivals.hpp"

namespace sce {

enum class Target { quartic, double_well, general_q, airy, radial };
std::string to_string(Target t);
Target parse_target(const std::string& text);

// order: N from the orders list; alpha: M = alpha N at fixed N; coupling: g
// values (|z| along the ray of the base coupling for Airy); arg_z: arg z at
// fixed |z|.
enum class Axis { order, alpha, coupling, arg_z };
std::string to_string(Axis a);
Axis parse_axis(const std::string& text);

enum class Oracle { closed_form, quadrature };

struct SweepSpec {
    Target target = Target::quartic;
    BigReal q = BigReal(4);
    BigComplex coupling = BigComplex(1);  // g, or z for Airy
    int N = 20;
    MomentSchedule schedule = MomentSchedule::linear(4, 3);
    int NN = 2;  // radial dimension parameter
    Axis axis = Axis::order;
    std::vector<int> orders;
    std::vector<BigReal> grid;  // alpha, coupling or arg z values
    Oracle oracle = Oracle::closed_form;
    int target_digits = 30;
    int threads = 1;
    bool timing = false;  // wall_ms is left empty unless set, keeping reruns byte-identical
    std::string output_path;

    // DomainError for an empty or non-monotone axis and for bad parameters.
    void validate() const;
    std::size_t size() const;
};

// One CSV row. error is empty for a successful point.
struct SweepRecord {
    std::string problem;
    BigReal q;
    BigComplex g;
    int N = 0;
    BigReal M;
    BigReal alpha;
    BigComplex value;
    BigReal rel_err;
    BigReal bound;
    std::string method = "sce";
    int precision_digits = 0;
    double wall_ms = 0;
    bool has_M = true;
    bool has_bound = true;
    std::string error;

    bool ok() const { return error.empty(); }
};

using ConvergenceSeries = std::vector<SweepRecord>;

// Evaluates every point of the sweep on spec.threads workers and returns the
// records in axis order. A failing point is recorded with its error message;
// the sweep continues. Writes the CSV to spec.output_path when it is set.
ConvergenceSeries run_sweep(const SweepSpec& spec);

std::string csv_header();
// Values at `digits` significant digits; wall_ms only when timing is set.
void write_csv(std::ostream& os, const ConvergenceSeries& rows, int digits, bool timing = false);

struct FitWindow {
    int N_min = 21;
    int N_max = INT_MAX;
    bool odd_only = true;
};

// log10|R/Z| = C - A N - B N^s, with the B = 0 refit alongside.
struct FitModel {
    BigReal A, B, C;
    BigReal s;
    BigReal chi2;  // sqrt of the mean squared residual
    BigReal A_no_B, C_no_B;
    BigReal chi2_no_B;
    int points = 0;
};

// Least squares on (N, |R/Z|). DomainError for fewer than 5 points or a zero
// error; SingularSystem when the N grid cannot separate the three terms.
FitModel fit_convergence(const std::vector<int>& orders, const std::vector<BigReal>& rel_err, const BigReal& s);
// Successful records of the series inside the window.
FitModel fit_convergence(const ConvergenceSeries& series, const BigReal& s, const FitWindow& window = {});

enum class Method { sce, superasymptotic, borel, pade, tau, hyper1 };
std::string to_string(Method m);
Method parse_method(const std::string& text);
std::vector<Method> all_methods(Problem problem);

// at_N0 truncates at the superasymptotic order of each coupling; fixed_N uses N.
struct OrderRule {
    enum class Kind { at_N0, fixed_N };
    Kind kind = Kind::at_N0;
    int N = 0;

    static OrderRule at_N0() { return {Kind::at_N0, 0}; }
    static OrderRule fixed(int n) { return {Kind::fixed_N, n}; }
};

struct MethodCell {
    Method method = Method::sce;
    int N = 0;  // truncation actually used
    BigComplex value;
    BigReal rel_err;
    int precision_digits = 0;
    double wall_ms = 0;
    std::string error;
};

struct ComparisonRow {
    BigComplex coupling;
    BigComplex oracle;
    std::vector<MethodCell> cells;
};

// Every cell of a row is measured against the row's oracle value. The SCE
// uses M = 4N/3 for the quartic and M = N for Airy. Pade rounds odd orders
// down to even.
std::vector<ComparisonRow> compare_methods(Problem problem, const std::vector<BigComplex>& couplings,
                                           const OrderRule& rule, const std::vector<Method>& methods,
                                           int target_digits = 30, int threads = 1);

// One line per cell in the sweep schema, method in the method column.
void write_csv(std::ostream& os, Problem problem, const std::vector<ComparisonRow>& rows, int digits,
               bool timing = false);

struct Table1Row {
    int q = 0;
    BigReal alpha_c;
    BigReal alpha_star;
    BigReal one_minus_Q;
    BigReal neg_log10_Q;
    BigReal alpha_c_large_r;
    BigReal one_minus_Q_large_r;
};

std::vector<Table1Row> table1(int digits = 30);
void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows, int digits);

// Flat key=value text; '#' starts a comment, blank lines are skipped.
struct Config {
    std::map<std::string, std::string> values;

    static Config parse(const std::string& text);
    static Config load(const std::string& path);
    bool has(const std::string& key) const { return values.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
};

// SCE_LAB_PRECISION when set to a positive integer, 30 otherwise.
int default_target_digits();

// "1/160", "0.01" or "1e-3" at the given precision.
BigReal parse_number(const std::string& text, int digits);
// "re" or "re,im", components as in parse_number.
BigComplex parse_coupling(const std::string& text, int digits);
// "21:301:2" (first:last:step) or a comma list of integers.
std::vector<int> parse_orders(const std::string& text);
// "lo:hi:count" (inclusive, evenly spaced), "log:lo:hi:count" or a comma list.
// Angles may be given in units of pi with a trailing "pi", e.g. "0:0.9pi:10".
std::vector<BigReal> parse_grid(const std::string& text, int digits);

struct Recipe {
    std::string name;
    std::string description;
    bool long_running = false;
};

const std::vector<Recipe>& recipes();
// Writes the CSV files of a recipe into dir (created if needed) and returns
// their paths. Long presets are reduced unless full is set.
std::vector<std::string> emit_recipe(const std::string& name, const std::string& dir, bool full, int threads = 1);

}  // namespace sce
