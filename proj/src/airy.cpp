#include "sce/airy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sce/general.hpp"
#include "sce/special.hpp"

namespace sce {

namespace {

constexpr int track_digits = 30;

// C_3(M)/M including the M -> 0 limit.
BigReal airy_c(const BigReal& M)
{
    if (M < 0)
        throw DomainError("Airy SCE requires M >= 0");
    if (M.is_zero())
        return sqrt(K_of_M(BigReal(3), M));
    return c_q(M, BigReal(3)) / M;
}

struct Cubic {
    BigComplex p;  // y^3 + p y + q
    BigComplex q;
};

Cubic airy_cubic(const BigReal& M, const BigComplex& z, int delta)
{
    if (delta != 1 && delta != -1)
        throw DomainError("delta must be +1 or -1");
    int digits = z.precision_digits();
    BigReal c = airy_c(M.at_digits(digits));
    return {-sqrt(z), BigComplex(BigReal::with_digits(digits), c * delta / 3)};
}

double normalized_discriminant(const Cubic& cb)
{
    BigComplex p3 = cb.p * cb.p * cb.p;
    BigComplex q2 = cb.q * cb.q;
    BigReal den = 4 * abs(p3) + 27 * abs(q2);
    return (abs(4 * p3 + 27 * q2) / den).to_double();
}

std::array<BigComplex, 3> solve_cubic(const Cubic& cb)
{
    int digits = cb.q.precision_digits();
    PrecisionScope scope(digits);
    const BigComplex& p = cb.p;
    const BigComplex& q = cb.q;
    BigComplex s = sqrt(q * q / 4 + p * p * p / 27);
    BigComplex w1 = q / -2 + s;
    BigComplex w2 = q / -2 - s;
    BigComplex w = abs(w1) >= abs(w2) ? w1 : w2;
    BigComplex u = pow(w, BigReal(1) / 3);
    BigComplex omega = BigComplex::polar(BigReal(1), 2 * const_pi() / 3);
    std::array<BigComplex, 3> roots;
    BigComplex uk = u;
    BigReal tiny = pow(BigReal(10), -static_cast<long>(digits / 2));
    for (auto& y : roots) {
        y = uk - p / (3 * uk);
        for (int it = 0; it < 3; ++it) {
            BigComplex fp = 3 * y * y + p;
            if (abs(fp) <= tiny * (abs(p) + 1))
                break;
            y -= (y * y * y + p * y + q) / fp;
        }
        uk = uk * omega;
    }
    return roots;
}

BigReal quarter_pi() { return const_pi() / 4; }

size_t nearest(const std::array<BigComplex, 3>& roots, const BigComplex& target)
{
    size_t best = 0;
    for (size_t k = 1; k < 3; ++k)
        if (abs(roots[k] - target) < abs(roots[best] - target))
            best = k;
    return best;
}

// The in-cone root nearest the asymptotic direction.
size_t asymptote_choice(const std::array<BigComplex, 3>& roots, const BigReal& M, int delta)
{
    BigComplex target = airy_asymptote(M, delta, track_digits);
    size_t best = 3;
    for (size_t k = 0; k < 3; ++k) {
        if (abs(arg(roots[k])) >= quarter_pi())
            continue;
        if (best == 3 || abs(roots[k] - target) < abs(roots[best] - target))
            best = k;
    }
    if (best == 3)
        throw DomainError("no root of the Airy cubic lies inside the convergence cone");
    return best;
}

// Continuation of one root of the cubic along a sequence of M values. A step
// is split tenfold (up to four times) when another root is within ten times
// the distance moved.
class Tracker {
public:
    Tracker(const BigComplex& z, int delta) : z_(z), delta_(delta) {}

    void start(const BigReal& M, const BigComplex& y)
    {
        path_.push_back({M, y});
    }

    void advance(const BigReal& Mb, int depth = 0)
    {
        BigReal Ma = path_.back().first;
        const BigComplex y = path_.back().second;
        auto roots = solve_cubic(airy_cubic(Mb, z_, delta_));
        std::array<size_t, 3> order = {0, 1, 2};
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return abs(roots[a] - y) < abs(roots[b] - y); });
        BigReal d1 = abs(roots[order[0]] - y);
        BigReal d2 = abs(roots[order[1]] - y);
        if (d2 < 10 * d1 && depth < 4) {
            BigReal ratio = pow(Mb / Ma, BigReal(1) / 10);
            BigReal m = Ma;
            for (int s = 1; s <= 10; ++s) {
                m = s == 10 ? Mb : m * ratio;
                advance(m, depth + 1);
            }
            return;
        }
        size_t k = order[0];
        if (d2 < 10 * d1) {
            if (normalized_discriminant(airy_cubic(Mb, z_, delta_)) < 1e-2) {
                // Colliding pair: continue with the member heading for the asymptote.
                BigComplex target = airy_asymptote(Mb, delta_, track_digits);
                if (abs(roots[order[1]] - target) < abs(roots[order[0]] - target))
                    k = order[1];
            } else if (d1 > d2 * BigReal(0.999)) {
                throw AmbiguityError("two Airy roots are equidistant from the tracked root at M = " + Mb.str(8));
            }
        }
        path_.push_back({Mb, roots[k]});
    }

    const std::vector<std::pair<BigReal, BigComplex>>& path() const { return path_; }

private:
    BigComplex z_;
    int delta_;
    std::vector<std::pair<BigReal, BigComplex>> path_;
};

// Local minima of the normalised discriminant below 0.05 along an ascending
// M grid, each refined by golden-section search.
std::vector<BigReal> collision_points(const std::vector<BigReal>& grid, const BigComplex& z, int delta)
{
    auto f = [&](const BigReal& m) { return normalized_discriminant(airy_cubic(m, z, delta)); };
    std::vector<double> d;
    for (const auto& m : grid)
        d.push_back(f(m));
    std::vector<BigReal> out;
    for (size_t k = 1; k + 1 < grid.size(); ++k) {
        if (!(d[k] < d[k - 1] && d[k] <= d[k + 1] && d[k] < 0.05))
            continue;
        BigReal lo = grid[k - 1];
        BigReal hi = grid[k + 1];
        BigReal phi = (sqrt(BigReal(5)) - 1) / 2;
        for (int it = 0; it < 80; ++it) {
            BigReal x1 = hi - phi * (hi - lo);
            BigReal x2 = lo + phi * (hi - lo);
            if (f(x1) < f(x2))
                hi = x2;
            else
                lo = x1;
        }
        out.push_back((lo + hi) / 2);
    }
    return out;
}
BigComplex mul_i(const BigComplex& w) { return {-w.im(), w.re()}; }

}  // namespace

std::array<BigComplex, 3> airy_cubic_roots(const BigReal& M, const BigComplex& z, int delta)
{
    if (M <= 0)
        throw DomainError("airy_cubic_roots requires M > 0");
    PrecisionScope scope(z.precision_digits());
    return solve_cubic(airy_cubic(M, z, delta));
}

BigComplex airy_asymptote(const BigReal& M, int delta, int digits)
{
    PrecisionScope scope(digits);
    BigReal mag = pow(airy_c(M.at_digits(digits)) / 3, BigReal(1) / 3);
    return BigComplex::polar(mag, -delta * const_pi() / 6);
}

RootSelection select_root(const BigReal& M_target, const BigComplex& z, int delta, int digits)
{
    if (M_target < 0)
        throw DomainError("select_root requires M >= 0");
    if (delta != 1 && delta != -1)
        throw DomainError("delta must be +1 or -1");
    if (!z.is_zero() && abs(arg(z)) >= const_pi(z.precision_digits()))
        throw DomainError("arg z = pi lies outside the integral representation");
    RootSelection sel;
    RootTrack& track = sel.track;
    BigComplex y_track;
    {
        PrecisionScope scope(track_digits);
        BigComplex zt = z.at_digits(track_digits);
        BigReal target = M_target.at_digits(track_digits);
        BigReal M0 = min(target, BigReal("0.01"));
        // Ascending grid, ratio 1.1, through the target and on to a moment where
        // the roots sit close to their asymptotes.
        BigReal top = max(target, BigReal(1000));
        if (!zt.is_zero())
            top = max(top, 100 * pow(abs(zt), BigReal(1.5)));
        std::vector<BigReal> grid = {M0};
        if (M0 < BigReal("0.01"))
            grid.push_back(BigReal("0.01"));
        while (grid.back() < top) {
            BigReal next = grid.back() * BigReal(1.1);
            if (grid.back() < target && next > target)
                next = target;
            grid.push_back(min(next, top));
        }
        // The branch is fixed by its destination: the in-cone root nearest
        // exp(-i delta pi/6) (C_3/(3M))^(1/3) at the top of the grid, followed
        // back down to M0.
        auto top_roots = solve_cubic(airy_cubic(grid.back(), zt, delta));
        Tracker down(zt, delta);
        down.start(grid.back(), top_roots[asymptote_choice(top_roots, grid.back(), delta)]);
        if (!zt.is_zero())
            for (size_t k = grid.size() - 1; k-- > 0;)
                down.advance(grid[k]);
        for (auto it = down.path().rbegin(); it != down.path().rend(); ++it) {
            if (it->first > target)
                continue;
            auto roots = solve_cubic(airy_cubic(it->first, zt, delta));
            size_t k = nearest(roots, it->second);
            track.M.push_back(it->first);
            track.selected.push_back(it->second);
            std::array<BigComplex, 2> rest;
            for (size_t j = 0, n = 0; j < 3; ++j)
                if (j != k)
                    rest[n++] = roots[j];
            track.rejected.push_back(rest);
        }
        if (zt.is_zero()) {
            auto roots = solve_cubic(airy_cubic(target, zt, delta));
            track.M.push_back(target);
            track.selected.push_back(roots[asymptote_choice(roots, target, delta)]);
            track.rejected.push_back({});
        }
        y_track = track.selected.back();

        if (!zt.is_zero()) {
            // The root continuous from z^(1/4) is the natural start; report where
            // it leaves the cone when the destination rule replaced it.
            auto roots0 = solve_cubic(airy_cubic(M0, zt, delta));
            BigComplex seed = roots0[nearest(roots0, sqrt(sqrt(zt)))];
            if (abs(seed - track.selected.front()) > BigReal("1e-20")) {
                Tracker up(zt, delta);
                up.start(M0, seed);
                for (size_t k = 1; k < grid.size(); ++k) {
                    up.advance(grid[k]);
                    if (abs(arg(up.path().back().second)) >= quarter_pi()) {
                        track.events.push_back({RootEvent::Kind::cone_exit, grid[k],
                                                "root continuous from z^(1/4) leaves |arg y| < pi/4"});
                        break;
                    }
                }
            }
            for (const auto& m : collision_points(grid, zt, delta))
                if (m <= target)
                    track.events.push_back({RootEvent::Kind::collision_proximity, m,
                                            "double root of the cubic"});
        }
        if (abs(arg(y_track)) >= quarter_pi())
            throw DomainError("selected Airy root lies outside the convergence cone at M = " + target.str(8));
    }
    PrecisionScope scope(digits);
    BigComplex zz = z.at_digits(digits);
    auto roots = solve_cubic(airy_cubic(M_target.at_digits(digits), zz, delta));
    sel.y = roots[nearest(roots, y_track.at_digits(digits))];
    return sel;
}

BigReal collision_M(const BigReal& z_abs)
{
    if (z_abs <= 0)
        throw DomainError("collision_M requires |z| > 0");
    int digits = std::max(z_abs.precision_digits(), track_digits);
    PrecisionScope scope(digits);
    BigReal lhs = sqrt(BigReal(4) / 3) * pow(z_abs.at_digits(digits), BigReal(0.75));
    auto f = [&](const BigReal& M) { return airy_c(M) - lhs; };
    if (f(BigReal(0)) >= 0)
        throw DomainError("the Airy roots do not collide for |z| = " + z_abs.str(6));
    BigReal hi = 2 * lhs * lhs + 10;
    while (f(hi) < 0)
        hi *= 2;
    return bisect(f, BigReal(0), hi, pow(BigReal(10), -static_cast<long>(digits - 5)) * hi);
}

namespace {

AiryEvaluation airy_at(const AirySCEParams& p, int wd)
{
    PrecisionScope scope(wd);
    BigComplex z = p.z.at_digits(wd);
    BigReal M = p.M.at_digits(wd);
    AiryEvaluation out;
    RootSelection plus = select_root(M, z, 1, wd);
    RootSelection minus = select_root(M, z, -1, wd);
    out.y_plus = plus.y;
    out.y_minus = minus.y;
    out.track_plus = std::move(plus.track);
    out.track_minus = std::move(minus.track);

    BigReal c = airy_c(M);
    BigComplex yp_inv = 1 / out.y_plus;
    BigComplex ym_inv = 1 / out.y_minus;
    BigComplex yp3 = yp_inv * yp_inv * yp_inv;
    BigComplex ym3 = ym_inv * ym_inv * ym_inv;
    BigComplex pp = yp_inv;  // y^-(3n+1)
    BigComplex pm = ym_inv;
    BigComplex in(1);        // i^n
    BigReal fact(1);         // 3^n n!
    BigComplex sum = BigComplex(BigReal::with_digits(wd));
    BigReal peak = BigReal::with_digits(wd);
    std::vector<BigComplex> terms;
    for (int n = 0; n <= p.N; ++n) {
        if (n > 0) {
            fact *= 3 * n;
            pp = pp * yp3;
            pm = pm * ym3;
            in = mul_i(in);
        }
        // sum_l C(n,l) (-c)^(n-l) Gamma((2n+l+1)/2)
        BigReal inner = BigReal::with_digits(wd);
        BigReal inner_peak = BigReal::with_digits(wd);
        BigReal binom(1);
        BigReal mc = -c;
        for (int l = 0; l <= n; ++l) {
            if (l > 0)
                binom = binom * (n - l + 1) / l;
            BigReal t = binom * pow(mc, static_cast<long>(n - l)) * gamma(BigReal(2 * n + l + 1) / 2);
            inner += t;
            inner_peak = max(inner_peak, abs(t));
        }
        BigComplex outer = n % 2 == 0 ? pp + pm : pp - pm;
        outer = in * outer / (2 * fact);
        BigComplex term = outer * inner;
        peak = max(peak, abs(outer) * inner_peak);
        terms.push_back(term);
        sum += term;
    }
    BigComplex z32 = z.is_zero() ? BigComplex(BigReal::with_digits(wd)) : pow(z, BigReal(1.5));
    BigComplex pref = exp(z32 * BigReal(-2) / 3) / (2 * const_pi());
    out.ai_tilde = z.is_zero() ? BigComplex(BigReal::with_digits(wd)) : sqrt(sqrt(z)) * sum;

    SCEEvaluation& ev = out.ai;
    for (auto& t : terms)
        ev.terms.push_back(pref * t);
    ev.value = pref * sum;
    ev.digits_lost = abs(sum).is_zero() ? wd : std::max(0.0, log10_abs(peak) - log10_abs(abs(sum)));
    ev.G = out.y_plus * out.y_plus * out.y_plus * out.y_plus;
    ev.K = BigComplex(c);
    ev.q = BigReal(3);
    ev.order = p.N;
    ev.alpha = p.N > 0 ? M / p.N : BigReal::with_digits(wd);
    ev.target_digits = p.precision.target_digits;
    ev.working_digits = wd;
    ev.remainder_bound = BigReal::with_digits(wd);
    mpfr_set_inf(ev.remainder_bound.raw(), 1);
    return out;
}

}  // namespace

AiryEvaluation airy_sce(const AirySCEParams& params)
{
    if (params.N < 0)
        throw DomainError("Airy SCE order must be non-negative");
    PrecisionPolicy pol = params.precision;
    for (;;) {
        AiryEvaluation ev = airy_at(params, pol.working_digits);
        if (ev.ai.digits_lost <= pol.working_digits - pol.target_digits)
            return ev;
        PrecisionPolicy next = pol.escalated();
        if (next.working_digits <= pol.working_digits)
            throw PrecisionExhausted("Airy SCE cancellation exceeded the working precision at N = " +
                                     std::to_string(params.N));
        pol = next;
    }
}

std::string to_string(StokesSector s)
{
    switch (s) {
    case StokesSector::monotone_convergent:
        return "monotone-convergent";
    case StokesSector::reduced_rate:
        return "reduced-rate";
    case StokesSector::initial_explosion:
        return "initial-explosion";
    }
    return "unknown";
}

std::vector<StokesRecord> stokes_profile(const BigReal& z_abs, const std::vector<BigReal>& arg_grid,
                                         const std::vector<int>& orders, const MomentSchedule& schedule,
                                         int target_digits)
{
    if (z_abs <= 0)
        throw DomainError("stokes_profile requires |z| > 0");
    if (orders.empty())
        throw DomainError("stokes_profile needs at least one order");
    std::vector<StokesRecord> out;
    PrecisionPolicy pol = PrecisionPolicy::for_target(target_digits);
    for (const auto& phi : arg_grid) {
        PrecisionScope scope(pol.working_digits);
        StokesRecord rec;
        rec.arg_z = phi;
        BigComplex z = BigComplex::polar(z_abs.at_digits(pol.working_digits), phi.at_digits(pol.working_digits));
        BigComplex ref = airy_reference(z, target_digits + 10);
        BigComplex sz = sqrt(z);
        for (int N : orders) {
            AirySCEParams p;
            p.z = z;
            p.N = N;
            p.M = schedule.M(N, pol.working_digits);
            p.precision = pol;
            AiryEvaluation ev = airy_sce(p);
            rec.orders.push_back(N);
            rec.log10_error.push_back(log10_abs(rel_diff(ev.ai.value, ref)));
        }
        BigReal path_end = max(schedule.M(orders.back(), pol.working_digits), BigReal(10000));
        for (int delta : {1, -1})
            for (const auto& y : select_root(path_end, z, delta, track_digits).track.selected)
                rec.max_factor = std::max(rec.max_factor, abs(1 - sz / (y * y)).to_double());
        const auto& e = rec.log10_error;
        for (size_t k = 1; k + 1 < e.size(); ++k)
            if (e[k] > e[k - 1] && e[k] > e[k + 1])
                rec.local_maxima.push_back(rec.orders[k]);
        if (e.size() > 1 && e[1] > e[0])
            rec.sector = StokesSector::initial_explosion;
        else if (rec.max_factor > 1 + 1e-12)
            rec.sector = StokesSector::reduced_rate;
        else
            rec.sector = StokesSector::monotone_convergent;
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace sce
