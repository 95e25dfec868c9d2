#pragma once

#include <array>
#include <string>
#include <vector>

#include "sce/complex.hpp"
#include "sce/mp.hpp"
#include "sce/quartic.hpp"
#include "sce/types.hpp"

namespace sce {

struct AirySCEParams {
    BigComplex z;  // arg z in (-pi, pi)
    int N = 0;
    BigReal M;  // shared by both components
    PrecisionPolicy precision = PrecisionPolicy::for_target(30);
};

// The three roots y of 3 i delta y (y^2 - sqrt z) - C_3(M)/M = 0, closed form
// followed by Newton polishing at the precision of z.
std::array<BigComplex, 3> airy_cubic_roots(const BigReal& M, const BigComplex& z, int delta);

struct RootEvent {
    enum class Kind { cone_exit, collision_proximity };
    Kind kind;
    BigReal M;
    std::string note;
};

struct RootTrack {
    std::vector<BigReal> M;
    std::vector<BigComplex> selected;
    std::vector<std::array<BigComplex, 2>> rejected;
    std::vector<RootEvent> events;
};

struct RootSelection {
    BigComplex y;
    RootTrack track;
};

// Root on the branch that ends, at large M, on the in-cone asymptote
// exp(-i delta pi/6) (C_3/(3M))^(1/3). The branch is followed by continuation
// over a geometric M grid (ratio 1.1 from 0.01, refined tenfold near close
// approaches). Where the root continuous from z^(1/4) is a different branch,
// the M at which it leaves the cone |arg y| < pi/4 is logged as an event, and
// double roots on the path are logged as collisions. At z = 0 the asymptotic
// root is taken directly.
RootSelection select_root(const BigReal& M_target, const BigComplex& z, int delta, int digits = 30);

// Asymptotic direction targeted after a cone exit or a collision.
BigComplex airy_asymptote(const BigReal& M, int delta, int digits);

// M solving sqrt(4/3) |z|^(3/4) = C_3(M)/M. DomainError when |z| is too small
// for the two roots to meet at any M >= 0.
BigReal collision_M(const BigReal& z_abs);

struct AiryEvaluation {
    SCEEvaluation ai;      // Ai^(N)(z), terms per order
    BigComplex ai_tilde;   // sum of the two reduced components
    BigComplex y_plus;
    BigComplex y_minus;
    RootTrack track_plus;
    RootTrack track_minus;
};

AiryEvaluation airy_sce(const AirySCEParams& params);

enum class StokesSector { monotone_convergent, reduced_rate, initial_explosion };
std::string to_string(StokesSector s);

struct StokesRecord {
    BigReal arg_z;
    std::vector<int> orders;
    std::vector<double> log10_error;
    double max_factor = 0;  // max |1 - sqrt(z)/sqrt(G)| over both tracks
    StokesSector sector = StokesSector::monotone_convergent;
    std::vector<int> local_maxima;  // orders where the error has a local peak
};

// Relative error of Ai^(N) against the Maclaurin reference over a grid of
// arg z at fixed |z|.
std::vector<StokesRecord> stokes_profile(const BigReal& z_abs, const std::vector<BigReal>& arg_grid,
                                         const std::vector<int>& orders, const MomentSchedule& schedule,
                                         int target_digits = 30);

}  // namespace sce
