#pragma once

#include <functional>
#include <vector>

namespace lrgf::quad {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

// A point where the integrand behaves like c * |x - x0|^exponent times a
// smooth factor. exponent > -1 integrates; anything at or past -1 is caught
// by the shell monitor during refinement.
struct SingularCut {
    double x;
    double exponent;
};

struct Options {
    double abs_tol = 1e-8;
    int max_depth = 40;         // dyadic shell/bisection depth per segment
    long max_panels = 400000;   // total panel budget
    // Segments wider than this are pre-split before adaptation kicks in;
    // callers integrating oscillatory factors set it to a fraction of the
    // oscillation period.
    double max_initial_width = 0.0;  // 0 = no pre-split
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    long panels = 0;
    bool converged = true;
};

// Panel integration of f over [a, b]. The interval is split at the given
// cuts; segments away from cuts refine adaptively (Gauss-Kronrod 7-15),
// segments ending on a cut are summed over dyadic shells shrinking toward
// it, closed by an analytic power-law sliver term so no node is placed
// closer than ~1e-7 of the segment scale to the singularity. Shell sums
// that refuse to decay raise DivergenceError ("non-stabilizing
// refinement"); exhausting the panel budget raises QuadratureBudgetError.
Result integrate(const Fn1& f, double a, double b, const Options& opts,
                 const std::vector<SingularCut>& cuts = {});

double integrate_value(const Fn1& f, double a, double b, const Options& opts,
                       const std::vector<SingularCut>& cuts = {});

// Nested 2-d integration over [ax,bx] x [ay,by]; `inner_cuts(y)` lists the
// x-singularities of the slice at height y, `outer_cuts` the y-values where
// slices change character. A slicewise non-integrable integrand surfaces as
// DivergenceError from the inner pass.
double integrate2d(
    const Fn2& f, double ax, double bx, double ay, double by, double abs_tol,
    const std::function<std::vector<SingularCut>(double)>& inner_cuts,
    const std::vector<SingularCut>& outer_cuts,
    double max_initial_width = 0.0);

}  // namespace lrgf::quad
