#pragma once

#include <optional>
#include <vector>

#include "squarepeg/curve.hpp"

namespace squarepeg {

struct ConstructionParams {
  // strictly increasing, each in the open interval (-pi/4, pi/4); the
  // endpoints -pi/4 and pi/4 are implicit
  std::vector<double> anchors;
  // bump amplitude; unset means 0.5 * min over arcs of max_convex_c
  std::optional<double> c;
  double a = 0.02;
};

struct CriticalSearchResult {
  double c_star = 0.0;
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  double tangency_x = 0.0;
  int iterations = 0;
};

struct IntersectionScan {
  int count = 0;                   // transversal crossings on the open right side
  std::vector<double> abscissas;   // refined crossing x values (tangency: argmin |g|)
  double min_abs_g = 0.0;
  bool tangency = false;
};

// 3/4 unit circle (-pi/4 to 5pi/4) closed by the inward semicircle; two
// corner joints at (+-1/sqrt2, -1/sqrt2)
CurveSpec build_nonsmooth_two_square();

// 3/4 unit circle closed by the graph bump arc; throws "non-simple curve"
// when c is large enough that the graph crosses the circle
CurveSpec build_smooth_two_square(double c, double a = 0.02);

// 3/4 unit circle (pi/4 to 7pi/4) closed by k+1 polar bump arcs over
// consecutive pairs of {-pi/4, anchors..., pi/4}; target square count k+1
CurveSpec build_n_square(const ConstructionParams& params);

// evenly spaced default anchors for a target count of n squares
ConstructionParams default_n_square_params(int n, std::optional<double> c = std::nullopt,
                                           double a = 0.02);

// base-endpoint height of the square whose top side is the horizontal chord
// at (+-x, sqrt(1-x^2)): y = sqrt(1-x^2) - 2|x|; domain |x| <= 1/sqrt2
double locus(double x);

// y of the graph bump arc at abscissa x
double graph_height(double x, double c, double a = 0.02);

// crossings of the graph bump arc with the locus on the open right side
// (0, 1/sqrt2): 1e5-point sign-change scan, bisection refinement to 1e-12;
// a dip below 1e-9 in |g| without sign change counts once as a tangency
IntersectionScan graph_locus_intersections(double c, double a = 0.02);

// bisection over the bump amplitude between intersection counts 0 and 2;
// terminates when the bracket is narrower than 1e-6 and returns its midpoint.
// requires count(low) == 0 and count(high) == 2 ("invalid bracket")
CriticalSearchResult critical_c(double low = 1.0, double high = 1.4, double a = 0.02);

// largest amplitude keeping the polar bump arc convex: bisection on (0, 1)
// to 1e-6 over the predicate "min sampled curvature over 1e5 points > 0"
double max_convex_c(double u, double v, double a = 0.02);

// the factory default amplitude for build_n_square
double default_bump_amplitude(const std::vector<double>& anchors, double a = 0.02);

}  // namespace squarepeg
