#pragma once

#include <complex>
#include <vector>

#include "bubblelab/equilibria.hpp"
#include "bubblelab/model.hpp"

namespace bubble {

using cplx = std::complex<double>;

// S(tau) = sum_j pi^2 kb / (pi^2 kb j^2 + tau).
cplx mode_sum(double kb, cplx tau);
cplx mode_sum_partial(double kb, cplx tau, long terms);

struct QEvaluation {
  cplx tau;
  cplx value;
  bool closed_form = true;  // false when the small-|b| Taylor branch was used
};

QEvaluation eval_Q(const ModelParams& params, const Equilibrium& eq, cplx tau);
cplx eval_Q_partial(const ModelParams& params, const Equilibrium& eq, cplx tau, long terms);

// Magnitude of the individual terms of Q at tau; the scale for relative
// residuals when |tau| is large.
double Q_scale(const ModelParams& params, const Equilibrium& eq, cplx tau);

// Poles of Q lie at -pi^2 kb j^2.
double pole(const ModelParams& params, const Equilibrium& eq, int j);

struct Box {
  double re_lo = 0.0;
  double re_hi = 0.0;
  double im_lo = 0.0;
  double im_hi = 0.0;
};

// Default search box for truncation J.
Box default_box(const ModelParams& params, const Equilibrium& eq, int J);

// Winding number of Q around the boundary of the box (zeros minus poles).
// Throws WindingInconclusive when the contour passes too close to a zero.
int winding_number(const ModelParams& params, const Equilibrium& eq, const Box& box);

// Number of zeros inside the box: winding number plus enclosed poles.
int count_zeros(const ModelParams& params, const Equilibrium& eq, const Box& box);

// All zeros in the box, polished by Newton to |Q| <= 1e-10 Q_scale.
std::vector<cplx> find_roots(const ModelParams& params, const Equilibrium& eq, const Box& box,
                             int max_roots = 100000, bool parallel = true);

struct BetaBound {
  double beta = 0.0;
  double term1 = 0.0;
  double term2 = 0.0;
  double term3 = 0.0;
  double delta = 0.0;
  // (1/(pi^2 kb)) sqrt(R_g T rho* / (rho_l R*^2)); the dropped remainder of
  // term3 is O(B^{3/2}).
  double B = 0.0;
  bool leading_order = true;
};

BetaBound beta_bound(const ModelParams& params, const Equilibrium& eq);

}  // namespace bubble
