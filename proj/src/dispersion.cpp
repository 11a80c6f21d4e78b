#include "bubblelab/dispersion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace bubble {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxSegmentTurn = 0.5;  // radians per contour segment
constexpr int kMaxContourDepth = 48;

struct Coeffs {
  double kb, RT, gamma, rho_l, Rs, mu, sigma, rho;
  double a0() const { return 4.0 * kPi / (3.0 * gamma); }
  double a1() const { return 8.0 * (gamma - 1.0) / (kPi * gamma); }
  double c0() const { return 4.0 * kPi * rho / Rs; }
  cplx poly(cplx t) const {
    return rho_l * Rs * t * t + 4.0 * mu * t / Rs - 2.0 * sigma / (Rs * Rs);
  }
};

Coeffs coeffs(const ModelParams& p, const Equilibrium& eq) {
  return {kappa_bar(p, eq), p.RT(),  p.gamma, p.rho_l,
          eq.R_star,        p.mu_l, p.sigma, eq.rho_star};
}

// z coth z with Re z >= 0, written through exp(-2z) so it never overflows.
cplx z_coth_z(cplx z) {
  const cplx e = std::exp(-2.0 * z);
  return z * (1.0 + e) / (1.0 - e);
}

cplx mode_sum_impl(double kb, cplx tau, bool& closed) {
  const cplx b = tau / (kPi * kPi * kb);
  if (std::abs(b) < 1e-4) {
    closed = false;
    const double p2 = kPi * kPi, p4 = p2 * p2, p6 = p4 * p2, p8 = p4 * p4;
    return p2 / 6.0 - b * (p4 / 90.0) + b * b * (p6 / 945.0) - b * b * b * (p8 / 9450.0);
  }
  closed = true;
  cplx z = kPi * std::sqrt(b);
  if (z.real() < 0) z = -z;
  return (z_coth_z(z) - 1.0) / (2.0 * b);
}

double nearest_pole_distance(const Coeffs& c, cplx tau) {
  const double unit = kPi * kPi * c.kb;
  const double x = -tau.real() / unit;
  const double j0 = x > 0 ? std::floor(std::sqrt(x)) : 0.0;
  double best = INFINITY;
  for (double j = std::max(1.0, j0 - 1.0); j <= j0 + 2.0; j += 1.0)
    best = std::min(best, std::abs(tau + unit * j * j));
  return best;
}

cplx Q_value(const Coeffs& c, cplx tau, bool& closed) {
  const cplx S = mode_sum_impl(c.kb, tau, closed);
  return (c.a0() + c.a1() * S) * c.poly(tau) / c.RT + c.c0();
}

cplx Q_value(const Coeffs& c, cplx tau) {
  bool closed = true;
  return Q_value(c, tau, closed);
}

double scale_of(const Coeffs& c, cplx tau) {
  bool closed = true;
  const cplx S = mode_sum_impl(c.kb, tau, closed);
  const double at = std::abs(tau);
  const double poly =
      c.rho_l * c.Rs * at * at + 4.0 * c.mu * at / c.Rs + 2.0 * std::abs(c.sigma) / (c.Rs * c.Rs);
  return (c.a0() + c.a1() * std::abs(S)) * poly / c.RT + c.c0();
}

struct Contour {
  const Coeffs& c;

  struct Sample {
    cplx t;
    cplx q;
  };

  Sample at(cplx t) const {
    const double dp = nearest_pole_distance(c, t);
    if (dp < 1e-10 * std::max(1.0, std::abs(t)))
      throw NumericalFailure(Failure::WindingInconclusive, "contour touches a pole");
    const cplx q = Q_value(c, t);
    if (!std::isfinite(q.real()) || !std::isfinite(q.imag()) ||
        std::abs(q) < 1e-13 * scale_of(c, t))
      throw NumericalFailure(Failure::WindingInconclusive, "contour passes through a root");
    return {t, q};
  }

  double turn(const Sample& a, const Sample& b, int depth) const {
    const Sample m = at(0.5 * (a.t + b.t));
    const double d = std::arg(b.q / a.q);
    const cplx lin = 0.5 * (a.q + b.q);
    const bool smooth = std::abs(d) < kMaxSegmentTurn &&
                        std::abs(m.q - lin) < 0.25 * std::min(std::abs(a.q), std::abs(b.q));
    if (smooth) return std::arg(m.q / a.q) + std::arg(b.q / m.q);
    if (depth >= kMaxContourDepth)
      throw NumericalFailure(Failure::WindingInconclusive,
                             "contour refinement exhausted near " + std::to_string(m.t.real()) +
                                 (m.t.imag() < 0 ? "" : "+") + std::to_string(m.t.imag()) + "i");
    return turn(a, m, depth + 1) + turn(m, b, depth + 1);
  }

  double edge(cplx from, cplx to) const {
    constexpr int n = 32;
    double total = 0.0;
    Sample prev = at(from);
    for (int i = 1; i <= n; ++i) {
      const Sample next = at(from + (to - from) * (double(i) / n));
      total += turn(prev, next, 0);
      prev = next;
    }
    return total;
  }

  int winding(const Box& b) const {
    const cplx z0(b.re_lo, b.im_lo), z1(b.re_hi, b.im_lo), z2(b.re_hi, b.im_hi),
        z3(b.re_lo, b.im_hi);
    const double total = edge(z0, z1) + edge(z1, z2) + edge(z2, z3) + edge(z3, z0);
    const double w = total / (2.0 * kPi);
    const double r = std::round(w);
    if (std::abs(w - r) > 0.05)
      throw NumericalFailure(Failure::WindingInconclusive,
                             "non-integer winding " + std::to_string(w));
    return static_cast<int>(r);
  }
};

int poles_inside(const Coeffs& c, const Box& b) {
  if (b.im_lo >= 0.0 || b.im_hi <= 0.0) return 0;
  const double unit = kPi * kPi * c.kb;
  int n = 0;
  for (long j = 1;; ++j) {
    const double p = -unit * double(j) * double(j);
    if (p < b.re_lo) break;
    if (p < b.re_hi) ++n;
  }
  return n;
}

cplx Q_derivative(const Coeffs& c, cplx tau) {
  const double h = 1e-6 * (1.0 + std::abs(tau));
  return (Q_value(c, tau + h) - Q_value(c, tau - h)) / (2.0 * h);
}

bool newton(const Coeffs& c, cplx& tau) {
  for (int it = 0; it < 60; ++it) {
    const cplx q = Q_value(c, tau);
    if (std::abs(q) <= 1e-10 * scale_of(c, tau)) return true;
    const cplx dq = Q_derivative(c, tau);
    if (std::abs(dq) == 0.0 || !std::isfinite(std::abs(dq))) return false;
    const cplx step = q / dq;
    tau -= step;
    if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag())) return false;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(tau)))
      return std::abs(Q_value(c, tau)) <= 1e-10 * scale_of(c, tau);
  }
  return false;
}

// A split line must keep clear of poles (on the real axis) by the disk radius.
bool line_clear(const Coeffs& c, bool vertical, double x) {
  if (vertical) return nearest_pole_distance(c, cplx(x, 0.0)) > 1e-3;
  return std::abs(x) > 1e-3;
}

struct Searcher {
  const Coeffs& c;
  Contour contour{c};

  int count(const Box& b) const { return contour.winding(b) + poles_inside(c, b); }

  void run(const Box& b, int n, std::vector<cplx>& out, int depth) const {
    if (n <= 0) return;
    const cplx centre(0.5 * (b.re_lo + b.re_hi), 0.5 * (b.im_lo + b.im_hi));
    const double w = b.re_hi - b.re_lo, h = b.im_hi - b.im_lo;
    if (n == 1) {
      cplx t = centre;
      if (newton(c, t) && t.real() >= b.re_lo && t.real() <= b.re_hi && t.imag() >= b.im_lo &&
          t.imag() <= b.im_hi) {
        out.push_back(t);
        return;
      }
    }
    if (std::max(w, h) < 1e-9 * (1.0 + std::abs(centre)) || depth > 200) {
      cplx t = centre;
      newton(c, t);
      for (int i = 0; i < n; ++i) out.push_back(t);
      return;
    }
    static constexpr std::array<double, 6> fractions{0.5137, 0.4771, 0.5613, 0.4399, 0.6211, 0.3877};
    const bool vertical = w >= h;
    for (double f : fractions) {
      const double cut = vertical ? b.re_lo + f * w : b.im_lo + f * h;
      if (!line_clear(c, vertical, cut)) continue;
      Box lo = b, hi = b;
      if (vertical) {
        lo.re_hi = cut;
        hi.re_lo = cut;
      } else {
        lo.im_hi = cut;
        hi.im_lo = cut;
      }
      int n_lo = 0, n_hi = 0;
      try {
        n_lo = count(lo);
        n_hi = count(hi);
      } catch (const NumericalFailure&) {
        continue;
      }
      if (n_lo + n_hi != n) continue;
      run(lo, n_lo, out, depth + 1);
      run(hi, n_hi, out, depth + 1);
      return;
    }
    throw NumericalFailure(Failure::WindingInconclusive,
                           "no admissible split near " + std::to_string(centre.real()) + "," +
                               std::to_string(centre.imag()));
  }
};

void snap_real(const Coeffs& c, cplx& t) {
  if (std::abs(t.imag()) > 1e-10 * (1.0 + std::abs(t))) return;
  cplx r(t.real(), 0.0);
  if (newton(c, r) && std::abs(r.imag()) == 0.0) t = r;
}

std::vector<cplx> dedup(std::vector<cplx> roots) {
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<cplx> out;
  for (const cplx& r : roots) {
    bool dup = false;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      if (r.real() - it->real() > 1e-8 * (1.0 + std::abs(r))) break;
      if (std::abs(r - *it) <= 1e-8 * (1.0 + std::abs(r))) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(r);
  }
  return out;
}

}  // namespace

cplx mode_sum(double kb, cplx tau) {
  bool closed = true;
  return mode_sum_impl(kb, tau, closed);
}

cplx mode_sum_partial(double kb, cplx tau, long terms) {
  const double unit = kPi * kPi * kb;
  cplx s = 0.0;
  for (long j = terms; j >= 1; --j) s += unit / (unit * double(j) * double(j) + tau);
  return s;
}

QEvaluation eval_Q(const ModelParams& params, const Equilibrium& eq, cplx tau) {
  const Coeffs c = coeffs(params, eq);
  const double dp = nearest_pole_distance(c, tau);
  if (dp < 1e-10)
    throw NumericalFailure(Failure::PoleProximity,
                           "tau within 1e-10 of a pole of Q (distance " + std::to_string(dp) + ")");
  QEvaluation r;
  r.tau = tau;
  r.value = Q_value(c, tau, r.closed_form);
  return r;
}

cplx eval_Q_partial(const ModelParams& params, const Equilibrium& eq, cplx tau, long terms) {
  const Coeffs c = coeffs(params, eq);
  const cplx S = mode_sum_partial(c.kb, tau, terms);
  return (c.a0() + c.a1() * S) * c.poly(tau) / c.RT + c.c0();
}

double Q_scale(const ModelParams& params, const Equilibrium& eq, cplx tau) {
  return scale_of(coeffs(params, eq), tau);
}

double pole(const ModelParams& params, const Equilibrium& eq, int j) {
  return -kPi * kPi * kappa_bar(params, eq) * double(j) * double(j);
}

Box default_box(const ModelParams& params, const Equilibrium& eq, int J) {
  const double extent = 10.0 * kPi * kPi * kappa_bar(params, eq) * double(J) * double(J);
  return {-extent, 1.0, -extent, extent};
}

int winding_number(const ModelParams& params, const Equilibrium& eq, const Box& box) {
  const Coeffs c = coeffs(params, eq);
  return Contour{c}.winding(box);
}

int count_zeros(const ModelParams& params, const Equilibrium& eq, const Box& box) {
  const Coeffs c = coeffs(params, eq);
  return Contour{c}.winding(box) + poles_inside(c, box);
}

std::vector<cplx> find_roots(const ModelParams& params, const Equilibrium& eq, const Box& box_in,
                             int max_roots, bool parallel) {
  const Coeffs c = coeffs(params, eq);
  const Searcher s{c};

  // Nudge box edges off the pole disks.
  Box box = box_in;
  for (int k = 0; k < 100 && !line_clear(c, true, box.re_lo); ++k) box.re_lo -= 2e-3;
  for (int k = 0; k < 100 && !line_clear(c, true, box.re_hi); ++k) box.re_hi += 2e-3;

  // Map: independent vertical strips. Strip edges are shifted off the pole
  // disks; a strip whose count fails is searched again with shifted edges.
  const double width = box.re_hi - box.re_lo;
  const int strips = std::clamp(static_cast<int>(width / 50.0), 1, 256);
  std::vector<double> cuts(strips + 1);
  cuts[0] = box.re_lo;
  cuts[strips] = box.re_hi;
  for (int i = 1; i < strips; ++i) {
    double x = box.re_lo + width * (i + 0.0173) / strips;
    while (!line_clear(c, true, x)) x += 2e-3;
    cuts[i] = x;
  }

  std::vector<std::vector<cplx>> found(strips);
  std::vector<std::string> errors(strips);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < strips; ++i) {
    try {
      Box b = box;
      b.re_lo = cuts[i];
      b.re_hi = cuts[i + 1];
      const int n = s.count(b);
      s.run(b, n, found[i], 0);
    } catch (const NumericalFailure& e) {
      errors[i] = e.what();
    }
  }

  // Reduce.
  std::vector<cplx> all;
  for (int i = 0; i < strips; ++i) {
    if (!errors[i].empty()) throw NumericalFailure(Failure::WindingInconclusive, errors[i]);
    all.insert(all.end(), found[i].begin(), found[i].end());
  }
  for (cplx& t : all) snap_real(c, t);
  all = dedup(std::move(all));
  if (static_cast<int>(all.size()) > max_roots) all.resize(max_roots);
  return all;
}

BetaBound beta_bound(const ModelParams& params, const Equilibrium& eq) {
  BetaBound r;
  const double g = params.gamma;
  const double kb = kappa_bar(params, eq);
  const double Rs = eq.R_star;
  const double p = params.p_inf_star;
  const double s = params.sigma;
  const double RT = params.RT();
  const double rl = params.rho_l;
  const double mu = params.mu_l;

  const double ratio = (3.0 * p * Rs + 6.0 * s) / (2.0 * p * Rs + 6.0 * s) - 1.0 / g;
  r.term1 = (1.0 - std::sqrt((1.0 - 1.0 / g) / ratio)) * kPi * kPi * kb;
  r.term2 = std::sqrt(RT * eq.rho_star / (rl * Rs * Rs));
  r.delta = std::pow(4.0 * mu / Rs, 2) - 8.0 * rl * RT * eq.rho_star;
  r.term3 = 2.0 * mu / (rl * Rs * Rs);
  if (r.delta <= 0.0) {
    const double p4 = std::pow(kPi, 4);
    r.term3 += RT * eq.rho_star / (p4 * kb * rl * Rs * Rs) * (1.0 - 1.0 / g) * (p4 / 90.0);
  } else {
    r.term3 -= std::sqrt(r.delta) / (2.0 * rl * Rs);
  }
  r.beta = std::min({r.term1, r.term2, r.term3});
  r.B = r.term2 / (kPi * kPi * kb);
  r.leading_order = true;
  return r;
}

}  // namespace bubble
