#include "coexist/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "coexist/sampling.hpp"

namespace coexist {

double margin(const MVec4& a, const Effect& e, const Effect& f) {
  const MVec4 g2 = e.vec() - a;
  const MVec4 g3 = f.vec() - a;
  const MVec4 g4 = MVec4::identity() - e.vec() - f.vec() + a;
  return std::min(std::min(a.lambda_min(), g2.lambda_min()),
                  std::min(g3.lambda_min(), g4.lambda_min()));
}

namespace {

using Vec4 = std::array<double, 4>;

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

struct SearchState {
  const Effect& e;
  const Effect& f;
  long budget;
  long evaluations = 0;
  bool exhausted = false;

  double eval(const MVec4& a) {
    if (evaluations >= budget) {
      exhausted = true;
      return -std::numeric_limits<double>::infinity();
    }
    ++evaluations;
    return margin(a, e, f);
  }
};

MVec4 nudge(const MVec4& a, int coord, double step) {
  MVec4 out = a;
  switch (coord) {
    case 0: out.c0 += step; break;
    case 1: out.c1 += step; break;
    case 2: out.c2 += step; break;
    default: out.c3 += step; break;
  }
  return out;
}

// Greedy sweeps over the four coordinates with step halving; cheap first
// phase that lands near the optimum.
double coordinate_descent(SearchState& state, MVec4& a, double value,
                          double min_step) {
  double step = 0.25;
  while (step >= min_step && !state.exhausted) {
    bool improved = false;
    for (int coord = 0; coord < 4 && !state.exhausted; ++coord) {
      for (double dir : {step, -step}) {
        const MVec4 cand = nudge(a, coord, dir);
        const double v = state.eval(cand);
        if (v > value) {
          value = v;
          a = cand;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return value;
}

// The four smallest-eigenvalue functions and their (sub)gradients. Each is
// c_i(a0) - |s_i(a)| with s_i affine in the spatial part, so the gradient is
// (sign, -unit(s_i)).
void eigen_values_and_grads(const MVec4& a, const Effect& e, const Effect& f,
                            double values[4], Vec4 grads[4]) {
  const MVec4 ops[4] = {a, e.vec() - a, f.vec() - a,
                        MVec4::identity() - e.vec() - f.vec() + a};
  const double sign[4] = {1.0, -1.0, -1.0, 1.0};
  for (int i = 0; i < 4; ++i) {
    const double r = ops[i].spatial_norm();
    values[i] = ops[i].c0 - r;
    if (r > 1e-15) {
      // op_i = sign_i * a + const, so d(lambda)/da = (sign_i, -sign_i * unit(s_i))
      const double fac = sign[i] / r;
      grads[i] = {sign[i], -fac * ops[i].c1, -fac * ops[i].c2, -fac * ops[i].c3};
    } else {
      grads[i] = {sign[i], 0.0, 0.0, 0.0};  // any unit-ball element works
    }
  }
}

// Minimum-norm point of the convex hull of up to four points, by enumerating
// the faces: for each subset solve the affine least-norm system and keep the
// best candidate with nonnegative weights.
Vec4 min_norm_point(const std::vector<Vec4>& pts) {
  const int n = static_cast<int>(pts.size());
  Vec4 best = pts[0];
  double best_norm = dot(best, best);
  for (int mask = 1; mask < (1 << n); ++mask) {
    int idx[4], k = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) idx[k++] = i;
    double gram[4][5];
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) gram[r][c] = dot(pts[idx[r]], pts[idx[c]]);
      gram[r][k] = 1.0;
    }
    // solve G w = 1 by Gaussian elimination with partial pivoting
    double w[4];
    {
      double m[4][5];
      for (int r = 0; r < k; ++r)
        for (int c = 0; c <= k; ++c) m[r][c] = (c < k) ? gram[r][c] : 1.0;
      bool singular = false;
      for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
          if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-14) {
          singular = true;
          break;
        }
        if (piv != col)
          for (int c = 0; c <= k; ++c) std::swap(m[piv][c], m[col][c]);
        for (int r = 0; r < k; ++r) {
          if (r == col) continue;
          const double fac = m[r][col] / m[col][col];
          for (int c = col; c <= k; ++c) m[r][c] -= fac * m[col][c];
        }
      }
      if (singular) continue;
      double sum = 0.0;
      for (int r = 0; r < k; ++r) {
        w[r] = m[r][k] / m[r][r];
        sum += w[r];
      }
      if (std::abs(sum) < 1e-14) continue;
      bool ok = true;
      for (int r = 0; r < k; ++r) {
        w[r] /= sum;
        if (w[r] < -1e-10) ok = false;
      }
      if (!ok) continue;
    }
    Vec4 cand = {0, 0, 0, 0};
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < 4; ++c) cand[c] += w[r] * pts[idx[r]][c];
    const double norm = dot(cand, cand);
    if (norm < best_norm) {
      best_norm = norm;
      best = cand;
    }
  }
  return best;
}

// Concave line maximization along d: bracket by doubling, then refine by
// golden-section.
double line_search(SearchState& state, MVec4& a, const Vec4& d, double value) {
  double t = 1e-4;
  auto at = [&](double s) {
    return MVec4{a.c0 + s * d[0], a.c1 + s * d[1], a.c2 + s * d[2],
                 a.c3 + s * d[3]};
  };
  double v = state.eval(at(t));
  while (v <= value && t > 1e-13 && !state.exhausted) {
    t *= 0.25;
    v = state.eval(at(t));
  }
  if (v <= value) return value;  // no ascent at any scale
  double t_best = t, v_best = v;
  while (!state.exhausted) {
    const double t2 = 2.0 * t_best;
    const double v2 = state.eval(at(t2));
    if (v2 <= v_best) break;
    t_best = t2;
    v_best = v2;
  }
  // golden-section on [0, 2 t_best]
  const double phi = 0.6180339887498949;
  double lo = 0.0, hi = 2.0 * t_best;
  double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
  double f1 = state.eval(at(m1)), f2 = state.eval(at(m2));
  for (int it = 0; it < 80 && hi - lo > 1e-14 && !state.exhausted; ++it) {
    if (f1 > v_best) {
      v_best = f1;
      t_best = m1;
    }
    if (f2 > v_best) {
      v_best = f2;
      t_best = m2;
    }
    if (f1 < f2) {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + phi * (hi - lo);
      f2 = state.eval(at(m2));
    } else {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - phi * (hi - lo);
      f1 = state.eval(at(m1));
    }
  }
  if (v_best > value) {
    a = at(t_best);
    return v_best;
  }
  return value;
}

// Supergradient ascent with the exact steepest direction over the active
// set: the min-norm point of the active gradients vanishes exactly at the
// global maximum, which doubles as the termination certificate.
double supergradient_ascent(SearchState& state, MVec4& a, double value) {
  double band = 1e-7;
  for (int iter = 0; iter < 200 && !state.exhausted; ++iter) {
    double values[4];
    Vec4 grads[4];
    eigen_values_and_grads(a, state.e, state.f, values, grads);
    const double m = std::min(std::min(values[0], values[1]),
                              std::min(values[2], values[3]));
    value = std::max(value, m);
    std::vector<Vec4> active;
    for (int i = 0; i < 4; ++i)
      if (values[i] <= m + band) active.push_back(grads[i]);
    const Vec4 ghat = min_norm_point(active);
    const double gnorm = std::sqrt(dot(ghat, ghat));
    if (gnorm <= 1e-9) {
      if (band <= 1e-11) break;  // optimal within certificate resolution
      band *= 1e-2;
      continue;
    }
    const Vec4 dir = {ghat[0] / gnorm, ghat[1] / gnorm, ghat[2] / gnorm,
                      ghat[3] / gnorm};
    const double improved = line_search(state, a, dir, m);
    if (improved <= m + 1e-15) {
      if (band >= 1e-5) break;  // stuck: accept current point
      band *= 10.0;
    } else {
      value = improved;
    }
  }
  return std::max(value, margin(a, state.e, state.f));
}

bool lexicographic_less(const MVec4& a, const MVec4& b) {
  if (a.c0 != b.c0) return a.c0 < b.c0;
  if (a.c1 != b.c1) return a.c1 < b.c1;
  if (a.c2 != b.c2) return a.c2 < b.c2;
  return a.c3 < b.c3;
}

}  // namespace

FeasibilityResult solve(const Effect& e, const Effect& f, const SolveOptions& opts) {
  if (!(opts.tol > 0.0))
    throw Error(Errc::InvalidArgument, "oracle tolerance must be positive");

  std::vector<MVec4> starts;
  starts.push_back(MVec4::zero());
  starts.push_back(e.vec());
  starts.push_back(f.vec());
  starts.push_back(0.5 * (e.vec() + f.vec()));
  MVec4 overlap = e.vec() + f.vec() - MVec4::identity();
  overlap.c0 = std::clamp(overlap.c0, 0.0, 1.0);
  const double r = overlap.spatial_norm();
  const double rmax = std::min(overlap.c0, 1.0 - overlap.c0);
  if (r > rmax && r > 0.0) {
    const double shrink = rmax / r;
    overlap.c1 *= shrink;
    overlap.c2 *= shrink;
    overlap.c3 *= shrink;
  }
  starts.push_back(overlap);

  EffectSampler sampler(SamplerKind::Uniform, opts.seed);
  for (int i = 0; i < opts.random_starts; ++i)
    starts.push_back(sampler.next().vec());

  SearchState state{e, f, opts.budget};
  const double min_step = opts.tol / 16.0;

  FeasibilityResult best;
  best.best_margin = -std::numeric_limits<double>::infinity();
  for (const MVec4& start : starts) {
    MVec4 a = start;
    double value = state.eval(a);
    value = coordinate_descent(state, a, value, std::max(min_step, 1e-6));
    value = supergradient_ascent(state, a, value);
    if (value > best.best_margin ||
        (value == best.best_margin && lexicographic_less(a, best.argmax_a))) {
      best.best_margin = value;
      best.argmax_a = a;
    }
    if (state.exhausted) break;
  }
  best.evaluations = state.evaluations;
  best.budget_exhausted = state.exhausted;
  best.tol = opts.tol;
  best.feasible = best.best_margin >= -opts.tol;
  return best;
}

}  // namespace coexist
