#include "zeros.hpp"

#include <algorithm>

namespace zetalab {

namespace {

struct ArgWalker {
  const Evaluator& f;
  const StepControl& ctl;
  long long evals = 0;
  double total = 0;

  cplx eval(cplx s) {
    if (++evals > ctl.max_boundary_points) fail(ErrorCode::guard, "argument tracking exceeded the boundary point cap");
    cplx v = f(s);
    if (std::abs(v) < ctl.zero_guard) fail(ErrorCode::guard, "boundary sample too close to a zero");
    return v;
  }

  // accumulates arg variation along the straight segment [a, b]
  void walk(cplx a, cplx fa, cplx b, cplx fb, int depth) {
    double d = std::arg(fb / fa);
    if (std::abs(d) < PI / 2) {
      total += d;
      return;
    }
    if (depth > 48) fail(ErrorCode::guard, "argument step refinement exhausted");
    cplx mid = 0.5 * (a + b);
    cplx fm = eval(mid);
    walk(a, fa, mid, fm, depth + 1);
    walk(mid, fm, b, fb, depth + 1);
  }

  void segment(cplx a, cplx b) {
    int n = ctl.initial_per_edge;
    cplx prev = a, fprev = eval(a);
    for (int i = 1; i <= n; ++i) {
      cplx cur = a + (b - a) * (static_cast<double>(i) / n);
      cplx fcur = eval(cur);
      walk(prev, fprev, cur, fcur, 0);
      prev = cur;
      fprev = fcur;
    }
  }
};

int rounded_winding(double total) {
  double w = total / TWO_PI;
  long long r = std::llround(w);
  if (std::abs(w - static_cast<double>(r)) > 0.25) fail(ErrorCode::guard, "winding did not close to an integer");
  return static_cast<int>(r);
}

}  // namespace

int winding_number(const Evaluator& f, const Rectangle& rect, const StepControl& ctl) {
  ArgWalker w{f, ctl};
  cplx c1(rect.sigma1, rect.t1), c2(rect.sigma2, rect.t1), c3(rect.sigma2, rect.t2), c4(rect.sigma1, rect.t2);
  w.segment(c1, c2);
  w.segment(c2, c3);
  w.segment(c3, c4);
  w.segment(c4, c1);
  return rounded_winding(w.total);
}

int winding_circle(const Evaluator& f, cplx center, double radius, const StepControl& ctl) {
  ArgWalker w{f, ctl};
  int n = std::max(ctl.initial_per_edge, 16);
  cplx prev = center + cplx(radius, 0.0);
  cplx fprev = w.eval(prev);
  cplx first = prev, ffirst = fprev;
  for (int i = 1; i <= 4 * n; ++i) {
    double ang = TWO_PI * static_cast<double>(i) / (4 * n);
    cplx cur = i == 4 * n ? first : center + std::polar(radius, ang);
    cplx fcur = i == 4 * n ? ffirst : w.eval(cur);
    w.walk(prev, fprev, cur, fcur, 0);
    prev = cur;
    fprev = fcur;
  }
  return rounded_winding(w.total);
}

namespace {

// deterministic small offsets for dodging boundary zeros
double jiggle(std::uint64_t seed, int attempt) {
  std::uint64_t h = mix_seed(seed, "boundary-jiggle-" + std::to_string(attempt));
  return (static_cast<double>(h >> 11) / 9007199254740992.0 - 0.5) * 2e-4;
}

int winding_with_retry(const Evaluator& f, Rectangle rect, const StepControl& ctl, long long& evals) {
  for (int attempt = 0;; ++attempt) {
    try {
      ArgWalker w{f, ctl};
      cplx c1(rect.sigma1, rect.t1), c2(rect.sigma2, rect.t1), c3(rect.sigma2, rect.t2), c4(rect.sigma1, rect.t2);
      w.segment(c1, c2);
      w.segment(c2, c3);
      w.segment(c3, c4);
      w.segment(c4, c1);
      evals += w.evals;
      return rounded_winding(w.total);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::guard || attempt >= 4) throw;
      // grow outward only, so a zero sitting on the boundary moves inside
      double d = std::abs(jiggle(ctl.seed, attempt)) + 1e-6;
      rect = Rectangle(rect.sigma1 - 0.71 * d, rect.sigma2 + 1.13 * d, rect.t1 - 1.37 * d, rect.t2 + d);
    }
  }
}

struct ZeroSearch {
  const Evaluator& f;
  const StepControl& ctl;
  double tol;
  ZeroReport report;

  cplx derivative(cplx s, double h) { return (f(s + cplx(h, 0)) - f(s - cplx(h, 0))) / cplx(2 * h, 0); }

  bool refine(const Rectangle& cell) {
    cplx z(0.5 * (cell.sigma1 + cell.sigma2), 0.5 * (cell.t1 + cell.t2));
    double scale = std::max(cell.width(), cell.height());
    double h = std::max(1e-7, scale * 1e-4);
    cplx best = z;
    double best_abs = std::abs(f(z));
    for (int it = 0; it < 80; ++it) {
      cplx fz = f(z);
      double a = std::abs(fz);
      if (a < best_abs) {
        best = z;
        best_abs = a;
      }
      if (a < tol) break;
      cplx d = derivative(z, h);
      if (std::abs(d) == 0.0) return false;
      cplx step = fz / d;
      // keep the iteration inside twice the cell
      double cap = 2.0 * scale;
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      z -= step;
      report.evaluations += 3;
      if (z.real() < cell.sigma1 - scale || z.real() > cell.sigma2 + scale || z.imag() < cell.t1 - scale ||
          z.imag() > cell.t2 + scale)
        return false;
      if (std::abs(step) < 1e-15 && a >= tol) break;
    }
    if (best_abs >= tol) return false;
    // certify: winding 1 on a small circle around the refined zero
    double radius = 1e-3;
    for (int attempt = 0; attempt < 4; ++attempt) {
      try {
        long long dummy = 0;
        (void)dummy;
        if (winding_circle(f, best, radius, ctl) == 1) {
          report.zeros.push_back({best, best_abs, radius});
          return true;
        }
        return false;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::guard) throw;
        radius *= 1.6180339887;  // dodge a zero sitting on the circle
      }
    }
    return false;
  }

  void descend(Rectangle cell, int depth, int expected) {
    if (expected == 0) return;
    if (expected == 1 || (cell.width() < 4 * tol && cell.height() < 4 * tol) || depth > 40) {
      if (!refine(cell)) {
        if (depth > 40) {
          report.flagged.push_back("refinement failed near sigma=" + format_double(0.5 * (cell.sigma1 + cell.sigma2)) +
                                   " t=" + format_double(0.5 * (cell.t1 + cell.t2)));
          return;
        }
        // refinement from the center missed: split once more
        split(cell, depth, expected);
      }
      return;
    }
    split(cell, depth, expected);
  }

  void split(const Rectangle& cell, int depth, int expected) {
    bool vertical = cell.height() > cell.width();
    for (int attempt = 0; attempt < 5; ++attempt) {
      double off = attempt == 0 ? 0.0 : jiggle(ctl.seed + static_cast<std::uint64_t>(depth), attempt);
      Rectangle a = cell, b = cell;
      if (vertical) {
        double mid = 0.5 * (cell.t1 + cell.t2) + off * cell.height();
        a.t2 = mid;
        b.t1 = mid;
      } else {
        double mid = 0.5 * (cell.sigma1 + cell.sigma2) + off * cell.width();
        a.sigma2 = mid;
        b.sigma1 = mid;
      }
      try {
        long long evals = 0;
        int wa = winding_with_retry(f, a, ctl, evals);
        int wb = winding_with_retry(f, b, ctl, evals);
        report.evaluations += evals;
        if (wa + wb != expected)
          report.flagged.push_back("winding split mismatch at depth " + std::to_string(depth));
        descend(a, depth + 1, wa);
        descend(b, depth + 1, wb);
        return;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::guard || attempt == 4) throw;
      }
    }
  }
};

}  // namespace

ZeroReport find_zeros(const Evaluator& f, const Rectangle& rect, double tol, const StepControl& ctl) {
  ZeroSearch search{f, ctl, tol, {}};
  long long evals = 0;
  int w = winding_with_retry(f, rect, ctl, evals);
  search.report.evaluations = evals;
  search.report.winding = w;
  search.descend(rect, 0, w);
  std::sort(search.report.zeros.begin(), search.report.zeros.end(),
            [](const FoundZero& a, const FoundZero& b) { return a.s.imag() < b.s.imag(); });
  return search.report;
}

SigmaStarEstimate sigma_star_estimate(const Evaluator& f, double sigma_lo, double sigma_hi, double t_max,
                                      long long eval_budget, const StepControl& ctl) {
  SigmaStarEstimate out;
  out.box = Rectangle(sigma_lo, sigma_hi, 0.0, t_max);
  out.status = "none-found";
  const int bands = 4;
  double strip_height = std::max(1.0, t_max / 64.0);
  for (int band = bands - 1; band >= 0; --band) {
    double lo = sigma_lo + (sigma_hi - sigma_lo) * band / bands;
    double hi = sigma_lo + (sigma_hi - sigma_lo) * (band + 1) / bands;
    bool found_in_band = false;
    for (double t0 = 0.0; t0 < t_max; t0 += strip_height) {
      if (out.evaluations > eval_budget) return out;
      Rectangle strip(lo, hi, t0, std::min(t_max, t0 + strip_height));
      int w = 0;
      try {
        w = winding_with_retry(f, strip, ctl, out.evaluations);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::guard) throw;
        continue;  // hostile strip boundary; skip, stay a lower bound
      }
      if (w <= 0) continue;
      auto rep = find_zeros(f, strip, 1e-8, ctl);
      out.evaluations += rep.evaluations;
      for (const auto& z : rep.zeros) {
        out.zeros.push_back(z);
        out.lower_bound = std::max(out.lower_bound, z.s.real());
        out.status = "zero-found";
        found_in_band = true;
      }
    }
    if (found_in_band) return out;  // lower bands cannot raise the sup
  }
  return out;
}

Evaluator twist_evaluator(SourcePtr f, const TwistSpec& twist, double eps, const EvalBudget& budget) {
  bool unit_like = f->periodic_character() != nullptr && f->periodic_character()->modulus() == 1;
  if (twist.lambda.is_rational() && unit_like) {
    // F(a/q, m, k, s) = sum over residues c mod kq, c = m (k), of
    // e(a c / q) (kq)^{-s} zeta(s, c / kq): cheap and valid into the strip
    const Rational& r = twist.lambda.rational();
    long long q = r.den, a = r.num, k = twist.k, m = twist.m;
    long long kq = k * q;
    std::vector<std::pair<double, double>> parts;  // (phase fraction, alpha)
    for (long long c = m; c <= kq; c += k)
      parts.emplace_back(static_cast<double>((a * (c % q)) % q) / static_cast<double>(q),
                         static_cast<double>(c) / static_cast<double>(kq));
    return [parts, kq, eps](cplx s) {
      KahanC acc;
      for (auto [frac, alpha] : parts) acc.add(unit_phase(frac) * hurwitz_em(s, alpha, eps));
      double lkq = std::log(static_cast<double>(kq));
      return std::polar(std::exp(-s.real() * lkq), -s.imag() * lkq) * acc.value();
    };
  }
  SourcePtr keep = f;
  TwistSpec tw = twist;
  EvalBudget b = budget;
  return [keep, tw, eps, b](cplx s) { return twisted_eval(*keep, tw, s, eps, b).value; };
}

std::vector<ContinuityRow> continuity_experiment(SourcePtr f, const Lambda& lambda, int convergent_count,
                                                 double sigma_lo, double sigma_hi, double t_max,
                                                 long long per_point_budget) {
  if (lambda.is_rational() && lambda.rational() == Rational(1, 2))
    fail(ErrorCode::domain, "the experiment excludes lambda = 1/2");
  std::vector<ContinuityRow> rows;
  auto conv = convergents(lambda, convergent_count);
  for (const auto& c : conv) {
    if (c.num == 0) continue;  // 0/1 carries no twist
    ContinuityRow row;
    row.x_n = std::to_string(c.num) + "/" + std::to_string(c.den);
    row.denominator = c.den;
    TwistSpec tw(Lambda::from_rational(c.num, c.den), 1, 1);
    row.estimate = sigma_star_estimate(twist_evaluator(f, tw, 1e-12), sigma_lo, sigma_hi, t_max, per_point_budget);
    rows.push_back(std::move(row));
  }
  if (!lambda.is_rational()) {
    ContinuityRow row;
    row.x_n = lambda.to_string();
    row.denominator = 0;
    TwistSpec tw(lambda, 1, 1);
    double lo = std::max(sigma_lo, 1.05);
    double hi = std::max(sigma_hi, lo + 1e-3);
    row.estimate = sigma_star_estimate(twist_evaluator(f, tw, 1e-9, {4'000'000, 0}), lo, hi, t_max,
                                       per_point_budget / 4);
    rows.push_back(std::move(row));
  }
  return rows;
}

SymmetryReport symmetry_check(SourcePtr f, const TwistSpec& twist, const std::vector<cplx>& samples,
                              long long terms) {
  SymmetryReport rep;
  TwistSpec mirror(twist.lambda.one_minus(), twist.m, twist.k);
  for (cplx s : samples) {
    EvalBudget b;
    b.forced_n = terms;
    auto lhs = twisted_eval(*f, mirror, std::conj(s), 1e-9, b);
    auto rhs = twisted_eval(*f, twist, s, 1e-9, b);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs.value - std::conj(rhs.value)));
    ++rep.samples;
  }
  return rep;
}

}  // namespace zetalab
