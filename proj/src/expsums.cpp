#include "expsums.hpp"

#include <algorithm>

namespace zetalab {

namespace {

long long gcd_ll(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// one smooth support, shared across all (r, s, f) pairs of a grid point
struct SmoothData {
  std::vector<std::uint64_t> n;             // ascending
  std::vector<std::vector<cplx>> values;    // per f label, aligned with n
  std::vector<std::vector<double>> sq_pre;  // prefix sums of |f|^2, sq_pre[j][i] = first i entries

  std::size_t count_below(double x) const {
    return static_cast<std::size_t>(std::upper_bound(n.begin(), n.end(), static_cast<std::uint64_t>(x)) - n.begin());
  }
};

SmoothData collect_smooth(double x, double y, const std::vector<SourcePtr>& fs) {
  struct Entry {
    std::uint64_t n;
    std::vector<cplx> vals;
  };
  std::vector<Entry> entries;
  smooth_visit(x, y, [&](std::uint64_t n, const std::vector<std::pair<std::uint64_t, int>>& fact) {
    Entry e{n, {}};
    e.vals.reserve(fs.size());
    for (const auto& f : fs) e.vals.push_back(f->value_factored(fact));
    entries.push_back(std::move(e));
  });
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.n < b.n; });
  SmoothData out;
  out.n.reserve(entries.size());
  out.values.assign(fs.size(), {});
  out.sq_pre.assign(fs.size(), {{0.0}});
  for (const auto& e : entries) {
    out.n.push_back(e.n);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      out.values[j].push_back(e.vals[j]);
      out.sq_pre[j].push_back(out.sq_pre[j].back() + std::norm(e.vals[j]));
    }
  }
  return out;
}

}  // namespace

cplx exp_sum(const CoefficientSource& f, double x, const Lambda& alpha) {
  if (x < 1) return {0.0, 0.0};
  if (x > 1e8) fail(ErrorCode::capacity, "exponential sum budget is x <= 1e8");
  std::uint64_t xi = static_cast<std::uint64_t>(x);
  KahanC acc;
  for_multiplicative_values(f, xi, [&](std::uint64_t n, cplx v) {
    if (v != cplx(0.0, 0.0)) acc.add(v * alpha.phase_times(n));
  });
  return acc.value();
}

cplx smooth_exp_sum(const CoefficientSource& f, double x, double y, const Lambda& alpha) {
  if (x < 1) return {0.0, 0.0};
  KahanC acc;
  smooth_visit(x, y, [&](std::uint64_t n, const std::vector<std::pair<std::uint64_t, int>>& fact) {
    cplx v = f.value_factored(fact);
    if (v != cplx(0.0, 0.0)) acc.add(v * alpha.phase_times(n));
  });
  return acc.value();
}

HarnessResult mv_harness(const HarnessGrid& grid) {
  HarnessResult out;
  for (double x : grid.xs) {
    for (long long r : grid.moduli) {
      if (static_cast<double>(r) > x) {
        out.rejected.push_back("x=" + format_double(x) + " r=" + std::to_string(r) + ": bound needs x >= r");
        continue;
      }
      for (long long s : grid.residues) {
        if (gcd_ll(s, r) != 1) continue;
        for (const auto& label : grid.f_labels) {
          auto f = make_source(label);
          cplx v = exp_sum(*f, x, Lambda::from_rational(s, r));
          double phi_r = static_cast<double>(euler_phi(static_cast<std::uint64_t>(r)));
          double rhs = x / std::log(2.0 * x) + x / std::sqrt(phi_r) +
                       std::sqrt(static_cast<double>(r) * x) * std::pow(std::log(2.0 * x / static_cast<double>(r)), 1.5);
          ExpSumReport rep;
          rep.x = x;
          rep.r = r;
          rep.s = s;
          rep.f = label;
          rep.value = v;
          rep.bound_rhs = rhs;
          rep.ratio = std::abs(v) / rhs;
          out.max_ratio = std::max(out.max_ratio, rep.ratio);
          out.reports.push_back(rep);
        }
      }
    }
  }
  return out;
}

HarnessResult maier_harness(const HarnessGrid& grid) {
  HarnessResult out;
  std::vector<SourcePtr> fs;
  for (const auto& label : grid.f_labels) fs.push_back(make_source(label));

  for (double x : grid.xs) {
    double y = grid.y_for(x);
    double floor_y = std::exp(std::pow(std::log(x), grid.eps0));
    if (y < floor_y * (1.0 - 1e-12)) {
      out.rejected.push_back("x=" + format_double(x) + ": y below the admissible window");
      continue;
    }
    if (y > x) y = x;
    SmoothData data = collect_smooth(x, y, fs);
    double psi_x = static_cast<double>(data.n.size());
    double log_x_a = std::pow(std::log(x), grid.a_exponent);

    for (long long r : grid.moduli) {
      if (!is_prime_u64(static_cast<std::uint64_t>(r))) {
        out.rejected.push_back("r=" + std::to_string(r) + ": modulus must be prime");
        continue;
      }
      if (static_cast<double>(r) > log_x_a) {
        out.rejected.push_back("x=" + format_double(x) + " r=" + std::to_string(r) + ": needs r <= (log x)^A");
        continue;
      }
      std::size_t cut = data.count_below(x / static_cast<double>(r));
      double psi_xr = static_cast<double>(cut);
      for (long long s : grid.residues) {
        if (s % r == 0 || gcd_ll(s, r) != 1) continue;
        std::vector<cplx> table(static_cast<std::size_t>(r));
        for (long long j = 0; j < r; ++j)
          table[static_cast<std::size_t>(j)] = unit_phase(static_cast<double>((j * s) % r) / static_cast<double>(r));
        for (std::size_t fi = 0; fi < fs.size(); ++fi) {
          KahanC acc;
          for (std::size_t i = 0; i < data.n.size(); ++i) {
            const cplx& v = data.values[fi][i];
            if (v != cplx(0.0, 0.0)) acc.add(v * table[static_cast<std::size_t>(data.n[i] % static_cast<std::uint64_t>(r))]);
          }
          double sq_full = data.sq_pre[fi].back();
          double sq_cut = data.sq_pre[fi][cut];
          double fr = std::abs(fs[fi]->prime_power(static_cast<std::uint64_t>(r), 1));
          double rhs = std::sqrt(sq_full) * std::sqrt(psi_x / std::sqrt(static_cast<double>(r))) +
                       fr * std::sqrt(sq_cut) * std::sqrt(psi_xr);
          ExpSumReport rep;
          rep.x = x;
          rep.y = y;
          rep.r = r;
          rep.s = s;
          rep.f = grid.f_labels[fi];
          rep.value = acc.value();
          rep.bound_rhs = rhs;
          rep.ratio = rhs > 0 ? std::abs(rep.value) / rhs : 0.0;
          out.max_ratio = std::max(out.max_ratio, rep.ratio);
          out.reports.push_back(rep);
        }
      }
    }
  }
  return out;
}

DebruijnFit debruijn_fit(const std::vector<double>& xs, const std::vector<double>& qs) {
  std::vector<double> lx, lpsi, u;
  for (double x : xs) {
    for (double q : qs) {
      double y = std::exp(q);
      long long psi = smooth_count(x, y);
      if (psi <= 0) continue;
      lx.push_back(std::log(x));
      lpsi.push_back(std::log(static_cast<double>(psi)));
      u.push_back(std::log(x) / q);
    }
  }
  if (lx.size() < 2) fail(ErrorCode::domain, "de Bruijn fit needs at least two grid points");
  double spread = *std::max_element(u.begin(), u.end()) - *std::min_element(u.begin(), u.end());
  if (spread < 1e-9) fail(ErrorCode::domain, "de Bruijn fit grid is degenerate in log x / Q");

  // least squares for log Psi - log x = log C - c (log x / Q)
  double su = 0, sy = 0, suu = 0, suy = 0;
  std::size_t n = lx.size();
  for (std::size_t i = 0; i < n; ++i) {
    double yv = lpsi[i] - lx[i];
    su += u[i];
    sy += yv;
    suu += u[i] * u[i];
    suy += u[i] * yv;
  }
  double denom = static_cast<double>(n) * suu - su * su;
  double slope = (static_cast<double>(n) * suy - su * sy) / denom;  // = -c
  DebruijnFit fit;
  fit.c = -slope;
  fit.points = static_cast<int>(n);
  // lift C so the bound holds at every grid point
  double log_c = -1e300;
  for (std::size_t i = 0; i < n; ++i) log_c = std::max(log_c, lpsi[i] - lx[i] + fit.c * u[i]);
  fit.big_c = std::exp(log_c);
  fit.all_points_below = true;
  for (std::size_t i = 0; i < n; ++i)
    if (lpsi[i] > std::log(fit.big_c) + lx[i] - fit.c * u[i] + 1e-9) fit.all_points_below = false;
  return fit;
}

FdReport fd_membership(const CoefficientSource& f, double d, double x_max) {
  FdReport rep;
  std::uint64_t xi = static_cast<std::uint64_t>(x_max);
  for_primes_in(1, xi, [&](std::uint64_t p) {
    double a = std::abs(f.prime_power(p, 1));
    rep.max_prime_ratio = std::max(rep.max_prime_ratio, a / d);
    if (a > d + 1e-12 && rep.violations.size() < 16)
      rep.violations.push_back("|f(" + std::to_string(p) + ")| = " + format_double(a) + " > d");
    return true;
  });
  Kahan sq;
  std::uint64_t next_checkpoint = 10;
  for_multiplicative_values(f, xi, [&](std::uint64_t n, cplx v) {
    sq.add(std::norm(v));
    if (n == next_checkpoint || n == xi) {
      double ratio = sq.value() / (d * d * static_cast<double>(n));
      rep.max_sum_ratio = std::max(rep.max_sum_ratio, ratio);
      if (ratio > 1.0 + 1e-12 && rep.violations.size() < 16)
        rep.violations.push_back("sum |f|^2 at x=" + std::to_string(n) + " exceeds d^2 x");
      while (next_checkpoint <= n) next_checkpoint *= 10;
    }
  });
  rep.member = rep.violations.empty();
  return rep;
}

std::vector<PrimeCharacterSumDiagnostic> prime_character_sum_diagnostic(const CoefficientSource& f,
                                                                        const std::vector<long long>& moduli,
                                                                        double x_max) {
  struct Acc {
    long long q;
    int h;
    const CharacterFamily* fam;
    KahanC sum;
  };
  std::vector<std::shared_ptr<CharacterFamily>> fams;
  std::vector<Acc> accs;
  for (long long q : moduli) {
    fams.push_back(std::make_shared<CharacterFamily>(q));
    for (int h = 1; h <= q - 2; ++h) accs.push_back(Acc{q, h, fams.back().get(), {}});
  }
  std::vector<PrimeCharacterSumDiagnostic> out;
  auto flush = [&](double x) {
    for (auto& a : accs) {
      PrimeCharacterSumDiagnostic d;
      d.q = a.q;
      d.h = a.h;
      d.x = x;
      d.sum = a.sum.value();
      d.reference =
          x / (static_cast<double>(euler_phi(static_cast<std::uint64_t>(a.q))) * std::pow(std::log(x), 2.0));
      d.ratio = std::abs(d.sum) / d.reference;
      out.push_back(d);
    }
  };
  double checkpoint = 100000;
  for_primes_in(1, static_cast<std::uint64_t>(x_max), [&](std::uint64_t p) {
    while (static_cast<double>(p) > checkpoint && checkpoint < x_max) {
      flush(checkpoint);
      checkpoint *= 10;
    }
    double w = std::norm(f.prime_power(p, 1));
    if (w != 0.0)
      for (auto& a : accs) a.sum.add(w * a.fam->chi(a.h).value(p));
    return true;
  });
  flush(x_max);
  return out;
}

}  // namespace zetalab
