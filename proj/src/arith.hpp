#pragma once

#include <optional>

#include "support.hpp"

namespace zetalab {

// ---------------------------------------------------------------------------
// Primes and smooth numbers
// ---------------------------------------------------------------------------

struct PrimeSieve {
  std::uint64_t limit = 0;
  std::vector<bool> is_prime;          // indexed 0..limit
  std::vector<std::uint64_t> primes;   // ascending

  bool test(std::uint64_t n) const { return n <= limit && is_prime[n]; }
};

// Exact prime list up to limit. Capacity error beyond ~2^31 (the uses here
// never need more; segmented enumeration covers larger ranges).
PrimeSieve sieve_primes(std::uint64_t limit);

// Calls fn(p) for every prime in (lo, hi], ascending, until fn returns false.
// Segmented, so hi can exceed comfortable bitmap sizes.
void for_primes_in(std::uint64_t lo, std::uint64_t hi, const std::function<bool(std::uint64_t)>& fn);

// P(n), with P(1) = 1.
std::uint64_t largest_prime_factor(std::uint64_t n);

// Psi(x, y) by enumeration of y-smooth integers <= x.
long long smooth_count(double x, double y);

// Sorted, duplicate-free list of all y-smooth n <= x.
std::vector<std::uint64_t> smooth_enumerate(double x, double y);

// Enumerates y-smooth n <= x in unspecified order together with the prime
// factorization of n, as (p, h) pairs. Lets callers evaluate multiplicative
// functions on the smooth support without factorizing.
void smooth_visit(double x, double y,
                  const std::function<void(std::uint64_t, const std::vector<std::pair<std::uint64_t, int>>&)>& fn);

std::uint64_t euler_phi(std::uint64_t n);

bool is_prime_u64(std::uint64_t n);

// ---------------------------------------------------------------------------
// Rationals and the 128-bit fixed-point twist parameter
// ---------------------------------------------------------------------------

struct Rational {
  long long num = 0;
  long long den = 1;  // > 0, gcd(num, den) = 1

  Rational() = default;
  Rational(long long n, long long d);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

// The twist parameter lambda in (0, 1]. Two representations:
//   - exact rational a/q (kept exact through all phase arithmetic),
//   - 128-bit fixed point v / 2^128, parsed from a decimal string.
// Phase products lambda*n are reduced mod 1 in the exact representation, so
// e(lambda n) carries no accumulated drift even for n ~ 1e8.
class Lambda {
 public:
  static Lambda from_rational(long long a, long long q);
  // Accepts "a/q" or a decimal in [0,1] ("0.707106...", "1", ".5").
  static Lambda parse(const std::string& text);
  static Lambda from_fixed(u128 v) { return Lambda(v); }

  bool is_rational() const { return rational_.has_value(); }
  const Rational& rational() const;
  u128 fixed() const { return fixed_; }

  // lambda*n mod 1, exact up to the representation (< 2^-120 absolute).
  double frac_times(std::uint64_t n) const;
  cplx phase_times(std::uint64_t n) const { return unit_phase(frac_times(n)); }
  // exact floor(lambda*n) and nearest integer to lambda*n
  std::uint64_t floor_times(std::uint64_t n) const;
  std::uint64_t round_times(std::uint64_t n) const;

  double to_double() const;
  // distance to the nearest integer of lambda*n (exact arithmetic).
  double norm_times(std::uint64_t n) const;

  Lambda one_minus() const;             // 1 - lambda (mod 1)
  Lambda divided_by(std::uint64_t k) const;  // lambda/k, error < 2^-128 on the fixed path
  Lambda times_mod1(std::uint64_t k) const;  // k*lambda mod 1

  std::string to_string() const;
  bool integral() const;  // lambda == 1 (phase identically 1)

 private:
  Lambda() = default;
  explicit Lambda(u128 v) : fixed_(v) {}
  std::optional<Rational> rational_;
  u128 fixed_ = 0;  // lambda = fixed_/2^128 when not rational
};

// Continued-fraction convergents l/r of lambda, best rational approximations
// with |lambda - l/r| < 1/r^2. Denominators strictly increase; terminates
// early when lambda is rational (or the expansion exhausts the stored
// precision). At most `count` entries.
std::vector<Rational> convergents(const Lambda& lambda, int count);

// Brute-force scan for a prime q in [q_min, q_max] with gcd(a, q) = 1 and
// |lambda - a/q| < q^-(1+delta), a the nearest integer to lambda*q. Only odd
// q are eligible (everything downstream wants an odd prime modulus).
struct DiophApprox {
  long long a = 0;
  long long q = 0;
  double err = 0;  // |lambda - a/q|
};
DiophApprox prime_denominator_approx(const Lambda& lambda, double delta, long long q_min, long long q_max);

// Least primitive root mod an odd prime q plus the index table:
// g^index[n] == n (mod q) for 1 <= n <= q-1, index[1] = 0.
struct PrimitiveRoot {
  long long q = 0;
  long long g = 0;
  std::vector<int> index;  // size q, index[0] unused
};
PrimitiveRoot primitive_root(long long q);

// ---------------------------------------------------------------------------
// Ramanujan tau
// ---------------------------------------------------------------------------

// tau(1..N) from q * prod (1-q^n)^24, all-integer arithmetic (128-bit, with
// proven headroom for N <= 1e5). Capacity error above that.
std::vector<i128> ramanujan_tau(int n);

}  // namespace zetalab
