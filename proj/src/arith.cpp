#include "arith.hpp"

#include <algorithm>
#include <cctype>

namespace zetalab {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

long long gcd_ll(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// floor(a * 2^128 / q) for 0 <= a < q
u128 fixed_from_fraction(std::uint64_t a, std::uint64_t q) {
  u128 hi = (static_cast<u128>(a) << 64) / q;
  u128 r = (static_cast<u128>(a) << 64) % q;
  return (hi << 64) + ((r << 64) / q);
}

}  // namespace

PrimeSieve sieve_primes(std::uint64_t limit) {
  if (limit < 2) fail(ErrorCode::domain, "sieve limit must be >= 2");
  if (limit > (1ull << 31)) fail(ErrorCode::capacity, "sieve limit exceeds memory budget");
  PrimeSieve s;
  s.limit = limit;
  s.is_prime.assign(limit + 1, true);
  s.is_prime[0] = s.is_prime[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (s.is_prime[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) s.is_prime[j] = false;
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (s.is_prime[i]) s.primes.push_back(i);
  return s;
}

void for_primes_in(std::uint64_t lo, std::uint64_t hi, const std::function<bool(std::uint64_t)>& fn) {
  if (hi < 2 || hi <= lo) return;
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
  PrimeSieve small = sieve_primes(std::max<std::uint64_t>(root, 3));
  const std::uint64_t seg = 1u << 20;
  std::vector<char> mark;
  for (std::uint64_t base = std::max<std::uint64_t>(lo + 1, 2); base <= hi; base += seg) {
    std::uint64_t top = std::min(hi, base + seg - 1);
    mark.assign(top - base + 1, 1);
    for (std::uint64_t p : small.primes) {
      if (p * p > top) break;
      std::uint64_t start = std::max(p * p, ((base + p - 1) / p) * p);
      for (std::uint64_t j = start; j <= top; j += p) mark[j - base] = 0;
    }
    for (std::uint64_t n = base; n <= top; ++n)
      if (mark[n - base] && n >= 2 && !fn(n)) return;
  }
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::domain, "P(n) needs n >= 1");
  if (n == 1) return 1;
  std::uint64_t best = 1;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      best = p;
      n /= p;
    }
  }
  return n > 1 ? n : best;
}

namespace {

template <typename Rec>
void smooth_rec(const std::vector<std::uint64_t>& primes, std::uint64_t x, std::size_t first, std::uint64_t v,
                Rec&& rec) {
  rec(v);
  for (std::size_t i = first; i < primes.size(); ++i) {
    std::uint64_t p = primes[i];
    if (p > x / v) break;
    for (std::uint64_t w = v * p;; w *= p) {
      smooth_rec(primes, x, i + 1, w, rec);
      if (w > x / p) break;
    }
  }
}

std::vector<std::uint64_t> smooth_prime_list(double x, double y) {
  if (x < 1) fail(ErrorCode::domain, "smooth enumeration needs x >= 1");
  double cap = std::min(x, y);
  if (cap < 2) return {};
  return sieve_primes(static_cast<std::uint64_t>(cap)).primes;
}

}  // namespace

long long smooth_count(double x, double y) {
  std::uint64_t xi = static_cast<std::uint64_t>(x);
  if (x < 1) return 0;
  auto primes = smooth_prime_list(x, y);
  long long count = 0;
  smooth_rec(primes, xi, 0, 1, [&](std::uint64_t) { ++count; });
  return count;
}

std::vector<std::uint64_t> smooth_enumerate(double x, double y) {
  std::uint64_t xi = static_cast<std::uint64_t>(x);
  if (x < 1) return {};
  auto primes = smooth_prime_list(x, y);
  std::vector<std::uint64_t> out;
  smooth_rec(primes, xi, 0, 1, [&](std::uint64_t v) {
    if (out.size() >= (1u << 27)) fail(ErrorCode::capacity, "smooth enumeration exceeds memory budget");
    out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

void smooth_visit(double x, double y,
                  const std::function<void(std::uint64_t, const std::vector<std::pair<std::uint64_t, int>>&)>& fn) {
  std::uint64_t xi = static_cast<std::uint64_t>(x);
  if (x < 1) return;
  auto primes = smooth_prime_list(x, y);
  std::vector<std::pair<std::uint64_t, int>> fact;
  // same traversal as smooth_rec, carrying the factorization
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t first, std::uint64_t v) {
    fn(v, fact);
    for (std::size_t i = first; i < primes.size(); ++i) {
      std::uint64_t p = primes[i];
      if (p > xi / v) break;
      fact.emplace_back(p, 0);
      for (std::uint64_t w = v * p;; w *= p) {
        ++fact.back().second;
        rec(i + 1, w);
        if (w > xi / p) break;
      }
      fact.pop_back();
    }
  };
  rec(0, 1);
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::domain, "phi(0) undefined");
  std::uint64_t result = n;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Rational::Rational(long long n, long long d) {
  if (d == 0) fail(ErrorCode::domain, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = gcd_ll(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Lambda Lambda::from_rational(long long a, long long q) {
  if (q <= 0 || a <= 0) fail(ErrorCode::domain, "twist parameter must be a/q with a, q > 0");
  a %= q;  // the phase e(a n / q) only sees a mod q
  Lambda l;
  l.rational_ = a == 0 ? Rational(1, 1) : Rational(a, q);
  return l;
}

Lambda Lambda::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorCode::usage, "empty twist parameter");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long a = std::stoll(s.substr(0, slash));
    long long q = std::stoll(s.substr(slash + 1));
    return from_rational(a, q);
  }
  auto dot = s.find('.');
  std::string ipart = dot == std::string::npos ? s : s.substr(0, dot);
  std::string fpart = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (ipart.empty()) ipart = "0";
  for (const std::string* part : {&ipart, &fpart})
    for (char c : *part)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail(ErrorCode::usage, "bad twist parameter: " + text);
  while (!fpart.empty() && fpart.back() == '0') fpart.pop_back();
  long long ival = std::stoll(ipart);
  if (ival == 1 && fpart.empty()) return from_rational(1, 1);
  if (ival != 0) fail(ErrorCode::domain, "twist parameter must lie in (0, 1]");
  if (fpart.empty()) fail(ErrorCode::domain, "twist parameter must be positive");
  // binary digits of 0.fpart by repeated doubling of the decimal string
  std::vector<int> dig(fpart.size());
  for (std::size_t i = 0; i < fpart.size(); ++i) dig[i] = fpart[i] - '0';
  u128 v = 0;
  for (int bit = 0; bit < 128; ++bit) {
    int carry = 0;
    for (std::size_t i = dig.size(); i-- > 0;) {
      int t = dig[i] * 2 + carry;
      dig[i] = t % 10;
      carry = t / 10;
    }
    v = (v << 1) | static_cast<unsigned>(carry);
  }
  if (v == 0) fail(ErrorCode::domain, "twist parameter underflows the fixed-point representation");
  return Lambda(v);
}

const Rational& Lambda::rational() const {
  if (!rational_) fail(ErrorCode::internal, "twist parameter is not rational");
  return *rational_;
}

double Lambda::frac_times(std::uint64_t n) const {
  if (rational_) {
    std::uint64_t q = static_cast<std::uint64_t>(rational_->den);
    std::uint64_t r = mulmod_u64(static_cast<std::uint64_t>(rational_->num) % q, n % q, q);
    return static_cast<double>(r) / static_cast<double>(q);
  }
  u128 prod = fixed_ * static_cast<u128>(n);  // wraps mod 2^128, which is the reduction mod 1
  return static_cast<double>(prod) * 0x1p-128;
}

double Lambda::to_double() const { return rational_ ? rational_->to_double() : static_cast<double>(fixed_) * 0x1p-128; }

double Lambda::norm_times(std::uint64_t n) const {
  if (rational_) {
    std::uint64_t q = static_cast<std::uint64_t>(rational_->den);
    std::uint64_t r = mulmod_u64(static_cast<std::uint64_t>(rational_->num) % q, n % q, q);
    std::uint64_t d = std::min(r, q - r);
    return static_cast<double>(d) / static_cast<double>(q);
  }
  u128 prod = fixed_ * static_cast<u128>(n);
  u128 d = std::min(prod, static_cast<u128>(0) - prod);
  return static_cast<double>(d) * 0x1p-128;
}

Lambda Lambda::one_minus() const {
  if (rational_) {
    if (rational_->num == rational_->den) return *this;  // lambda = 1 is self-conjugate
    return from_rational(rational_->den - rational_->num, rational_->den);
  }
  return Lambda(static_cast<u128>(0) - fixed_);
}

Lambda Lambda::divided_by(std::uint64_t k) const {
  if (k == 0) fail(ErrorCode::domain, "division by zero");
  if (k == 1) return *this;
  if (rational_) {
    long long q = rational_->den;
    if (q <= static_cast<long long>((1ull << 62) / k)) return from_rational(rational_->num, q * static_cast<long long>(k));
    u128 v = fixed_from_fraction(static_cast<std::uint64_t>(rational_->num % q), static_cast<std::uint64_t>(q));
    return Lambda(v / k);
  }
  return Lambda(fixed_ / k);
}

Lambda Lambda::times_mod1(std::uint64_t k) const {
  if (rational_) {
    std::uint64_t q = static_cast<std::uint64_t>(rational_->den);
    std::uint64_t r = mulmod_u64(static_cast<std::uint64_t>(rational_->num) % q, k % q, q);
    if (r == 0) return from_rational(1, 1);
    return from_rational(static_cast<long long>(r), static_cast<long long>(q));
  }
  return Lambda(fixed_ * static_cast<u128>(k));
}

bool Lambda::integral() const { return rational_ ? rational_->num == rational_->den : fixed_ == 0; }

std::uint64_t Lambda::floor_times(std::uint64_t n) const {
  if (rational_) {
    return static_cast<std::uint64_t>(static_cast<u128>(rational_->num) * n / static_cast<u128>(rational_->den));
  }
  // 192-bit product v*n, floor is everything above the 2^128 line
  std::uint64_t vh = static_cast<std::uint64_t>(fixed_ >> 64);
  std::uint64_t vl = static_cast<std::uint64_t>(fixed_);
  u128 t = static_cast<u128>(vl) * n;
  u128 s = static_cast<u128>(vh) * n + (t >> 64);
  return static_cast<std::uint64_t>(s >> 64);
}

std::uint64_t Lambda::round_times(std::uint64_t n) const {
  std::uint64_t fl = floor_times(n);
  if (rational_) {
    std::uint64_t q = static_cast<std::uint64_t>(rational_->den);
    std::uint64_t r = mulmod_u64(static_cast<std::uint64_t>(rational_->num) % q, n % q, q);
    return fl + (2 * r >= q ? 1 : 0);
  }
  u128 frac = fixed_ * static_cast<u128>(n);
  return fl + ((frac >> 127) != 0 ? 1 : 0);
}

std::string Lambda::to_string() const {
  if (rational_) return std::to_string(rational_->num) + "/" + std::to_string(rational_->den);
  std::string out = "0.";
  std::uint64_t vh = static_cast<std::uint64_t>(fixed_ >> 64);
  std::uint64_t vl = static_cast<std::uint64_t>(fixed_);
  for (int i = 0; i < 40; ++i) {
    u128 pl = static_cast<u128>(vl) * 10;
    u128 ph = static_cast<u128>(vh) * 10 + static_cast<std::uint64_t>(pl >> 64);
    out.push_back(static_cast<char>('0' + static_cast<int>(ph >> 64)));
    vh = static_cast<std::uint64_t>(ph);
    vl = static_cast<std::uint64_t>(pl);
  }
  return out;
}

std::vector<Rational> convergents(const Lambda& lambda, int count) {
  std::vector<Rational> out;
  if (count <= 0) return out;
  if (lambda.integral()) {
    out.emplace_back(1, 1);
    return out;
  }
  // exact continued fraction of num/den
  u128 num, den;
  bool den_is_2_128 = false;
  std::uint64_t den_cap;
  if (lambda.is_rational()) {
    num = static_cast<u128>(lambda.rational().num);
    den = static_cast<u128>(lambda.rational().den);
    den_cap = ~0ull;
  } else {
    num = lambda.fixed();
    den = 0;  // stands for 2^128
    den_is_2_128 = true;
    den_cap = 1ull << 60;  // digits beyond this are noise from the fixed-point truncation
  }
  std::vector<u128> digits;  // a1, a2, ... (a0 = 0 since 0 < lambda < 1)
  while (digits.size() < 200) {
    u128 quot, rem;
    if (den_is_2_128) {
      u128 m = ~static_cast<u128>(0);  // 2^128 - 1
      quot = m / num;
      rem = m % num;
      if (rem + 1 == num) {
        quot += 1;
        rem = 0;
      } else {
        rem += 1;
      }
      den_is_2_128 = false;
    } else {
      quot = den / num;
      rem = den % num;
    }
    digits.push_back(quot);
    if (rem == 0) break;
    den = num;
    num = rem;
  }
  // convergent recurrence h_i = a_i h_{i-1} + h_{i-2}
  u128 h_prev = 1, k_prev = 0;  // h_{-1}/k_{-1}
  u128 h = 0, k = 1;            // h_0/k_0 = 0/1
  auto push = [&](u128 hh, u128 kk) {
    if (!out.empty() && static_cast<u128>(out.back().den) == kk) out.pop_back();  // keep the better of equal denominators
    out.emplace_back(static_cast<long long>(hh), static_cast<long long>(kk));
  };
  push(h, k);
  for (u128 a : digits) {
    u128 h_next = a * h + h_prev;
    u128 k_next = a * k + k_prev;
    if (k_next > den_cap) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    push(h, k);
    if (static_cast<int>(out.size()) >= count) break;
  }
  if (static_cast<int>(out.size()) > count) out.resize(count);
  return out;
}

DiophApprox prime_denominator_approx(const Lambda& lambda, double delta, long long q_min, long long q_max) {
  if (!(delta > 0 && delta < 1.0 / 3.0)) fail(ErrorCode::domain, "delta must lie in (0, 1/3)");
  if (q_min > q_max) fail(ErrorCode::domain, "empty denominator range");
  DiophApprox result;
  bool found = false;
  for_primes_in(std::max(1ll, q_min - 1), q_max, [&](std::uint64_t q) {
    if (q < static_cast<std::uint64_t>(q_min) || q == 2) return true;
    double dist = lambda.norm_times(q);
    if (dist >= std::pow(static_cast<double>(q), -delta)) return true;
    long long a = static_cast<long long>(lambda.round_times(q));
    if (a <= 0 || a % static_cast<long long>(q) == 0) return true;  // coprimality: q prime, so only q | a fails
    result.a = a;
    result.q = static_cast<long long>(q);
    result.err = dist / static_cast<double>(q);
    found = true;
    return false;
  });
  if (!found) fail(ErrorCode::not_found, "no prime denominator in range satisfies the approximation bound");
  return result;
}

PrimitiveRoot primitive_root(long long q) {
  if (q < 3 || q % 2 == 0 || !is_prime_u64(static_cast<std::uint64_t>(q)))
    fail(ErrorCode::domain, "primitive root needs an odd prime modulus");
  std::uint64_t order = static_cast<std::uint64_t>(q - 1);
  std::vector<std::uint64_t> prime_factors;
  std::uint64_t m = order;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      prime_factors.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) prime_factors.push_back(m);
  long long g = 0;
  for (long long cand = 2; cand < q; ++cand) {
    bool ok = true;
    for (std::uint64_t p : prime_factors) {
      if (powmod_u64(static_cast<std::uint64_t>(cand), order / p, static_cast<std::uint64_t>(q)) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = cand;
      break;
    }
  }
  if (g == 0) fail(ErrorCode::internal, "no primitive root found");
  PrimitiveRoot pr;
  pr.q = q;
  pr.g = g;
  pr.index.assign(static_cast<std::size_t>(q), 0);
  std::uint64_t pw = 1;
  for (long long j = 0; j < q - 1; ++j) {
    pr.index[static_cast<std::size_t>(pw)] = static_cast<int>(j);
    pw = mulmod_u64(pw, static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(q));
  }
  return pr;
}

namespace {

i128 abs_i128(i128 x) { return x < 0 ? -x : x; }

}  // namespace

std::vector<i128> ramanujan_tau(int n) {
  if (n < 1) fail(ErrorCode::domain, "tau needs n >= 1");
  if (n > 100000) fail(ErrorCode::capacity, "tau series budget is n <= 1e5");
  // Delta/q = (eta-cube)^8 where eta-cube = sum_k (-1)^k (2k+1) q^{k(k+1)/2} (Jacobi).
  std::vector<std::pair<int, long long>> jacobi;
  for (int k = 0;; ++k) {
    long long t = static_cast<long long>(k) * (k + 1) / 2;
    if (t > n - 1) break;
    jacobi.emplace_back(static_cast<int>(t), (k % 2 == 0 ? 1ll : -1ll) * (2ll * k + 1));
  }
  std::vector<i128> acc(static_cast<std::size_t>(n), 0);
  acc[0] = 1;
  std::vector<i128> next(static_cast<std::size_t>(n));
  // max |coef| after any pass stays below ~1e27 for n <= 1e5; the guard below
  // keeps the next convolution clear of i128 overflow.
  const i128 safety_cap = static_cast<i128>(4) * static_cast<i128>(1000000000000000000ll) *
                          static_cast<i128>(100000000000000ll);  // 4e32
  for (int pass = 0; pass < 8; ++pass) {
    std::fill(next.begin(), next.end(), 0);
    for (auto [off, c] : jacobi) {
      for (int i = n - 1 - off; i >= 0; --i) next[static_cast<std::size_t>(i + off)] += c * acc[static_cast<std::size_t>(i)];
    }
    acc.swap(next);
    i128 mx = 0;
    for (const i128& v : acc) mx = std::max(mx, abs_i128(v));
    if (mx > safety_cap) fail(ErrorCode::capacity, "tau coefficient growth exceeds integer headroom");
  }
  // tau(m) = coefficient of q^{m-1} in (eta-cube)^8
  return acc;
}

}  // namespace zetalab
