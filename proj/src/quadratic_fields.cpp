#include "lgw/quadratic_fields.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "lgw/errors.hpp"

namespace lgw {

namespace {

constexpr std::int64_t kMaxPeriod = 10'000'000;

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::int64_t mod_pos(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

BigInt mod_pos(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_square(std::int64_t n) { return n >= 0 && isqrt(n) * isqrt(n) == n; }

/// log of a positive big integer without converting through double range.
double log_big(const BigInt& n) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::numbers::ln2;
}

/// y sqrt(d) / x as a double, for positive x, y.
double ratio_big(const BigInt& y, const BigInt& x, std::int64_t d) {
  long ex = 0, ey = 0;
  const double mx = mpz_get_d_2exp(&ex, x.get_mpz_t());
  const double my = mpz_get_d_2exp(&ey, y.get_mpz_t());
  return std::ldexp(my / mx, static_cast<int>(ey - ex)) * std::sqrt(static_cast<double>(d));
}

void require_fundamental(std::int64_t D) {
  if (is_square(D)) throw Error(ErrorKind::SquareDiscriminant, std::to_string(D) + " is a perfect square");
  if (!is_fundamental_discriminant(D))
    throw Error(ErrorKind::NotFundamental, std::to_string(D) + " is not a fundamental discriminant");
}

}  // namespace

bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return false;
  }
  return true;
}

bool is_fundamental_discriminant(std::int64_t D) {
  if (D == 0 || D == 1) return false;
  const std::int64_t r = mod_pos(D, 4);
  if (r == 1) return is_squarefree(D);
  if (r != 0) return false;
  const std::int64_t m = D / 4;
  const std::int64_t rm = mod_pos(m, 4);
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

std::int64_t radicand_of(std::int64_t D) {
  require_fundamental(D);
  return mod_pos(D, 4) == 1 ? D : D / 4;
}

std::int64_t discriminant_of(std::int64_t d) {
  if (d == 0 || d == 1) throw Error(ErrorKind::DegenerateD, "d must not be 0 or 1");
  if (!is_squarefree(d)) throw Error(ErrorKind::NotSquarefree, std::to_string(d) + " is not squarefree");
  return mod_pos(d, 4) == 1 ? d : 4 * d;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "kronecker: n must be positive");
  int result = 1;
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    const std::int64_t a8 = mod_pos(a, 8);
    if (twos % 2 == 1 && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol for odd n
  a = mod_pos(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t n8 = n % 8;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

QuadraticFieldDescriptor describe_field(std::int64_t d) {
  QuadraticFieldDescriptor f;
  f.d = d;
  f.D = discriminant_of(d);
  const Signature s = unit_rank(2, d > 0);
  f.sigma1 = s.sigma1;
  f.sigma2 = s.sigma2;
  f.unit_rank = s.rank;
  return f;
}

Signature unit_rank(int two_r, bool totally_real) {
  if (two_r % 2 != 0) throw Error(ErrorKind::OddDegree, "degree " + std::to_string(two_r) + " is odd");
  if (two_r < 2) throw Error(ErrorKind::DomainError, "degree must be at least 2");
  const int r = two_r / 2;
  if (totally_real) return {two_r, 0, two_r - 1};
  return {0, r, r - 1};
}

RootsOfUnity roots_of_unity(std::int64_t D) {
  if (D > 0) throw Error(ErrorKind::NotImaginary, "D=" + std::to_string(D) + " is positive");
  require_fundamental(D);
  const double h = std::sqrt(3.0) / 2.0;
  if (D == -4) return {4, {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}};
  if (D == -3)
    return {6, {{1.0, 0.0}, {0.5, h}, {-0.5, h}, {-1.0, 0.0}, {-0.5, -h}, {0.5, -h}}};
  return {2, {{1.0, 0.0}, {-1.0, 0.0}}};
}

double FundamentalUnit::value() const {
  const double v = x.get_d() + y.get_d() * std::sqrt(static_cast<double>(d));
  return half_integral ? v / 2.0 : v;
}

std::string FundamentalUnit::to_string() const {
  std::string s = x.get_str() + "+" + y.get_str() + "*sqrt(" + std::to_string(d) + ")";
  return half_integral ? "(" + s + ")/2" : s;
}

FundamentalUnit fundamental_unit(std::int64_t d) {
  if (d <= 1) throw Error(ErrorKind::DomainError, "fundamental_unit needs d > 1");
  if (!is_squarefree(d)) throw Error(ErrorKind::NotSquarefree, std::to_string(d) + " is not squarefree");

  // Expand the reduced number w = (P0 + sqrt d)/Q0 generating the maximal
  // order; it is purely periodic and eps = q_{l-1} w + q_{l-2}.
  const std::int64_t s = isqrt(d);
  const bool one_mod_four = mod_pos(d, 4) == 1;
  const std::int64_t p0 = one_mod_four ? (s % 2 == 1 ? s : s - 1) : s;
  const std::int64_t q0 = one_mod_four ? 2 : 1;

  std::int64_t p = p0, q = q0;
  BigInt q_prev2 = 1, q_prev1 = 0;  // q_{-2}, q_{-1}
  std::int64_t period = 0;
  do {
    const std::int64_t a = (p + s) / q;
    const BigInt q_next = a * q_prev1 + q_prev2;
    q_prev2 = q_prev1;
    q_prev1 = q_next;
    p = a * q - p;
    q = (d - p * p) / q;
    if (++period > kMaxPeriod)
      throw Error(ErrorKind::NoConvergence, "continued fraction period exceeds 1e7");
  } while (p != p0 || q != q0);

  FundamentalUnit u;
  u.d = d;
  u.norm = period % 2 == 0 ? 1 : -1;
  if (q0 == 1) {
    u.x = q_prev1 * p0 + q_prev2;
    u.y = q_prev1;
  } else {
    BigInt x2 = q_prev1 * p0 + 2 * q_prev2;
    BigInt y2 = q_prev1;
    if (mpz_even_p(x2.get_mpz_t()) && mpz_even_p(y2.get_mpz_t())) {
      u.x = x2 / 2;
      u.y = y2 / 2;
    } else {
      u.x = std::move(x2);
      u.y = std::move(y2);
      u.half_integral = true;
    }
  }
  u.regulator = log_big(u.x) + std::log1p(ratio_big(u.y, u.x, d)) -
                (u.half_integral ? std::numbers::ln2 : 0.0);
  return u;
}

bool is_primitive(const BinaryQuadraticForm& f) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), f.a.get_mpz_t(), f.b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f.c.get_mpz_t());
  return g == 1;
}

bool is_reduced(const BinaryQuadraticForm& f) {
  const BigInt D = f.discriminant();
  if (D < 0) {
    if (f.a <= 0) return false;
    const BigInt abs_b = abs(f.b);
    if (!(abs_b <= f.a && f.a <= f.c)) return false;
    if ((abs_b == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
  }
  // sqrt D is irrational, so b < sqrt D <=> b <= s
  const BigInt s = isqrt(D);
  const BigInt two_a = 2 * abs(f.a);
  return f.b > 0 && f.b <= s && two_a + f.b > s && two_a - f.b <= s;
}

BinaryQuadraticForm rho(const BinaryQuadraticForm& f) {
  const BigInt D = f.discriminant();
  const BigInt s = isqrt(D);
  const BigInt abs_c = abs(f.c);
  const BigInt two_c = 2 * abs_c;
  BigInt b;
  if (abs_c > s) {
    // -|c| < b <= |c|
    b = mod_pos(-f.b + abs_c - 1, two_c) - abs_c + 1;
  } else {
    // s - 2|c| < b <= s
    const BigInt low = s - two_c + 1;
    b = mod_pos(-f.b - low, two_c) + low;
  }
  const BigInt a_next = (b * b - D) / (4 * f.c);
  return {f.c, b, a_next};
}

ReductionResult reduce(const BinaryQuadraticForm& f) {
  const BigInt D = f.discriminant();
  if (D == 0 || (D > 0 && isqrt(D) * isqrt(D) == D))
    throw Error(ErrorKind::SquareDiscriminant, "cannot reduce a form of square discriminant");
  ReductionResult out{f, 0};
  BinaryQuadraticForm& g = out.form;
  if (D < 0) {
    if (g.a < 0) throw Error(ErrorKind::DomainError, "negative definite forms are not handled");
    while (true) {
      if (!(-g.a < g.b && g.b <= g.a)) {
        // b -> b' in (-a, a], b' = b mod 2a
        const BigInt two_a = 2 * g.a;
        const BigInt b = mod_pos(g.b + g.a - 1, two_a) - g.a + 1;
        g.c = (b * b - D) / (4 * g.a);
        g.b = b;
        ++out.steps;
      }
      if (g.a > g.c) {
        std::swap(g.a, g.c);
        g.b = -g.b;
        ++out.steps;
        continue;
      }
      if (g.a == g.c && g.b < 0) {
        g.b = -g.b;
        ++out.steps;
      }
      break;
    }
    return out;
  }
  while (!is_reduced(g)) {
    g = rho(g);
    ++out.steps;
  }
  return out;
}

std::vector<SmallQuadraticForm> reduced_forms(std::int64_t D) {
  require_fundamental(D);
  std::vector<SmallQuadraticForm> forms;
  auto primitive = [](std::int64_t a, std::int64_t b, std::int64_t c) {
    return std::gcd(std::gcd(a, b), c) == 1;
  };
  if (D < 0) {
    const std::int64_t abs_d = -D;
    for (std::int64_t b = abs_d % 2; 3 * b * b <= abs_d; b += 2) {
      const std::int64_t n = (b * b + abs_d) / 4;
      for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= n; ++a) {
        if (n % a != 0) continue;
        const std::int64_t c = n / a;
        if (!primitive(a, b, c)) continue;
        forms.push_back({a, b, c});
        if (b != 0 && b != a && a != c) forms.push_back({a, -b, c});
      }
    }
    return forms;
  }
  const std::int64_t s = isqrt(D);
  for (std::int64_t b = 2 - D % 2; b <= s; b += 2) {
    const std::int64_t n = (D - b * b) / 4;  // a c = -n
    for (std::int64_t abs_a = 1; 2 * abs_a - b <= s; ++abs_a) {
      if (2 * abs_a + b <= s || n % abs_a != 0) continue;
      const std::int64_t abs_c = n / abs_a;
      if (!primitive(abs_a, b, abs_c)) continue;
      forms.push_back({abs_a, b, -abs_c});
      forms.push_back({-abs_a, b, abs_c});
    }
  }
  return forms;
}

ClassNumberInfo class_number_info(std::int64_t D) {
  std::vector<SmallQuadraticForm> forms = reduced_forms(D);
  ClassNumberInfo info;
  if (D < 0) {
    info.h = info.h_plus = static_cast<std::int64_t>(forms.size());
    return info;
  }

  // Partition reduced forms into rho-cycles; each cycle is one narrow class.
  const std::int64_t s = isqrt(D);
  auto rho_small = [&](const SmallQuadraticForm& f) {
    const std::int64_t abs_c = std::abs(f.c);
    const std::int64_t low = s - 2 * abs_c + 1;  // reduced forms have |c| < sqrt D
    const std::int64_t b = mod_pos(-f.b - low, 2 * abs_c) + low;
    return SmallQuadraticForm{f.c, b, (b * b - D) / (4 * f.c)};
  };
  const auto by_b_then_a = [](const SmallQuadraticForm& x, const SmallQuadraticForm& y) {
    return std::tie(x.b, x.a) < std::tie(y.b, y.a);
  };
  std::sort(forms.begin(), forms.end(), by_b_then_a);
  auto index_of = [&](const SmallQuadraticForm& f) {
    const auto it = std::lower_bound(forms.begin(), forms.end(), f, by_b_then_a);
    if (it == forms.end() || !(*it == f))
      throw Error(ErrorKind::PrecisionLoss, "rho left the set of reduced forms");
    return static_cast<std::size_t>(it - forms.begin());
  };

  std::vector<bool> seen(forms.size(), false);
  info.unit_norm = 1;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (seen[i]) continue;
    ++info.h_plus;
    bool has_one = false, has_minus_one = false;
    SmallQuadraticForm f = forms[i];
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      has_one |= f.a == 1;
      has_minus_one |= f.a == -1;
      f = rho_small(f);
      j = index_of(f);
    }
    if (has_one && has_minus_one) info.unit_norm = -1;
  }
  info.h = info.unit_norm == -1 ? info.h_plus : info.h_plus / 2;
  return info;
}

std::int64_t class_number(std::int64_t D) { return class_number_info(D).h; }

std::int64_t narrow_class_number(std::int64_t D) { return class_number_info(D).h_plus; }

std::int64_t class_number_analytic(std::int64_t D, std::int64_t precision_terms) {
  require_fundamental(D);
  const std::int64_t abs_d = D < 0 ? -D : D;
  if (abs_d > 1'000'000) throw Error(ErrorKind::DomainError, "|D| > 1e6");
  const std::int64_t terms =
      precision_terms <= 0 ? abs_d - 1 : std::min<std::int64_t>(precision_terms, abs_d - 1);

  double h = 0.0;
  if (D < 0) {
    const double w = D == -3 ? 6.0 : D == -4 ? 4.0 : 2.0;
    std::int64_t sum = 0;
    for (std::int64_t a = 1; a <= terms; ++a) sum += kronecker(D, a) * a;
    h = -w * static_cast<double>(sum) / (2.0 * static_cast<double>(abs_d));
  } else {
    double sum = 0.0;
    for (std::int64_t a = 1; a <= terms; ++a) {
      const int chi = kronecker(D, a);
      if (chi == 0) continue;
      const std::int64_t folded = std::min(a, D - a);
      sum += chi * std::log(std::sin(std::numbers::pi * static_cast<double>(folded) / static_cast<double>(D)));
    }
    h = -sum / (2.0 * fundamental_unit(radicand_of(D)).regulator);
  }
  const double rounded = std::round(h);
  if (std::abs(h - rounded) > 0.25 || rounded < 1.0)
    throw Error(ErrorKind::PrecisionLoss,
                "class number formula gave " + std::to_string(h) + " for D=" + std::to_string(D));
  return static_cast<std::int64_t>(rounded);
}

}  // namespace lgw
