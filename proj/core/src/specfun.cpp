#include "aperture/specfun.hpp"

#include <cmath>

#include "aperture/errors.hpp"

namespace aperture::specfun {
namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr long double kEulerGamma = 0.57721566490153286060651209008240243L;

// Below the cutoff the series dominate; above it the asymptotic expansion
// reaches optimal truncation well under 1e-13 of the envelope.
constexpr double kSeriesCutoff = 16.0;

void check_order(int order) {
  if (order != 0 && order != 1)
    throw ConfigError("cylinder function order must be 0 or 1");
}

long double j0_series(long double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L, sum = 1.0L;
  for (int n = 1; n < 120; ++n) {
    term *= -q / (static_cast<long double>(n) * n);
    sum += term;
    if (fabsl(term) < 1e-26L * (fabsl(sum) + 1.0L)) break;
  }
  return sum;
}

long double j1_series(long double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L, sum = 1.0L;
  for (int n = 1; n < 120; ++n) {
    term *= -q / (static_cast<long double>(n) * (n + 1));
    sum += term;
    if (fabsl(term) < 1e-26L * (fabsl(sum) + 1.0L)) break;
  }
  return 0.5L * x * sum;
}

long double y0_series(long double x) {
  // (2/pi) [ (ln(x/2) + gamma) J0 + sum_{n>=1} (-1)^{n+1} H_n q^n / (n!)^2 ]
  const long double q = 0.25L * x * x;
  long double term = 1.0L, h = 0.0L, sum = 0.0L;
  for (int n = 1; n < 120; ++n) {
    term *= -q / (static_cast<long double>(n) * n);
    h += 1.0L / n;
    sum -= term * h;  // term carries (-1)^n
    if (fabsl(term) * h < 1e-26L * (fabsl(sum) + 1.0L)) break;
  }
  return (2.0L / kPi) * ((logl(0.5L * x) + kEulerGamma) * j0_series(x) + sum);
}

long double y1_series(long double x) {
  // (2/pi)(ln(x/2)+gamma) J1 - 2/(pi x)
  //   - (1/pi) sum_{n>=0} (-1)^n (H_n + H_{n+1}) (x/2)^{2n+1} / (n! (n+1)!)
  const long double q = 0.25L * x * x;
  long double term = 0.5L * x;
  long double hn = 0.0L, hn1 = 1.0L;
  long double sum = term * (hn + hn1);
  for (int n = 1; n < 120; ++n) {
    term *= -q / (static_cast<long double>(n) * (n + 1));
    hn += 1.0L / n;
    hn1 += 1.0L / (n + 1);
    sum += term * (hn + hn1);
    if (fabsl(term) * (hn + hn1) < 1e-26L * (fabsl(sum) + 1.0L)) break;
  }
  return (2.0L / kPi) * (logl(0.5L * x) + kEulerGamma) * j1_series(x) -
         2.0L / (kPi * x) - sum / kPi;
}

struct JY {
  long double j, y;
};

// Hankel expansion: with omega = x - (2*order+1) pi/4 and u_k = a_k / x^k,
//   J ~ sqrt(2/(pi x)) (P cos omega - Q sin omega),
//   Y ~ sqrt(2/(pi x)) (P sin omega + Q cos omega),
// P = sum_j (-1)^j u_{2j}, Q = sum_j (-1)^j u_{2j+1}. Terms are summed until
// they stop decreasing (optimal truncation) or fall below working precision.
JY jy_asymptotic(int order, long double x) {
  const long double nu4 = order == 0 ? 0.0L : 4.0L;  // 4 nu^2
  long double u = 1.0L, p = 0.0L, q = 0.0L;
  long double prev = 1e38L;
  int sp = 1, sq = 1;
  for (int k = 0; k < 160; ++k) {
    if (k > 0) {
      const long double odd = 2.0L * k - 1.0L;
      u *= (nu4 - odd * odd) / (8.0L * k * x);
      if (fabsl(u) >= prev) break;
      prev = fabsl(u);
    }
    if (k % 2 == 0) {
      p += sp * u;
      sp = -sp;
    } else {
      q += sq * u;
      sq = -sq;
    }
    if (fabsl(u) < 1e-25L * (fabsl(p) + fabsl(q))) break;
  }
  const long double omega = x - (2 * order + 1) * kPi / 4.0L;
  const long double amp = sqrtl(2.0L / (kPi * x));
  const long double c = cosl(omega), s = sinl(omega);
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

long double j_internal(int order, long double x) {
  if (x <= kSeriesCutoff) return order == 0 ? j0_series(x) : j1_series(x);
  return jy_asymptotic(order, x).j;
}

long double y_internal(int order, long double x) {
  if (x <= kSeriesCutoff) return order == 0 ? y0_series(x) : y1_series(x);
  return jy_asymptotic(order, x).y;
}

}  // namespace

double bessel_j(int order, double x) {
  check_order(order);
  if (!std::isfinite(x) || x < 0.0)
    throw ConfigError("bessel_j requires finite x >= 0");
  return static_cast<double>(j_internal(order, x));
}

double bessel_y(int order, double x) {
  check_order(order);
  if (!std::isfinite(x) || x <= 0.0)
    throw ConfigError("bessel_y requires finite x > 0");
  return static_cast<double>(y_internal(order, x));
}

std::complex<double> hankel1(int order, double x) {
  check_order(order);
  if (!std::isfinite(x) || x <= 0.0)
    throw ConfigError("hankel1 requires finite x > 0");
  return {static_cast<double>(j_internal(order, x)),
          static_cast<double>(y_internal(order, x))};
}

std::vector<double> bessel_j_seq(int n_max, double x) {
  if (n_max < 0) throw ConfigError("bessel_j_seq requires n_max >= 0");
  if (!std::isfinite(x) || x < 0.0)
    throw ConfigError("bessel_j_seq requires finite x >= 0");
  std::vector<double> out(n_max + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  // Miller backward recurrence. Start far enough above both n_max and the
  // turning point n ~ x, then normalize with J0 + 2 sum_{k>=1} J_{2k} = 1.
  const int start = std::max(n_max, static_cast<int>(std::ceil(x))) + 20 +
                    static_cast<int>(std::sqrt(40.0 * (n_max + 1)));
  std::vector<long double> vals(n_max + 1, 0.0L);
  long double fp1 = 0.0L, f = 1e-32L, norm = 0.0L;
  if (start % 2 == 0) norm += 2.0L * f;
  if (start <= n_max) vals[start] = f;  // cannot happen, kept for clarity
  for (int n = start; n >= 1; --n) {
    const long double fm1 = (2.0L * n / static_cast<long double>(x)) * f - fp1;
    fp1 = f;
    f = fm1;
    const int idx = n - 1;
    if (idx <= n_max) vals[idx] = f;
    if (idx >= 2 && idx % 2 == 0) norm += 2.0L * f;
    if (fabsl(f) > 1e280L) {
      const long double scale = 1e-280L;
      f *= scale;
      fp1 *= scale;
      norm *= scale;
      for (auto& v : vals) v *= scale;
    }
  }
  norm += f;  // f now holds f_0
  for (int i = 0; i <= n_max; ++i) out[i] = static_cast<double>(vals[i] / norm);
  return out;
}

std::vector<double> bessel_y_seq(int n_max, double x) {
  if (n_max < 0) throw ConfigError("bessel_y_seq requires n_max >= 0");
  if (!std::isfinite(x) || x <= 0.0)
    throw ConfigError("bessel_y_seq requires finite x > 0");
  std::vector<double> out(n_max + 1);
  long double ym = y_internal(0, x);
  out[0] = static_cast<double>(ym);
  if (n_max == 0) return out;
  long double y = y_internal(1, x);
  out[1] = static_cast<double>(y);
  for (int n = 1; n < n_max; ++n) {
    const long double yn = (2.0L * n / static_cast<long double>(x)) * y - ym;
    ym = y;
    y = yn;
    out[n + 1] = static_cast<double>(y);
  }
  return out;
}

std::vector<std::complex<double>> hankel1_seq(int n_max, double x) {
  const std::vector<double> js = bessel_j_seq(n_max, x);
  const std::vector<double> ys = bessel_y_seq(n_max, x);
  std::vector<std::complex<double>> out(n_max + 1);
  for (int i = 0; i <= n_max; ++i) out[i] = {js[i], ys[i]};
  return out;
}

}  // namespace aperture::specfun
