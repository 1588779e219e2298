#include "oddwaring/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "oddwaring/oddsq.hpp"

namespace oddw::bounds {

namespace {

Value from_log(double lg) {
  Value v;
  v.log = lg;
  const double d = std::exp(lg);
  if (std::isfinite(d)) v.direct = d;
  return v;
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) throw std::overflow_error(std::string(what) + " overflows double precision");
  return v;
}

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
}

void check_d(double d) {
  if (!(d >= 1.0)) throw std::invalid_argument("D must be >= 1");
}

double log_add(double a, double b) {
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

double hermite_sigma(int k) {
  if (k < 2) throw std::invalid_argument("sigma_k needs k >= 2");
  return 4.0 / M_PI * std::exp(2.0 / k * std::lgamma(k / 2.0 + 1.0));
}

double log_alpha_bar(int n) {
  check_n(n);
  const double l = std::log(n + 1.0);
  return l + l * l;
}

double alpha_bar(int n) { return finite_or_throw(std::exp(log_alpha_bar(n)), "alpha_bar"); }

double log_c_bar(double m, double d) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  check_d(d);
  return std::log(d) + std::sqrt(2.0 * m);
}

double c_bar(double m, double d) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  check_d(d);
  return finite_or_throw(d * std::exp(std::sqrt(2.0 * m)), "c_bar");
}

double log_G(int n, double d) {
  check_n(n);
  check_d(d);
  const double l = std::log(n + 1.0);
  return std::log(144.0) + 6 * std::log(d) + 12 * std::log(static_cast<double>(n)) + 4 * (l + l * l) +
         (4 + 4 * std::sqrt(2.0)) * std::sqrt(n / 2.0);
}

double G(int n, double d) {
  check_n(n);
  check_d(d);
  const double l = std::log(n + 1.0);
  const double v = 144.0 * std::pow(d, 6) * std::pow(static_cast<double>(n), 12) * std::exp(4 * (l + l * l)) *
                   std::exp((4 + 4 * std::sqrt(2.0)) * std::sqrt(n / 2.0));
  return finite_or_throw(v, "G(n)");
}

Value alpha_bar_value(int n) { return from_log(log_alpha_bar(n)); }
Value c_bar_value(double m, double d) { return from_log(log_c_bar(m, d)); }
Value G_value(int n, double d) { return from_log(log_G(n, d)); }

Value envelope(int n, double eps) {
  check_n(n);
  if (!(eps > 0)) throw std::invalid_argument("eps must be > 0");
  return from_log((4 + 2 * std::sqrt(2.0) + eps) * std::sqrt(static_cast<double>(n)));
}

std::vector<ChainEntry> upper_bound_chain(int n, double d) {
  if (n < 3) throw std::invalid_argument("the recursion starts at n = 3");
  check_d(d);
  std::vector<ChainEntry> out;
  double lg = std::log(12.0);
  for (int j = 3; j <= n; ++j) {
    const double floor_term = std::log(3.0 * j * j - 3.0 * j + 11.0);
    lg = std::max(log_add(lg, log_G(j, d)), floor_term);
    ChainEntry e;
    e.n = j;
    e.bound = from_log(lg);
    e.n_times_G = from_log(std::log(static_cast<double>(j)) + log_G(j, d));
    e.within = lg <= e.n_times_G.log;
    out.push_back(e);
  }
  return out;
}

SplitDecomposition split_decompose(const std::vector<Int>& a, const std::vector<std::vector<Int>>& s, int n0) {
  const int n = static_cast<int>(a.size());
  if (n < 3) throw std::invalid_argument("split_decompose needs n >= 3");
  if (n0 < 0 || n0 >= n) throw std::invalid_argument("n0 out of range");
  if (static_cast<int>(s.size()) != n) throw std::invalid_argument("S has the wrong size");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(s[i].size()) != n) throw std::invalid_argument("S is not square");
    for (int j = 0; j < n; ++j)
      if (s[i][j] != s[j][i]) throw std::invalid_argument("S is not symmetric");
  }
  for (int i = 0; i < n; ++i)
    if (i != n0 && (a[i] + s[i][i] - s[i][n0]) % 2 != 0)
      throw std::invalid_argument("condition (i) fails: a_i + s_ii and s_i,n0 differ in parity at i=" + std::to_string(i + 1));
  const Int amin = 2LL * n * (n - 1) * (3 * n + 2);
  for (int i = 0; i < n; ++i)
    if (a[i] <= amin) throw std::invalid_argument("condition (ii) fails: a_i <= 2n(n-1)(3n+2) at i=" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (static_cast<__int128>(a[i]) * a[j] < static_cast<__int128>(4) * n * n * s[i][j] * s[i][j])
        throw std::invalid_argument("condition (iii) fails: a_i a_j < 4 n^2 s_ij^2 at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");

  SplitDecomposition out;
  out.n = n;
  out.n0 = n0;
  out.t.assign(n, std::vector<Int>(n, 0));

  // Rows i != n0: even t_ij, t_i,n0 of the parity of s_i,n0, each at least 2 floor((v-1)/(2(n-1))).
  for (int i = 0; i < n; ++i) {
    if (i == n0) continue;
    const Int v = a[i] + s[i][i];
    const Int base = 2 * ((v - 1) / (2 * (n - 1)));
    Int rest = v - base * (n - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) out.t[i][j] = base;
    if (rest % 2 != 0) {
      out.t[i][n0] += 1;
      rest -= 1;
    }
    for (int j = 0; rest > 0; j = (j + 1) % n) {
      if (j == i) continue;
      out.t[i][j] += 2;
      rest -= 2;
    }
  }

  // Row n0: t == 5 (mod 8), at least floor(v/(n-1)) - 7 with v net of the 6-blocks; remainder r0.
  const Int pairs = static_cast<Int>(n - 1) * (n - 2) / 2;
  const Int v0 = a[n0] + s[n0][n0] - 6 * pairs;
  const Int lfl = v0 / (n - 1);
  const Int t0 = lfl - (((lfl - 5) % 8) + 8) % 8;
  for (int j = 0; j < n; ++j)
    if (j != n0) out.t[n0][j] = t0;
  out.r0 = v0 - t0 * (n - 1);
  for (int j = 0; out.r0 > 7 * (n - 1); j = (j + 1) % n) {
    if (j == n0) continue;
    out.t[n0][j] += 8;
    out.r0 -= 8;
  }

  auto zero = [&] { return std::vector<std::vector<Int>>(n, std::vector<Int>(n, 0)); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (i == n0 || j == n0) continue;
      Summand b{"pair", i, j, zero()};
      b.matrix[n0][n0] = 6;
      b.matrix[i][i] = out.t[i][j];
      b.matrix[j][j] = out.t[j][i];
      b.matrix[i][j] = b.matrix[j][i] = s[i][j];
      out.summands.push_back(std::move(b));
    }
  for (int j = 0; j < n; ++j) {
    if (j == n0) continue;
    Summand b{"row", n0, j, zero()};
    b.matrix[n0][n0] = out.t[n0][j];
    b.matrix[j][j] = out.t[j][n0];
    b.matrix[n0][j] = b.matrix[j][n0] = s[n0][j];
    out.summands.push_back(std::move(b));
  }
  Summand res{"residual", n0, n0, zero()};
  res.matrix[n0][n0] = out.r0;
  out.summands.push_back(std::move(res));

  // Exact self-checks.
  auto total = zero();
  for (const auto& b : out.summands)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) total[i][j] += b.matrix[i][j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (total[i][j] != (i == j ? a[i] : 0) + s[i][j]) throw std::logic_error("split summands do not add up to A+S");
  if (out.r0 < 0 || out.r0 > 7 * (n - 1)) throw std::logic_error("residual out of range");
  const Int tmin = (v0 / (n - 1)) - 7;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (static_cast<__int128>(out.t[i][j]) * out.t[j][i] <= static_cast<__int128>(s[i][j]) * s[i][j])
        throw std::logic_error("block determinant not positive");
      if (i == n0) {
        if (((out.t[i][j] % 8) + 8) % 8 != 5 || out.t[i][j] < tmin) throw std::logic_error("row-n0 entry malformed");
      } else {
        const Int want = j == n0 ? ((s[i][n0] % 2) + 2) % 2 : 0;
        if (((out.t[i][j] % 2) + 2) % 2 != want) throw std::logic_error("t_ij parity wrong");
        if (out.t[i][j] < 2 * ((a[i] + s[i][i] - 1) / (2 * (n - 1)))) throw std::logic_error("t_ij below floor");
      }
    }
  out.k0 = out.r0 == 0 ? 0 : static_cast<Int>(oddsq::min_odd_squares(static_cast<std::uint64_t>(out.r0)));
  if (out.k0 > 10) throw std::logic_error("residual needs more than 10 odd squares");
  out.implied_size = 6 * pairs + 5 * (n - 1) + out.k0;
  return out;
}

}  // namespace oddw::bounds
