#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oddw::bounds {

using Int = std::int64_t;

// A positive quantity kept both directly (when finite in double) and as its natural log.
struct Value {
  std::optional<double> direct;
  double log = 0;
  bool log_space() const { return !direct.has_value(); }
};

// (4/pi) Gamma(k/2+1)^(2/k); throws std::invalid_argument for k < 2.
double hermite_sigma(int k);

// The direct forms throw std::overflow_error when the double result is not finite.
double alpha_bar(int n);
double c_bar(double m, double d = 1.0);
double G(int n, double d = 1.0);
double log_alpha_bar(int n);
double log_c_bar(double m, double d = 1.0);
double log_G(int n, double d = 1.0);

Value alpha_bar_value(int n);
Value c_bar_value(double m, double d = 1.0);
Value G_value(int n, double d = 1.0);
// exp((4 + 2 sqrt 2 + eps) sqrt n)
Value envelope(int n, double eps);

struct ChainEntry {
  int n = 0;
  Value bound;     // g(n) <= max(g(n-1) + G(n), 3n^2 - 3n + 11), g(2) = 12
  Value n_times_G;
  bool within = false;  // bound <= n G(n)
};

// Entries for 3..n. Throws std::invalid_argument for n < 3 or d < 1.
std::vector<ChainEntry> upper_bound_chain(int n, double d = 1.0);

struct Summand {
  std::string kind;  // "pair", "row" or "residual"
  int i = 0, j = 0;  // 0-based; for "row" i is n0; for "residual" both are n0
  std::vector<std::vector<Int>> matrix;
};

struct SplitDecomposition {
  int n = 0, n0 = 0;
  std::vector<std::vector<Int>> t;  // t[i][j], i != j; diagonal unused
  Int r0 = 0;
  Int k0 = 0;             // odd squares needed for the residual r0 E + w/2 (0 if r0 == 0)
  Int implied_size = 0;   // 6 (n-1)(n-2)/2 + 5 (n-1) + k0
  std::vector<Summand> summands;
};

// Throws std::invalid_argument naming the violated condition; std::logic_error if the
// construction fails its own exact checks.
SplitDecomposition split_decompose(const std::vector<Int>& a, const std::vector<std::vector<Int>>& s, int n0);

}  // namespace oddw::bounds
