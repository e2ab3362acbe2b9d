#include "cwbound/combinatorics.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwbound {

namespace {

constexpr int kTriangleRows = 64;

const std::vector<std::vector<Integer>>& pascal_triangle() {
  static const std::vector<std::vector<Integer>> rows = [] {
    std::vector<std::vector<Integer>> t(kTriangleRows + 1);
    for (int n = 0; n <= kTriangleRows; ++n) {
      t[n].resize(n + 1);
      t[n][0] = 1;
      t[n][n] = 1;
      for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return rows;
}

void check_krawtchouk_args(int k, int n, int x) {
  if (n < 0 || k < 0 || k > n || x < 0 || x > n) {
    throw std::domain_error("krawtchouk: need 0 <= k <= n and 0 <= x <= n, got k=" +
                            std::to_string(k) + " n=" + std::to_string(n) +
                            " x=" + std::to_string(x));
  }
}

// parity: 0 sums even j, 1 sums odd j.
Integer partial_krawtchouk(int k, int n, int x, int parity) {
  Integer sum = 0;
  for (int j = parity; j <= k; j += 2) sum += binomial(x, j) * binomial(n - x, k - j);
  return sum;
}

}  // namespace

Integer binomial(long n, long k) {
  if (n < 0) throw std::domain_error("binomial: negative n");
  if (k < 0 || k > n) return 0;
  if (n <= kTriangleRows) return pascal_triangle()[n][k];
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer krawtchouk_minus(int k, int n, int x) {
  check_krawtchouk_args(k, n, x);
  return partial_krawtchouk(k, n, x, 1);
}

Integer krawtchouk_plus(int k, int n, int x) {
  check_krawtchouk_args(k, n, x);
  return partial_krawtchouk(k, n, x, 0);
}

Integer krawtchouk(int k, int n, int x) {
  check_krawtchouk_args(k, n, x);
  Integer sum = 0;
  for (int j = 0; j <= k; ++j) {
    Integer term = binomial(x, j) * binomial(n - x, k - j);
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

Rational delsarte_q(int k, int i, int n, int w) {
  if (k < 1 || k > w || i < 0 || i > w || i > n - w) {
    throw std::domain_error("delsarte_q: parameters out of range (k=" + std::to_string(k) +
                            " i=" + std::to_string(i) + " n=" + std::to_string(n) +
                            " w=" + std::to_string(w) + ")");
  }
  Integer num = 0;
  for (int j = 0; j <= i; ++j) {
    // n - w - k may be negative when w > n - w; those terms vanish.
    if (n - w - k < 0) break;
    Integer term = binomial(k, j) * binomial(w - k, i - j) * binomial(n - w - k, i - j);
    if (j % 2 == 0) {
      num += term;
    } else {
      num -= term;
    }
  }
  return make_rational(num, binomial(w, i) * binomial(n - w, i));
}

}  // namespace cwbound
