#pragma once

// Point evaluation of the integer and rational quantities every constraint
// family is built from. All functions are pure.

#include "cwbound/rational.hpp"

namespace cwbound {

/// C(n, k); zero when k < 0 or k > n. Rows n <= 64 come from a cached
/// Pascal triangle. Requires n >= 0.
Integer binomial(long n, long k);

/// Krawtchouk polynomial P_k(n; x) = sum_j (-1)^j C(x, j) C(n - x, k - j).
Integer krawtchouk(int k, int n, int x);

/// Odd-j part of the Krawtchouk sum, without signs.
Integer krawtchouk_minus(int k, int n, int x);
/// Even-j part of the Krawtchouk sum.
Integer krawtchouk_plus(int k, int n, int x);

/// Coefficient of A_{2i} in the k-th Delsarte inequality for constant-weight
/// codes of length n and weight w:
///
///   q(k,i,n,w) = sum_j (-1)^j C(k,j) C(w-k,i-j) C(n-w-k,i-j) / (C(w,i) C(n-w,i))
///
/// Requires 1 <= k <= w, 0 <= i <= w, i <= n - w; throws std::domain_error
/// otherwise.
Rational delsarte_q(int k, int i, int n, int w);

}  // namespace cwbound
