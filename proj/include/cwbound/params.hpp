#pragma once

#include "cwbound/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cwbound {

/// A constant-weight bound query in canonical form: d even and
/// 4 <= d < 2w <= n. `size` is an assumed code size for M-dependent
/// constraint families.
struct CodeParams {
  int n = 0;
  int d = 0;
  int w = 0;
  std::optional<std::int64_t> size;

  /// Half-distances H = {d/2, ..., w} indexing the variables A_{2i}.
  std::vector<int> half_distances() const;

  bool is_canonical() const;

  auto operator<=>(const CodeParams&) const = default;
};

std::string to_string(const CodeParams& p);

/// Outcome of reducing (n, d, w): either the exact A(n, d, w) or canonical
/// parameters still needing a bound. `steps` records each reduction applied.
struct Normalized {
  std::optional<Integer> exact;
  CodeParams params;
  std::vector<std::string> steps;
};

/// Applies the odd-d bump, complementation to w <= n/2 and the closed forms
/// A(n,2,w) = C(n,w), A(n,2w,w) = floor(n/w), A(n,d,w) = 1 for 2w < d.
/// Throws std::invalid_argument for n < 1, d < 1, w < 0 or w > n.
Normalized normalize(int n, int d, int w);

/// Exact A(n, d, w) when one of the closed forms applies after reduction.
std::optional<Integer> exact_constant_weight(int n, int d, int w);

}  // namespace cwbound
