#include "cwbound/params.hpp"

#include "cwbound/combinatorics.hpp"

#include <stdexcept>

namespace cwbound {

std::vector<int> CodeParams::half_distances() const {
  std::vector<int> h;
  for (int i = d / 2; i <= w; ++i) h.push_back(i);
  return h;
}

bool CodeParams::is_canonical() const {
  return d % 2 == 0 && d >= 4 && d < 2 * w && 2 * w <= n;
}

std::string to_string(const CodeParams& p) {
  std::string s = "(" + std::to_string(p.n) + "," + std::to_string(p.d) + "," + std::to_string(p.w) + ")";
  if (p.size) s += " M=" + std::to_string(*p.size);
  return s;
}

Normalized normalize(int n, int d, int w) {
  if (n < 1 || d < 1 || w < 0 || w > n) {
    throw std::invalid_argument("malformed parameters (n,d,w) = (" + std::to_string(n) + "," +
                                std::to_string(d) + "," + std::to_string(w) + ")");
  }
  Normalized out;
  if (d % 2 != 0) {
    out.steps.push_back("odd d: A(n," + std::to_string(d) + ",w) = A(n," + std::to_string(d + 1) + ",w)");
    ++d;
  }
  if (2 * w > n) {
    out.steps.push_back("complement: w " + std::to_string(w) + " -> " + std::to_string(n - w));
    w = n - w;
  }
  out.params = CodeParams{n, d, w, std::nullopt};
  if (2 * w < d) {
    out.steps.push_back("2w < d: A = 1");
    out.exact = Integer(1);
  } else if (d == 2) {
    out.steps.push_back("d = 2: A = C(n,w)");
    out.exact = binomial(n, w);
  } else if (2 * w == d) {
    out.steps.push_back("d = 2w: A = floor(n/w)");
    out.exact = Integer(n / w);
  }
  return out;
}

std::optional<Integer> exact_constant_weight(int n, int d, int w) {
  return normalize(n, d, w).exact;
}

}  // namespace cwbound
