#ifndef DISCLOSURE_NUMERICS_HPP_
#define DISCLOSURE_NUMERICS_HPP_

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace disclosure {

// Shrinks [inside, outside] around the boundary of a predicate, assuming
// pred(inside) holds and pred(outside) does not. Returns the final
// (inside, outside) pair; |outside - inside| <= tol on exit.
template <typename Pred>
std::pair<double, double> bisect_boundary(Pred&& pred, double inside, double outside,
                                          double tol, int max_iter = 200) {
  for (int i = 0; i < max_iter && std::abs(outside - inside) > tol; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (pred(mid)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return {inside, outside};
}

// 1 - (1 - q)^n without cancellation for small q.
inline double one_minus_pow(double q, int n) {
  if (n == 0) return 0.0;
  return -std::expm1(n * std::log1p(-q));
}

// Rounds to 12 significant digits; used for every number that leaves the
// library as text.
inline double round_sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace disclosure

#endif  // DISCLOSURE_NUMERICS_HPP_
