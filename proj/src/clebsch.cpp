#include "starphase/clebsch.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace starphase {
namespace {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

const bigint& factorial(int n) {
  static std::vector<bigint> cache{1};
  if (n < 0) throw std::invalid_argument("factorial of negative");
  while (static_cast<int>(cache.size()) <= n)
    cache.push_back(cache.back() * static_cast<int>(cache.size()));
  return cache[n];
}

// halve a twice-valued integer combination that must be even
int half(int twice) {
  if (twice % 2 != 0) throw std::invalid_argument("non-integer spin combination");
  return twice / 2;
}

}  // namespace

double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj3, int tm3) {
  if (tj1 < 0 || tj2 < 0 || tj3 < 0) return 0.0;
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  if (tm1 + tm2 != tm3) return 0.0;
  if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2) || (tj1 + tj2 + tj3) % 2 != 0) return 0.0;

  const int a = half(tj1 + tj2 - tj3);
  const int b = half(tj1 - tj2 + tj3);
  const int c = half(-tj1 + tj2 + tj3);

  bigrat pref = bigrat(tj3 + 1) * bigrat(factorial(a) * factorial(b) * factorial(c),
                                         factorial(half(tj1 + tj2 + tj3) + 1));
  pref *= bigrat(factorial(half(tj3 + tm3)) * factorial(half(tj3 - tm3)) *
                 factorial(half(tj1 - tm1)) * factorial(half(tj1 + tm1)) *
                 factorial(half(tj2 - tm2)) * factorial(half(tj2 + tm2)));

  // both combinations are even given the parity checks above
  const int kmin = std::max({0, half(tj1 + tm2 - tj3), half(tj2 - tm1 - tj3)});
  const int kmax = std::min({a, half(tj1 - tm1), half(tj2 + tm2)});

  bigrat sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    const int d1 = a - k;
    const int d2 = half(tj1 - tm1) - k;
    const int d3 = half(tj2 + tm2) - k;
    const int d4 = half(tj3 - tj2 + tm1) + k;
    const int d5 = half(tj3 - tj1 - tm2) + k;
    if (d1 < 0 || d2 < 0 || d3 < 0 || d4 < 0 || d5 < 0) continue;
    bigrat term(1, factorial(k) * factorial(d1) * factorial(d2) * factorial(d3) *
                       factorial(d4) * factorial(d5));
    if (k % 2) term = -term;
    sum += term;
  }
  if (sum == 0) return 0.0;

  // exact until the final sqrt: result = sign(sum) * sqrt(pref * sum^2)
  const bigrat squared = pref * sum * sum;
  const double value = std::sqrt(squared.convert_to<double>());
  return sum < 0 ? -value : value;
}

}  // namespace starphase
