#include <cmath>
#include <cstdio>
#include <vector>

#include "avgdeg/avgdeg.hpp"

// The van der Pol cycle r*(eps) approaches the averaged radius 2/sqrt(3).
// Halving eps quarters the gap: the O(eps) correction to the radius of this
// symmetric system vanishes.
int main() {
  using namespace avgdeg;
  const double a = 2.0 / std::sqrt(3.0);
  const std::vector<double> eps{0.08, 0.04, 0.02, 0.01, 0.005, 0.0025};
  const auto table = continuation_check(presets::van_der_pol(1.0), eps, a, {0.3, 3.0});

  std::printf("%-8s %-18s %-12s %s\n", "eps", "r*", "|r* - a|", "gap ratio");
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    if (i == 0) {
      std::printf("%-8g %-18.12f %-12.3e\n", r.epsilon, r.r_star, r.gap);
    } else {
      std::printf("%-8g %-18.12f %-12.3e %.3f\n", r.epsilon, r.r_star, r.gap,
                  r.gap / table.rows[i - 1].gap);
    }
  }
  std::printf("gaps non-increasing: %s\n", table.non_increasing ? "yes" : "no");
}
