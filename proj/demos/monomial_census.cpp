// Counts how the classifier disposes of every three-monomial system
//   x' = a x^p y^q,  y' = b x^i y^j + c x^k y^l
// with exponents up to N (default 3) and a, b, c in {-1, 0, 1}.

#include <cstdio>
#include <cstdlib>

#include "avgdeg/monomial_classifier.hpp"

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 3;
  const auto scan = avgdeg::scan_systems(n);

  std::printf("%ld systems, %ld certified\n\n", scan.systems, scan.certified);
  for (const auto& [prop, count] : scan.by_property) std::printf("  %-10s %8ld\n", prop.c_str(), count);
  std::printf("\n");
  for (const auto& [label, count] : scan.by_label) std::printf("  %-22s %8ld\n", label.c_str(), count);

  for (const auto& f : scan.failures) {
    const auto& s = f.system;
    std::printf("uncertified: a=%g b=%g c=%g (%d,%d) (%d,%d) (%d,%d): %s\n", s.a, s.b, s.c, s.p, s.q,
                s.i, s.j, s.k, s.l, f.reason.c_str());
  }
  return scan.failures.empty() ? 0 : 1;
}
