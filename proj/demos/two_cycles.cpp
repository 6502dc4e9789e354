// Place two limit cycles at chosen radii in the cube-root family, then
// look for them with the return map.
//
//   ./two_cycles [r1 r2 [eps]]

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "avgdeg/avgdeg.hpp"

int main(int argc, char** argv) {
  using namespace avgdeg;
  std::vector<double> targets{1.0, 4.0};
  double eps = 0.005;
  if (argc >= 3) targets = {std::atof(argv[1]), std::atof(argv[2])};
  if (argc >= 4) eps = std::atof(argv[3]);

  try {
    const auto base = presets::cbrt_family(presets::CbrtFamilyParams{}, eps);
    const auto betas = active_exponents(base);
    const auto syn = synthesize(betas, targets);
    const auto spec = realize_coefficients(base, syn.coefficients);

    std::printf("h(z) =");
    for (std::size_t j = 0; j < betas.size(); ++j) {
      std::printf(" %+.6f z^%.4g", syn.coefficients[j], betas[j]);
    }
    std::printf("\ncondition number of the synthesis system: %.3g\n", syn.condition);

    const Bracket window{0.4 * targets.front(), 1.5 * targets.back()};
    const auto report = find_fixed_points(spec, window);
    std::printf("\n%-10s %-14s %-14s %s\n", "target", "r*", "P'(r*)", "stability");
    for (std::size_t i = 0; i < report.cycles.size(); ++i) {
      const auto& c = report.cycles[i];
      std::printf("%-10.4g %-14.8f %-14.8f %s\n", i < targets.size() ? targets[i] : 0.0, c.r_star,
                  c.map_derivative, c.map_derivative < 1.0 ? "attracting" : "repelling");
    }
    if (!report.failures.empty()) {
      std::printf("(%zu grid points failed to integrate)\n", report.failures.size());
    }
    return report.cycles.size() == targets.size() ? 0 : 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
}
