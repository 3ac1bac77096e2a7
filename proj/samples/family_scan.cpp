// Scan the built-in profile family: terminal time L and the sign profile of
// phi for a handful of parameter values.

#include <hpk/profile_solution.hpp>

#include <cstdio>

int main() {
  const double alphas[] = {-3.5, -3.0, -1.0, 0.0, 0.5, 1.0, 3.0};
  std::printf("%8s %14s %14s %14s %14s\n", "alpha", "L", "phi(0)", "phi_min", "phi(L)");
  for (double a : alphas) {
    hpk::ProfileSolution sol(hpk::Profile::from_alpha(a));
    const double L = sol.L();
    double mn = sol.phi(0.0);
    for (int i = 0; i <= 4096; ++i) {
      const double t = L * i / 4096.0;
      mn = std::min(mn, sol.phi(t));
    }
    std::printf("%8.2f %14.9f %14.9f %14.9f %14.9f\n", a, L, sol.phi(0.0), mn, sol.phi(L));
  }
  return 0;
}
