// Prints the pure SCE of the two-type signaling game over a (chi_s, psi_s)
// grid as CSV, then the passing set at a few named points.
#include <iostream>

#include "cursed/cursed.hpp"

using namespace cursed;

int main(int argc, char** argv) {
  int points = argc > 1 ? std::stoi(argv[1]) : 7;
  auto game = signaling_game<Rational>();
  auto profiles = all_pure_profiles(game);
  auto axis = unit_grid<Rational>(points, {Rational(1, 3)});
  auto rows = region_map_sce(game, profiles, axis, axis);
  std::cout << region_csv(rows);

  for (auto [c, p] : {std::pair{Rational(1, 5), Rational(1, 2)}, std::pair{Rational(1, 2), Rational(1, 2)}, std::pair{Rational(1), Rational(0)}}) {
    std::cerr << "chi_s=" << c << " psi_s=" << p << ":";
    for (const auto& sigma : profiles) {
      if (check_sce(game, sigma, c, p).verdict) std::cerr << " " << to_compact(game, sigma);
    }
    std::cerr << "\n";
  }
}
