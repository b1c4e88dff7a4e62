// Cutoff player of the broadcaster game under CSE and SCE for a few chi.
#include <iomanip>
#include <iostream>

#include "cursed/cursed.hpp"

using namespace cursed;

int main(int argc, char** argv) {
  int n = argc > 1 ? std::stoi(argv[1]) : 6;
  double alpha = argc > 2 ? std::stod(argv[2]) : 0.5;
  auto game = announcement_chain_game<double>(n, alpha);
  std::cout << "n=" << n << " alpha=" << alpha << " threshold=" << risk_threshold(alpha) << "\n";
  std::cout << std::setw(6) << "chi" << std::setw(10) << "cse" << std::setw(10) << "closed" << std::setw(10) << "sce" << "\n";
  for (double chi : {0.0, 0.5, 0.7, 0.8, 0.9, 0.95, 1.0}) {
    auto cse = engine_cutoff_cse(game, chi);
    auto sce = engine_cutoff_sce(game, chi, 0.0);
    std::cout << std::setw(6) << chi << std::setw(10) << cutoff_string(cse.cutoff) << std::setw(10) << cutoff_string(cutoff_cse(alpha, chi, n))
              << std::setw(10) << cutoff_string(sce.cutoff) << "\n";
  }
}
