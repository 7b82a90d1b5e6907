// Small tour: an exact hit probability, a simulated stop time, one bound.
#include <iostream>

#include "ruinlab/ruinlab.hpp"

int main() {
  using namespace ruinlab;

  WalkSpec w = verify::fair_player_walk(3, 5, 10);
  std::cout << "P(reach 10 from 5), n=3: " << exact_hit_probability(w) << "\n";

  Interval b = ruin_prob_bounds(5, 10, 3);
  std::cout << "  bounds [" << b.lower << ", " << b.upper << "]\n";

  GameConfig g = GameConfig::uniform(3, 4, 3);
  McOptions opt;
  opt.replicas = 2000;
  opt.seed = 7;
  Estimate e = estimate_stop_time(g, StopCondition::first_bankruptcy(), opt);
  std::cout << "first bankruptcy, n=3 I=4: " << e.mean << " +- " << e.std_error << "\n";
}
