// tau(t) mod 23 on the non-residues of -23, next to sigma_11(t) mod 691.

#include <iostream>

#include "siegelcong/eisenstein.hpp"

int main() {
  using namespace siegelcong;
  constexpr std::int64_t t_max = 30;
  const auto delta = delta_expansion(t_max);
  const auto g12 = g12_expansion(t_max);
  std::cout << "t  tau(t)  chi_-23(t)  tau mod 23  tau mod 691  sigma_11 mod 691\n";
  for (std::int64_t t = 1; t <= t_max; ++t) {
    std::cout << t << "  " << to_string(delta.at(t)) << "  " << kronecker(-23, t) << "  "
              << residue_at(delta, t, 23) << "  " << residue_at(delta, t, 691) << "  " << residue_at(g12, t, 691)
              << "\n";
  }
}
