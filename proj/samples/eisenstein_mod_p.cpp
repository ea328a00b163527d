// Degree-2 Eisenstein coefficients of weight (p+1)/2 reduced mod p.

#include <cstdlib>
#include <iostream>

#include "siegelcong/eisenstein.hpp"

int main(int argc, char** argv) {
  using namespace siegelcong;
  const std::int64_t p = argc > 1 ? std::atoll(argv[1]) : 23;
  const std::int64_t k = (p + 1) / 2;
  const auto e = eis2(k, Truncation::by_det2(60));
  std::cout << "E_" << k << "^(2) mod " << p << "\n";
  for (const auto& t : e.region_keys()) {
    if (!t.is_positive_definite()) continue;
    std::cout << "(" << t.to_string() << ")  det2=" << t.det2() << "  a=" << to_string(e.at(t))
              << "  mod p: " << residue_at(e, t, p) << "\n";
  }
}
