// Bing double of the figure-eight knot against a representation onto a 2-group.

#include <iostream>

#include "sliceob.hpp"

int main(int argc, char** argv) {
  using namespace sliceob;
  const std::string path = argc > 1 ? argv[1] : "fixtures/bing_fig8_rep.json";
  try {
    const MonomialRep rep = io::rep_from_json(io::read_json_file(path));
    const AlexanderPoly fig8 = builtin_knot("fig8")->alexander;
    const BingResult r = bing_double_obstruction(fig8, rep, 2);

    std::cout << "p-group order " << r.p_group.permutation_group_order << ", det group order " << r.det.order << "\n";
    std::cout << "eigenvalues of alpha([x,y]) (turns):";
    for (const auto& z : r.factor.eigenvalues) std::cout << " " << z.to_string();
    std::cout << "\nprod Delta(z_i) = " << r.factor.product.to_string() << "\n";
    if (r.norm) {
      std::cout << "factorization:";
      for (const auto& pp : r.norm->factorization) std::cout << " " << pp.prime.get_str() << "^" << pp.multiplicity;
      std::cout << "\n";
    }
    std::cout << to_string(r.verdict) << ": " << r.reason << "\n";
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
