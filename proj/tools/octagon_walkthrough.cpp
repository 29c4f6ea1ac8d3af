// Traces a trajectory on the regular octagon, recovers its direction from
// the cutting sequence and compares with the Farey itinerary.
#include "cutseq/cutseq.hpp"

#include <iostream>

int main()
{
    using namespace cutseq;
    const Real theta = 0.9L;
    auto poly = build_polygon<Real>(4);
    std::mt19937_64 rng(42);
    auto r = trace(poly, random_interior_point(poly, rng), {std::cos(theta), std::sin(theta)},
                   TraceConfig{1e-9L, 20000, false});
    std::cout << "first crossings: " << to_string(r.word).substr(0, 40) << "...\n";

    auto tr = renormalize(WordWindow{r.word}, 6);
    std::cout << "diagrams:";
    for (int d : tr.diagrams) std::cout << ' ' << d;
    std::cout << "\nitinerary:";
    for (int s : itinerary(dir_from_theta(theta), 4, 6)) std::cout << ' ' << s;

    auto iv = sector_interval<Real>(tr.diagrams, 4);
    std::cout << "\ntheta in [" << static_cast<double>(iv.lo.theta()) << ", " << static_cast<double>(iv.hi.theta())
              << "]\n";

    auto g = generate(3, 0, make_word("CDBAABDBD"));
    std::cout << "g(3->0, CDBAABDBD) = " << to_string(g) << '\n';
}
