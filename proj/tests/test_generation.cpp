#include "cutseq/coherence.hpp"
#include "cutseq/generation.hpp"
#include "cutseq/tracer.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cutseq;

namespace {

std::set<std::string> names(const std::vector<PeriodicWord>& ws)
{
    std::set<std::string> s;
    for (const auto& w : ws) s.insert(to_string(w));
    return s;
}

std::string canon(const std::string& w) { return to_string(make_periodic(w)); }

std::set<std::string> canon_set(std::initializer_list<const char*> ws)
{
    std::set<std::string> s;
    for (const char* w : ws) s.insert(canon(w));
    return s;
}

Letters random_path(const TransitionDiagram& d, size_t len, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> L(0, d.n - 1);
    Letters w{static_cast<Letter>(L(rng))};
    while (w.size() < len) {
        std::vector<Letter> next;
        for (int c = 0; c < d.n; ++c)
            if (d.has(w.back(), static_cast<Letter>(c))) next.push_back(static_cast<Letter>(c));
        if (next.empty()) return w;
        w.push_back(next[std::uniform_int_distribution<size_t>(0, next.size() - 1)(rng)]);
    }
    return w;
}

}

TEST_CASE("interpolation words of the octagon")
{
    const auto& t = interpolation_table(4);
    auto w = [&](int k, const char* ab) {
        return format_letters(t.at(k, static_cast<Letter>(ab[0] - 'A'), static_cast<Letter>(ab[1] - 'A')), 4);
    };
    CHECK(w(3, "DB") == "BCC");
    CHECK(w(3, "AA") == "DBCCBD");
    CHECK(w(3, "AB") == "DBCC");
    CHECK(w(3, "BA") == "CCBD");
    CHECK(w(3, "CD") == "B");
    CHECK(w(3, "BD") == "CCB");
    CHECK(w(6, "BA") == "D");
    CHECK(w(6, "AB") == "D");
    CHECK(w(6, "DD") == "BCCB");
    CHECK(w(6, "AC") == "DBC");
    CHECK(w(6, "CA") == "CBD");
    CHECK(w(6, "CD") == "CB");
    CHECK(w(6, "DC") == "BC");
}

TEST_CASE("interpolation keeps exactly the vertex letters")
{
    for (int n = 3; n <= 8; ++n) {
        const auto& t = interpolation_table(n);
        auto d0 = diagram_zero(n);
        for (int k = 1; k < 2 * n; ++k) {
            auto dk = build_diagram(k, n);
            for (auto [a, b] : dk.edges())
                for (auto [c, e] : dk.edges()) {
                    if (b != c) continue;
                    Letters path{a};
                    const auto& x = t.at(k, a, b);
                    path.insert(path.end(), x.begin(), x.end());
                    path.push_back(b);
                    const auto& y = t.at(k, b, e);
                    path.insert(path.end(), y.begin(), y.end());
                    path.push_back(e);
                    CHECK(admissible_in(d0, path, false));
                    CHECK(derive_letters(path) == Letters{b});
                }
        }
    }
}

TEST_CASE("generation examples")
{
    CHECK(to_string(generate(3, 0, make_word("CDBAABDBD"))) == "CBDBCCBCCBDADBCCBDADBCCBCCBDBCCBCCBD");
    CHECK(generate(6, 0, make_periodic("BA")) == make_periodic("BDAD"));
    CHECK(generate(6, 1, make_periodic("BA")) == make_periodic("CADA"));
    CHECK_THROWS_AS(generate(3, 0, make_word("AC")), InadmissibleInput);
    CHECK_THROWS_AS(generate(0, 0, make_word("AD")), IndexOutOfRange);
}

TEST_CASE("seeds and families of the octagon")
{
    CHECK(names(periodic_seeds(6, 4)) == canon_set({"BA", "AC", "CD", "D"}));
    for (int k = 0; k < 8; ++k) {
        auto s = periodic_seeds(k, 4);
        CHECK(s.size() == 4);
        for (const auto& u : s) CHECK(admissible_in(build_diagram(k, 4), u.period(), true));
    }
    CHECK(names(periodic_family({6}, 4)) == names(periodic_seeds(6, 4)));
    CHECK(names(periodic_family({0, 1, 6}, 4)) ==
          canon_set({"CBDADADB", "DADBCBCCBCCBCBDA", "BCCBCBDADBCBCC", "ADBCBCCBCBD"}));
    CHECK_THROWS_AS(periodic_family({0, 0}, 4), InvalidPrefix);
}

TEST_CASE("families are the cylinder words of the cylinder end directions")
{
    auto poly = build_polygon<Q2>(4);
    std::mt19937_64 rng(1);
    for (auto pre : std::vector<std::vector<int>>{{6}, {0, 6}, {1, 6}, {0, 1, 6}, {2, 7, 3}, {5, 3, 4, 2}}) {
        std::vector<int> rest(pre.begin(), pre.end() - 1);
        std::set<PeriodicWord> seen;
        for (int e : {pre.back(), pre.back() + 1}) {
            Dir<Q2> d = pull_back(rest, 4, angle_dir<Q2>(e, 8));
            for (int t = 0; t < 60; ++t) {
                try {
                    auto st = random_interior_point(poly, rng);
                    auto p = detect_period(poly, st, d.v, TraceConfig{0, 5000, false});
                    if (!p) continue;
                    seen.insert(PeriodicWord(4, trace(poly, st, d.v, TraceConfig{0, *p, false}).word.letters));
                } catch (const VertexHit&) {
                }
            }
        }
        auto fam = periodic_family(pre, 4);
        CHECK(std::set<PeriodicWord>(fam.begin(), fam.end()) == seen);
    }
}

TEST_CASE("derivation undoes generation")
{
    std::mt19937_64 rng(1);
    for (int n : {3, 4, 5, 6}) {
        for (int k = 1; k < 2 * n; ++k) {
            auto dk = build_diagram(k, n);
            for (int t = 0; t < 50; ++t) {
                // a window loses its end letters, whose sandwich status is unknown
                FiniteWord w{n, random_path(dk, 12, rng)};
                FiniteWord g = generate(k, 0, w);
                CHECK(derive_letters(g.letters) == Letters(w.letters.begin() + 1, w.letters.end() - 1));
            }
        }
    }
}

TEST_CASE("factor enumeration against a long trace")
{
    auto it = itinerary(dir_from_theta(0.9L), 4, 40);
    auto f = enumerate_factors(it, 4, 10, std::nullopt);
    CHECK(f.factors.size() == 31);
    auto one = enumerate_factors(it, 4, 1, std::nullopt);
    CHECK(one.factors.size() == 4);
    auto poly = build_polygon<Real>(4);
    std::mt19937_64 rng(2);
    auto w = trace(poly, random_interior_point(poly, rng), {std::cos(0.9L), std::sin(0.9L)}, TraceConfig{1e-9L, 100000, false}).word;
    CHECK(f.factors == factor_set(w.letters, 10));
}

TEST_CASE("factor enumeration at a terminating direction")
{
    auto f = enumerate_factors(ProjectiveDirection::exact(angle_dir<Q2>(1, 8)), 4, 6, std::nullopt);
    std::set<Letters> seeds;
    for (const auto& u : periodic_seeds(1, 4)) {
        auto s = factor_set(u.period(), 6, true);
        seeds.insert(s.begin(), s.end());
    }
    CHECK(f.factors == seeds);
    auto poly = build_polygon<Q2>(4);
    auto w = trace(poly, {Q2(mpq_class(1, 7)), Q2(mpq_class(-1, 5))}, angle_dir<Q2>(1, 8).v, TraceConfig{0, 200, false}).word;
    for (const auto& x : factor_set(w.letters, 6)) CHECK(seeds.count(x) == 1);
}
