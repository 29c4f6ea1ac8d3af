#include "cutseq/farey.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cutseq;

namespace {

Dir<Q2> cot(const Q2& mu) { return Dir<Q2>{{mu, Q2(1)}}; }

}

TEST_CASE("Farey map on special directions")
{
    auto a = farey_apply(angle_dir<Q2>(1, 8), 4);
    CHECK(a.sector == 1);
    CHECK(a.image == angle_dir<Q2>(1, 8));
    auto b = farey_apply(angle_dir<Q2>(1, 4), 4);
    CHECK(b.sector == 2);
    CHECK(b.image.is_pi_angle());
    auto c = farey_apply(Dir<Q2>::pi_angle(), 4);
    CHECK(c.sector == 7);
    CHECK(c.image.is_pi_angle());
}

TEST_CASE("itineraries")
{
    CHECK(itinerary(angle_dir<Q2>(1, 8), 4, 5) == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(itinerary(Dir<Q2>::pi_angle(), 4, 5) == std::vector<int>{7, 7, 7, 7, 7});
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> th(0.01, 3.13);
    for (int t = 0; t < 50; ++t) {
        auto s = itinerary(dir_from_theta(th(rng)), 4, 50);
        for (size_t k = 1; k < s.size(); ++k) CHECK(s[k] != 0);
    }
}

TEST_CASE("floating itinerary agrees with exact")
{
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 17);
    for (int t = 0; t < 40; ++t) {
        Q2 mu(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
        auto ex = itinerary(cot(mu), 4, 8);
        auto fl = itinerary(dir_from_theta(cot(mu).theta()), 4, 8);
        // the orbit may land on a sector boundary where rounding decides
        size_t agree = 0;
        while (agree < ex.size() && ex[agree] == fl[agree]) ++agree;
        if (agree < ex.size()) {
            auto r = is_terminating(ProjectiveDirection::from_cot(mu), 4, static_cast<int>(agree) + 1);
            CHECK(r.terminating);
        }
    }
}

TEST_CASE("sector intervals")
{
    auto s0 = sector_interval<Q2>({0}, 4);
    CHECK(s0.lo.is_zero_angle());
    CHECK(s0.hi == angle_dir<Q2>(1, 8));
    // endpoints mu = 1 and 1+sqrt2 of sector 1 under gamma
    auto s01 = sector_interval<Q2>({0, 1}, 4);
    Q2 a = s01.lo.v.x, b = s01.hi.v.x;
    auto g = veech_elements<Q2>(4).gamma;
    auto img = [&](const Q2& mu) { return (g.m11 * mu + g.m12) / (g.m21 * mu + g.m22); };
    std::set<Q2> want{img(Q2(1)), img(Q2(1, 1))};
    CHECK(std::set<Q2>{a, b} == want);
    CHECK(std::set<Q2>{a, b} == std::set<Q2>{Q2(1, 1), Q2(1, 2)});
    auto s017 = sector_interval<Q2>({0, 1, 7}, 4);
    CHECK(s01.contains(s017.lo));
    CHECK(s01.contains(s017.hi));
    CHECK_THROWS_AS(sector_interval<Q2>({0, 0}, 4), InvalidPrefix);
}

TEST_CASE("nested cylinders contain the direction")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> th(0.01, 3.13);
    for (int t = 0; t < 30; ++t) {
        Real x = th(rng);
        auto s = itinerary(dir_from_theta(x), 4, 12);
        Real prev = 10;
        for (size_t d = 1; d <= s.size(); ++d) {
            auto iv = sector_interval<Real>({s.begin(), s.begin() + static_cast<long>(d)}, 4);
            CHECK(iv.lo.theta() <= x + 1e-12L);
            CHECK(iv.hi.theta() >= x - 1e-12L);
            CHECK(iv.width() <= prev + 1e-15L);
            prev = iv.width();
        }
    }
}

TEST_CASE("expansions")
{
    auto p1 = direction_from_expansion<Q2>(Expansion{{}, 1}, 60, 4);
    CHECK(p1.is_point());
    CHECK(p1.lo == angle_dir<Q2>(1, 8));
    auto p7 = direction_from_expansion<Q2>(Expansion{{}, 7}, 60, 4);
    CHECK(p7.lo.is_pi_angle());
    // a sector boundary reached from either side lands on the same fixed point
    for (int s : {3, 5, 7}) {
        auto a = direction_from_expansion<Q2>(Expansion{{0, 2, s}, 1}, 60, 4);
        auto b = direction_from_expansion<Q2>(Expansion{{0, 2, s - 1}, 1}, 60, 4);
        CHECK(a.lo == b.lo);
        CHECK(itinerary(a.lo, 4, 6) == std::vector<int>{0, 2, s, 1, 1, 1});
    }
    for (int s : {2, 4, 6}) {
        auto a = direction_from_expansion<Q2>(Expansion{{0, 3, s}, 7}, 60, 4);
        auto b = direction_from_expansion<Q2>(Expansion{{0, 3, s - 1}, 7}, 60, 4);
        CHECK(a.lo == b.lo);
        CHECK(itinerary(a.lo, 4, 6) == std::vector<int>{0, 3, s, 7, 7, 7});
    }
    CHECK(Expansion{{0, 3}, 1}.is_sector_sequence(4));
    CHECK_FALSE(Expansion{{0, 2}, 1}.is_sector_sequence(4));
    CHECK(Expansion{{0, 2}, 7}.is_sector_sequence(4));
    CHECK_FALSE(Expansion{{0, 3}, 7}.is_sector_sequence(4));
    CHECK(Expansion{{0}, 7}.is_sector_sequence(4));
    CHECK_FALSE(Expansion{{1, 0}, std::nullopt}.in_s_star(4));
}

TEST_CASE("terminating directions")
{
    auto r = is_terminating(ProjectiveDirection::from_cot(Q2(2, 1)), 4, 60);
    CHECK(r.terminating);
    CHECK(r.proof);
    auto pi8 = is_terminating(ProjectiveDirection::exact(angle_dir<Q2>(1, 8)), 4, 60);
    CHECK(pi8.terminating);
    CHECK(pi8.depth == 0);
    auto gen = is_terminating(ProjectiveDirection::approx(1.0L), 4, 60);
    CHECK_FALSE(gen.terminating);
}

TEST_CASE("square Farey map")
{
    CHECK(square_farey(mpq_class(1, 2)) == 1);
    CHECK(square_farey(mpq_class(0)) == 0);
    CHECK(static_cast<double>(square_t(kPi / 4)) == Catch::Approx(0.5).margin(1e-15));
    CHECK(square_derive("ABBBABBBBABBBABBBABBBBA") == "ABBABBBABBABBABBBA");
    CHECK_THROWS(square_derive("AABB"));
}
