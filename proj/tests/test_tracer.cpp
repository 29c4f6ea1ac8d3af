#include "cutseq/tracer.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <regex>

using namespace cutseq;

TEST_CASE("vertical trajectory crosses only A")
{
    auto p = build_polygon<Q2>(4);
    auto r = trace(p, {Q2(0), Q2(mpq_class(1, 100))}, {Q2(0), Q2(1)}, TraceConfig{0, 10, true});
    CHECK(to_string(r.word) == "AAAAAAAAAA");
    auto f = trace(build_polygon<Real>(4), {0, 0.01L}, {std::cos(kPi / 2), std::sin(kPi / 2)}, TraceConfig{1e-9L, 10, true});
    CHECK(to_string(f.word) == "AAAAAAAAAA");
}

TEST_CASE("sector zero transitions follow diagram zero")
{
    auto p = build_polygon<Real>(4);
    std::mt19937_64 rng(5);
    auto r = trace(p, random_interior_point(p, rng), {std::cos(0.2L), std::sin(0.2L)}, TraceConfig{1e-9L, 1000, true});
    auto d0 = build_diagram(0, 4);
    for (size_t k = 0; k + 1 < r.word.size(); ++k) CHECK(d0.has(r.word[k], r.word[k + 1]));
    for (const auto& c : r.log) {
        CHECK(c.s > 0);
        CHECK(c.s < 1);
        // exit point is on its side
        Vec2<Real> rel = c.point - p.vertex(c.side);
        CHECK(static_cast<double>(std::fabs(cross(p.edge(c.side), rel))) < 1e-12);
    }
}

TEST_CASE("aiming at a vertex is reported")
{
    auto p = build_polygon<Q2>(4);
    // from the centre straight at vertex 2 (direction pi/8 below the horizontal side pair)
    Vec2<Q2> v = p.vertex(2);
    CHECK_THROWS_AS(trace(p, {Q2(0), Q2(0)}, v, TraceConfig{0, 10, false}), VertexHit);
    auto pr = build_polygon<Real>(4);
    Vec2<Real> vr = to_real(v);
    CHECK_THROWS_AS(trace(pr, {0, 0}, vr, TraceConfig{1e-9L, 10, false}), VertexHit);
}

TEST_CASE("periodic and generic directions")
{
    auto p = build_polygon<Q2>(4);
    Vec2<Q2> start{Q2(mpq_class(1, 7)), Q2(mpq_class(-2, 9))};
    CHECK(detect_period(p, start, angle_dir<Q2>(1, 8).v, TraceConfig{0, 1000, false}).has_value());
    CHECK(detect_period(p, start, Vec2<Q2>{Q2(2, 1), Q2(1)}, TraceConfig{0, 10000, false}).has_value());
    auto pr = build_polygon<Real>(4);
    CHECK_FALSE(detect_period(pr, {0.1L, -0.2L}, {std::cos(1.0L), std::sin(1.0L)}, TraceConfig{1e-9L, 100000, false}).has_value());
}

TEST_CASE("exact and floating traces agree")
{
    auto p = build_polygon<Q2>(4);
    auto pr = build_polygon<Real>(4);
    Vec2<Q2> start{Q2(mpq_class(3, 11)), Q2(mpq_class(1, 13))};
    Vec2<Q2> dir{Q2(mpq_class(5, 3), mpq_class(1, 7)), Q2(1)};
    auto a = trace(p, start, dir, TraceConfig{0, 300, false});
    auto b = trace(pr, to_real(start), to_real(dir), TraceConfig{1e-9L, 300, false});
    CHECK(a.word == b.word);
}

TEST_CASE("svg output")
{
    auto p = build_polygon<Real>(4);
    std::mt19937_64 rng(9);
    Vec2<Real> s = random_interior_point(p, rng);
    auto one = trace(p, s, {std::cos(0.7L), std::sin(0.7L)}, TraceConfig{1e-9L, 1, true});
    std::string svg = plot_svg(p, s, one.log);
    CHECK(svg.find("<path") != std::string::npos);
    auto lines = [](const std::string& t) {
        size_t c = 0;
        for (size_t k = t.find("<line"); k != std::string::npos; k = t.find("<line", k + 1)) ++c;
        return c;
    };
    CHECK(lines(svg) == 1);
    auto many = trace(p, s, {std::cos(0.7L), std::sin(0.7L)}, TraceConfig{1e-9L, 100, true});
    svg = plot_svg(p, s, many.log);
    CHECK(lines(svg) == 100);
    std::regex num("(x1|y1|x2|y2)=\"(-?[0-9.]+)\"");
    double lim = static_cast<double>(circumradius(4)) * 200.0 + 1e-6;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), num); it != std::sregex_iterator(); ++it)
        CHECK(std::fabs(std::stod((*it)[2])) <= lim);
    CHECK_THROWS(plot_svg(p, s, {}));
}

TEST_CASE("start must be inside")
{
    auto p = build_polygon<Real>(4);
    CHECK_THROWS(trace(p, {5, 5}, {1, 0}, TraceConfig{}));
}
