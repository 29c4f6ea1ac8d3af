#include "cutseq/farey.hpp"
#include "cutseq/geometry.hpp"
#include "cutseq/polygon.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cutseq;

TEST_CASE("Veech elements of the octagon")
{
    auto v = veech_elements<Q2>(4);
    Q2 c(1, 1);
    CHECK(v.gamma == Mat2<Q2>{-1, c * 2, 0, 1});
    CHECK(v.sigma == Mat2<Q2>{1, c * 2, 0, 1});
    CHECK(v.gamma * v.gamma == Mat2<Q2>::identity());
    Mat2<Q2> nu7 = isometry_nu<Q2>(7, 4);
    CHECK(nu7 == Mat2<Q2>{-1, 0, 0, 1});
    CHECK(nu7 * nu7 == Mat2<Q2>::identity());
    CHECK(v.gamma * nu7 == v.sigma);
    CHECK(v.gamma.det() == Q2(-1));
    CHECK(v.sigma.det() == Q2(1));
    CHECK(static_cast<double>(std::cos(kPi / 8) / std::sin(kPi / 8)) == Catch::Approx(c.to_ld()).epsilon(1e-12));
}

TEST_CASE("nu matrices")
{
    CHECK(isometry_nu<Q2>(0, 4) == Mat2<Q2>::identity());
    Q2 h(0, mpq_class(1, 2));
    CHECK(isometry_nu<Q2>(1, 4) == Mat2<Q2>{h, h, h, -h});
    for (int i = 0; i < 8; ++i) {
        Mat2<Q2> m = isometry_nu<Q2>(i, 4);
        Q2 d = m.det();
        CHECK((d == Q2(1) || d == Q2(-1)));
        // nu_i carries sector i onto sector 0
        Real mid = kPi * (2 * i + 1) / 16;
        Real img = apply(to_real(m), dir_from_theta(mid)).theta();
        CHECK(static_cast<double>(img) == Catch::Approx(static_cast<double>(kPi / 16)).margin(1e-12));
    }
}

TEST_CASE("Moebius action on inverse slopes")
{
    auto g = veech_elements<Q2>(4).gamma;
    auto fixed = moebius_apply(g, ProjectiveDirection::from_cot(Q2(1, 1)));
    CHECK(fixed.exact_dir() == Dir<Q2>{{Q2(1, 1), Q2(1)}});
    auto img = moebius_apply(g, ProjectiveDirection::from_cot(Q2(1)));
    CHECK(img.exact_dir() == Dir<Q2>{{Q2(1, 2), Q2(1)}});
    auto id = moebius_apply(Mat2<Q2>::identity(), ProjectiveDirection::from_cot(Q2(3, -1)));
    CHECK(id.exact_dir().v.x == Q2(3, -1));
    CHECK_THROWS_AS(moebius_apply(Mat2<Q2>{1, 2, 2, 4}, ProjectiveDirection::from_cot(Q2(1))), SingularMatrix);
}

TEST_CASE("floating and exact directions agree")
{
    for (int k = 0; k <= 8; ++k) {
        Real a = angle_dir<Q2>(k, 8).theta();
        Real b = angle_dir<Real>(k, 8).theta();
        CHECK(static_cast<double>(a) == Catch::Approx(static_cast<double>(kPi * k / 8)).margin(1e-15));
        CHECK(static_cast<double>(b) == Catch::Approx(static_cast<double>(a)).margin(1e-15));
    }
    CHECK(Dir<Q2>::zero_angle() < angle_dir<Q2>(1, 8));
    CHECK(angle_dir<Q2>(7, 8) < Dir<Q2>::pi_angle());
    CHECK_THROWS(ProjectiveDirection::approx(4.0L));
}

TEST_CASE("matrix inverse")
{
    Mat2<Q2> m{Q2(1, 1), 2, Q2(0, 1), -1};
    CHECK(m * m.inverse() == Mat2<Q2>::identity());
    CHECK_THROWS_AS((Mat2<Q2>{1, 1, 1, 1}).inverse(), SingularMatrix);
}
