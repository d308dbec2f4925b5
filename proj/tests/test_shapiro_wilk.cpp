#include "drgm/json_io.hpp"
#include "drgm/shapiro_wilk.hpp"
#include "temp_dir.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace drgm;

namespace {

Json reference() { return Json::parse(testing::read_file(testing::fixture("shapiro_reference.json"))); }

}  // namespace

TEST_CASE("W and p match the reference implementation") {
    const Json ref = reference();
    REQUIRE(ref["samples"].size() >= 5);
    for (const Json& s : ref["samples"]) {
        const auto values = s["values"].get<std::vector<double>>();
        CAPTURE(s["name"].get<std::string>());
        const ShapiroWilkResult r = shapiro_wilk(values);
        CHECK(std::abs(r.w - s["w"].get<double>()) < 1e-4);
        CHECK(std::abs(r.p_value - s["p"].get<double>()) < 1e-4);
    }
}

TEST_CASE("published worked example") {
    const Json ref = reference();
    bool found = false;
    for (const Json& s : ref["samples"]) {
        if (s["name"] != "royston_n25") continue;
        found = true;
        const ShapiroWilkResult r = shapiro_wilk(s["values"].get<std::vector<double>>());
        CHECK(r.w == doctest::Approx(0.83467).epsilon(1e-5));
        CHECK(r.p_value == doctest::Approx(0.000914).epsilon(1e-2));
    }
    CHECK(found);
}

TEST_CASE("invariant under order, shift and positive scale") {
    std::mt19937_64 rng(3);
    std::gamma_distribution<double> g(2.0, 1.5);
    std::vector<double> x(137);
    for (double& v : x) v = g(rng);
    const ShapiroWilkResult base = shapiro_wilk(x);

    std::vector<double> shuffled = x;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(shapiro_wilk(shuffled).w == doctest::Approx(base.w).epsilon(1e-12));

    std::vector<double> affine = x;
    for (double& v : affine) v = 1000.0 + 3.5 * v;
    const ShapiroWilkResult moved = shapiro_wilk(affine);
    CHECK(moved.w == doctest::Approx(base.w).epsilon(1e-9));
    CHECK(moved.p_value == doctest::Approx(base.p_value).epsilon(1e-6));
}

TEST_CASE("results stay in range") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0, 1);
    for (int size : {3, 4, 7, 11, 12, 50, 500, 5000}) {
        std::vector<double> x(size);
        for (double& v : x) v = n(rng);
        const ShapiroWilkResult r = shapiro_wilk(x);
        CHECK(r.w > 0.0);
        CHECK(r.w <= 1.0);
        CHECK(r.p_value >= 0.0);
        CHECK(r.p_value <= 1.0);
    }
}

TEST_CASE("sample size and spread limits") {
    CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1.0, 2.0}), Error);
    CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(5001, 0.0)), Error);
    CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{4.0, 4.0, 4.0, 4.0}), Error);
}

TEST_CASE("normal quantile") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
    CHECK(normal_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-14));
    CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-12));
}
