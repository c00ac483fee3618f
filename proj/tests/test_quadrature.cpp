#include <catch2/catch_amalgamated.hpp>

#include "sbm/quadrature.hpp"

using namespace sbm::quad;
using Catch::Matchers::WithinAbs;

TEST_CASE("gauss-hermite moments across sizes") {
    for (int n : {3, 20, 64, 129, 201, 401, 705, 1217}) {
        const auto gh = gauss_hermite(n);
        double sw = 0.0;
        for (double w : gh.weights) sw += w;
        CHECK_THAT(sw, WithinAbs(1.7724538509055160273, 1e-12)); // sqrt(pi)
        CHECK_THAT(normal_expectation([](double) { return 1.0; }, gh), WithinAbs(1.0, 1e-13));
        CHECK_THAT(normal_expectation([](double z) { return z * z; }, gh), WithinAbs(1.0, 1e-12));
        if (n >= 20) {
            CHECK_THAT(normal_expectation([](double z) { return z * z * z * z; }, gh), WithinAbs(3.0, 1e-11));
            // E[e^Z cos Z] = Re E[e^{(1+i)Z}] = Re e^{(1+i)^2/2} = cos 1
            CHECK_THAT(normal_expectation([](double z) { return std::exp(z) * std::cos(z); }, gh),
                       WithinAbs(std::cos(1.0), 1e-10));
        }
    }
}

TEST_CASE("nodes are symmetric and sorted") {
    for (int n : {64, 201}) {
        const auto gh = gauss_hermite(n);
        for (std::size_t i = 0; i + 1 < gh.nodes.size(); ++i) CHECK(gh.nodes[i] < gh.nodes[i + 1]);
        for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
            CHECK_THAT(gh.nodes[i] + gh.nodes[gh.nodes.size() - 1 - i], WithinAbs(0.0, 1e-14));
            CHECK_THAT(gh.weights[i] - gh.weights[gh.nodes.size() - 1 - i], WithinAbs(0.0, 0.0));
        }
    }
}

TEST_CASE("effective node count scales with mu and respects the floor") {
    CHECK(effective_nodes(0.0, 201) >= 201);
    CHECK(effective_nodes(1.0, 401) >= 401);
    CHECK(effective_nodes(50.0, 201) >= 12 * 50);
    CHECK(effective_nodes(50.0, 201) == effective_nodes(50.0, 101)); // escalation dominates
    CHECK(effective_nodes(3.0, 201) % 2 == 1);
}
