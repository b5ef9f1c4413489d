#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "box.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "simplex.hpp"

#include <random>
#include <set>

using namespace nsbox;

TEST_CASE("vertex counts") {
    CHECK(local_vertex_count(Scenario::chsh()) == 16);
    CHECK(local_vertex_count(Scenario{1, 1, 2, 2}) == 4);
    CHECK(local_vertex_count(Scenario{2, 2, 3, 3}) == 81);
}

TEST_CASE("vertex enumeration is complete, unique and lexicographic") {
    CHECK(enumerate_local_vertices(Scenario{1, 1, 2, 2}).size() == 4);
    const auto vertices = enumerate_local_vertices(Scenario::chsh());
    REQUIRE(vertices.size() == 16);
    std::set<std::string> seen;
    for (const BoxPoint& v : vertices) {
        CHECK(validate(v).all_pass());
        seen.insert(box_to_json(v));
    }
    CHECK(seen.size() == 16);

    // Lexicographic (f, g): vertex 0 is f==0, g==0; the g digits vary fastest.
    CHECK(vertices[0].table() == make_local_deterministic({0, 0}, {0, 0}, Scenario::chsh()).table());
    CHECK(vertices[1].table() == make_local_deterministic({0, 0}, {0, 1}, Scenario::chsh()).table());
    CHECK(vertices[4].table() == make_local_deterministic({0, 1}, {0, 0}, Scenario::chsh()).table());
    CHECK(vertices[15].table() == make_local_deterministic({1, 1}, {1, 1}, Scenario::chsh()).table());

    CHECK_THROWS_AS(enumerate_local_vertices(Scenario{4, 4, 8, 8}), Error);
}

TEST_CASE("every chsh vertex scores 1/4 or 3/4, and 3/4 is hit by exactly 8") {
    int winners = 0;
    for (const BoxPoint& v : enumerate_local_vertices(Scenario::chsh())) {
        const Rational value = chsh_value(v);
        const bool valid = value == Rational(1, 4) || value == Rational(3, 4);
        CHECK(valid);
        if (value == Rational(3, 4)) ++winners;
    }
    CHECK(winners == 8);
}

TEST_CASE("no-signaling dimension counts") {
    const NsDimension chsh = ns_dimension(Scenario::chsh());
    CHECK(chsh.full == 12);
    CHECK(chsh.ns == 8);
    const NsDimension big = ns_dimension(Scenario{2, 2, 3, 3});
    CHECK(big.full == 32);
    CHECK(big.ns == 24);
    const NsDimension tiny = ns_dimension(Scenario{1, 1, 2, 2});
    CHECK(tiny.full == 3);
    CHECK(tiny.ns == 3);
}

TEST_CASE("membership: white noise decomposes as the uniform vertex mixture") {
    // Oracle: the uniform mixture over all 16 vertices is exactly white noise,
    // an explicit feasibility proof independent of the solver.
    const auto vertices = enumerate_local_vertices(Scenario::chsh());
    std::vector<Rational> weights(16, Rational(1, 16));
    const BoxPoint mixture = mix(vertices, weights);
    CHECK(mixture.table() == make_white_noise().table());

    const MembershipCertificate cert = classical_membership(make_white_noise());
    CHECK(cert.feasible);
    CHECK(check_certificate(make_white_noise(), cert));
}

TEST_CASE("membership: the E = 1/2 isotropic box is the uniform winner mixture") {
    // Oracle: mixing the 8 vertices with value 3/4 uniformly reproduces the
    // isotropic box at the classical boundary, again independent of the solver.
    const auto vertices = enumerate_local_vertices(Scenario::chsh());
    std::vector<BoxPoint> winners;
    for (const BoxPoint& v : vertices)
        if (chsh_value(v) == Rational(3, 4)) winners.push_back(v);
    REQUIRE(winners.size() == 8);
    const BoxPoint mixture = mix(winners, std::vector<Rational>(8, Rational(1, 8)));
    CHECK(mixture.table() == make_isotropic(Rational(1, 2)).table());

    const MembershipCertificate cert = classical_membership(make_isotropic(Rational(1, 2)));
    CHECK(cert.feasible);
    CHECK(check_certificate(make_isotropic(Rational(1, 2)), cert));
}

TEST_CASE("membership feasible strictly inside and on the boundary") {
    for (int num : {0, 1, 2}) {
        const BoxPoint box = make_isotropic(Rational(num, 4));
        const MembershipCertificate cert = classical_membership(box);
        CHECK(cert.feasible);
        CHECK(check_certificate(box, cert));
        Rational total;
        for (const auto& [index, weight] : cert.weights) {
            CHECK(weight.sign() > 0);
            CHECK(index < 16);
            total += weight;
        }
        CHECK(total == Rational(1));
    }
}

TEST_CASE("membership infeasible beyond the classical facet") {
    // Oracle: the CHSH functional itself separates, since every vertex scores
    // at most 3/4 (verified exhaustively above) while these boxes score more.
    for (const Rational& e : {Rational(51, 100), Rational(3, 5), Rational(1)}) {
        const BoxPoint box = make_isotropic(e);
        CHECK(chsh_value(box) > Rational(3, 4));
        const MembershipCertificate cert = classical_membership(box);
        CHECK_FALSE(cert.feasible);
        CHECK(check_certificate(box, cert));
    }
}

TEST_CASE("membership agrees with the facet on an isotropic grid") {
    for (int i = 0; i <= 24; ++i) {
        const Rational e(i, 24);
        const MembershipCertificate cert = classical_membership(make_isotropic(e));
        CHECK(cert.feasible == (e <= Rational(1, 2)));
        CHECK(check_certificate(make_isotropic(e), cert));
    }
    // Negative-bias isotropic boxes flip correlations; the facet there is
    // E >= -1/2 by the same symmetry.
    CHECK(classical_membership(make_isotropic(Rational(-1, 2))).feasible);
    CHECK_FALSE(classical_membership(make_isotropic(Rational(-3, 5))).feasible);
}

TEST_CASE("membership of any vertex is itself") {
    const auto vertices = enumerate_local_vertices(Scenario::chsh());
    for (std::size_t i = 0; i < vertices.size(); i += 5) {
        const MembershipCertificate cert = classical_membership(vertices[i]);
        CHECK(cert.feasible);
        REQUIRE(cert.weights.size() == 1);
        CHECK(cert.weights[0].first == i);
        CHECK(cert.weights[0].second == Rational(1));
    }
}

TEST_CASE("membership on random mixtures and random ns points") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> pick(0, 15);
    std::uniform_int_distribution<int64_t> wnum(1, 9);

    // Random convex mixtures of vertices must come back feasible.
    const auto vertices = enumerate_local_vertices(Scenario::chsh());
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<BoxPoint> parts;
        std::vector<Rational> weights;
        Rational used;
        for (int j = 0; j < 3; ++j) {
            parts.push_back(vertices[static_cast<std::size_t>(pick(rng))]);
            const Rational w(wnum(rng), 40);
            weights.push_back(w);
            used += w;
        }
        parts.push_back(vertices[static_cast<std::size_t>(pick(rng))]);
        weights.push_back(Rational(1) - used);
        const BoxPoint box = mix(parts, weights);
        const MembershipCertificate cert = classical_membership(box);
        CHECK(cert.feasible);
        CHECK(check_certificate(box, cert));
    }

    // Random PR/noise/vertex blends land on either side; the certificate must
    // be exactly checkable in both cases.
    for (int trial = 0; trial < 12; ++trial) {
        const Rational w(wnum(rng), 10);
        const BoxPoint box =
            mix({make_pr_box(), vertices[static_cast<std::size_t>(pick(rng))]},
                {w, Rational(1) - w});
        const MembershipCertificate cert = classical_membership(box);
        CHECK(check_certificate(box, cert));
        CHECK(cert.feasible == (chsh_value(box) <= Rational(3, 4)));
    }
}

TEST_CASE("membership rejects invalid boxes") {
    const Scenario s = Scenario::chsh();
    std::vector<Rational> signaling(s.table_size(), Rational(0));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) signaling[s.index(x, y, y, 0)] = Rational(1);
    CHECK_THROWS_AS(classical_membership(BoxPoint(s, signaling)), Error);
}

TEST_CASE("membership works beyond the chsh scenario") {
    // A deterministic point in the (2,2,3,3) scenario plus noise stays local.
    const Scenario s{2, 2, 3, 3};
    const BoxPoint det = make_local_deterministic({0, 2}, {1, 1}, s);
    std::vector<Rational> uniform(s.table_size(), Rational(1, 9));
    const BoxPoint noisy = mix({det, BoxPoint(s, uniform)}, {Rational(1, 3), Rational(2, 3)});
    const MembershipCertificate cert = classical_membership(noisy);
    CHECK(cert.feasible);
    CHECK(check_certificate(noisy, cert));
}

TEST_CASE("raw feasibility solver on hand-built systems") {
    // x + y = 1, x - y = 0 has the solution (1/2, 1/2).
    std::vector<std::vector<Rational>> a{{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}};
    const FeasibilityResult ok = solve_equality_feasibility(a, {Rational(1), Rational(0)});
    REQUIRE(ok.feasible);
    CHECK(ok.solution[0] == Rational(1, 2));
    CHECK(ok.solution[1] == Rational(1, 2));

    // x + y = -1 with x, y >= 0 is infeasible; the dual must certify it.
    std::vector<std::vector<Rational>> bad{{Rational(1), Rational(1)}};
    const FeasibilityResult no = solve_equality_feasibility(bad, {Rational(-1)});
    REQUIRE_FALSE(no.feasible);
    REQUIRE(no.dual.size() == 1);
    // y*A <= 0 and y*b > 0
    CHECK(no.dual[0] * Rational(1) <= Rational(0));
    CHECK(no.dual[0] * Rational(-1) > Rational(0));
}
