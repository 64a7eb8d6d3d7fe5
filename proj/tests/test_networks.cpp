#include <catch2/catch_amalgamated.hpp>

#include "support/test_support.hpp"

using namespace noneq;
using Catch::Approx;

TEST_CASE("mass conservation is enforced at construction", "[networks]") {
    CHECK_NOTHROW(testsup::network_ab());
    CHECK_NOTHROW(testsup::network_2ab());

    Eigen::MatrixXi fwd(1, 2), bwd(1, 2);
    fwd << 1, 0;
    bwd << 0, 1;
    Vector masses(2);
    masses << 0.018, 0.020; // A <-> B with mismatched masses
    try {
        ReactionNetwork net(fwd, bwd, masses,
                            RateLaw::linear(Matrix::Identity(1, 1)), {"A", "B"});
        FAIL("expected ConfigurationError");
    } catch (const ConfigurationError& e) {
        CHECK(std::string(e.what()).find("A <-> B") != std::string::npos);
        CHECK(std::string(e.what()).find("mass conservation") != std::string::npos);
    }
}

TEST_CASE("affinities are minus the stoichiometric pairing", "[networks]") {
    const auto net = testsup::network_ab();
    CHECK(affinities(net, Vector::Zero(2)).isZero(0.0));

    Vector mu(2);
    mu << 3.0, 1.0; // nu = (-1, +1): A = -(-3 + 1) = 2
    CHECK(affinities(net, mu)[0] == 2.0);

    mu << 5.0, 5.0; // in the kernel of nu
    CHECK(affinities(net, mu)[0] == 0.0);

    CHECK_THROWS_AS(affinities(net, Vector::Zero(3)), DimensionMismatch);
}

TEST_CASE("linear rate law keeps J.A nonnegative", "[networks]") {
    const auto net = testsup::network_ab(2.5e-3);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    ThermoPhaseState s; // unused by the linear law
    for (int i = 0; i < 200; ++i) {
        Vector mu(2);
        mu << u(rng), u(rng);
        const Vector A = affinities(net, mu);
        const Vector J = reaction_rates(net, s, mu);
        CHECK(J.dot(A) >= 0.0);
        CHECK(J[0] == Approx(2.5e-3 * A[0]).epsilon(1e-15));
    }
    CHECK(reaction_rates(net, s, Vector::Zero(2)).isZero(0.0));
}

TEST_CASE("mass action law vanishes at the detailed-balance point", "[networks]") {
    Eigen::MatrixXi fwd(1, 2), bwd(1, 2);
    fwd << 1, 0;
    bwd << 0, 1;
    Vector masses(2);
    masses << 0.018, 0.018;
    const ReactionNetwork net(
        fwd, bwd, masses,
        RateLaw::mass_action(Vector::Ones(1), Vector::Ones(1), 1e-3),
        {"A", "B"});
    ThermoPhaseState s;
    s.N = Vector::Constant(2, 0.01); // c_A = c_B
    s.W = Vector::Zero(2);
    CHECK(reaction_rates(net, s, Vector::Zero(2))[0] == 0.0);

    s.N[0] = -0.01;
    CHECK_THROWS_AS(reaction_rates(net, s, Vector::Zero(2)), DomainError);
}

TEST_CASE("species rates conserve mass exactly", "[networks]") {
    const auto net = testsup::network_2ab();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Vector J = Vector::Constant(1, u(rng));
        const Vector Ndot = species_rates(net, J);
        CHECK(std::abs(net.masses().dot(Ndot)) <= 1e-18);
    }
}

TEST_CASE("transfer fluxes are antisymmetric and conservative", "[networks]") {
    Matrix G = Matrix::Zero(3, 3);
    G(0, 1) = 2.0;
    G(1, 2) = 3.0;
    G(0, 2) = 0.5;
    const auto net = TransferNetwork::constant(G);
    ThermoPhaseState s;

    Vector mu(3);
    mu << 5.0, 2.0, -1.0;
    const auto f = net.fluxes(s, mu);
    CHECK(f.pairs.size() == 3);
    CHECK(f.flow(0, 1) == Approx(2.0 * 3.0));
    CHECK(f.flow(1, 0) == -f.flow(0, 1));
    CHECK(f.flow(1, 2) == Approx(3.0 * 3.0));
    CHECK(f.flow(0, 2) == Approx(0.5 * 6.0));

    const Vector Ndot = net.mole_rates(f);
    CHECK(std::abs(Ndot.sum()) <= 1e-14);
    CHECK(net.entropy_production(f, mu, 300.0) >= 0.0);

    // equal potentials: no thermodynamic force
    const auto f0 = net.fluxes(s, Vector::Constant(3, 4.0));
    CHECK(f0.values.isZero(0.0));
    CHECK(net.mole_rates(f0).isZero(0.0));
}

TEST_CASE("two-compartment flux points down the potential gradient",
          "[networks]") {
    Matrix G = Matrix::Zero(2, 2);
    G(0, 1) = 0.25;
    const auto net = TransferNetwork::constant(G);
    ThermoPhaseState s;
    Vector mu(2);
    mu << 7.0, 3.0; // mu_1 > mu_2: matter flows 1 -> 2
    const auto f = net.fluxes(s, mu);
    const Vector Ndot = net.mole_rates(f);
    CHECK(Ndot[1] == Approx(0.25 * 4.0));
    CHECK(Ndot[0] == -Ndot[1]);
    CHECK(Ndot.sum() == 0.0); // exact pairwise cancellation
    CHECK(net.entropy_production(f, mu, 2.0) == Approx(0.25 * 16.0 / 2.0));
}

TEST_CASE("transfer coefficients must be nonnegative", "[networks]") {
    Matrix G = Matrix::Zero(2, 2);
    G(0, 1) = -1.0;
    CHECK_THROWS_AS(TransferNetwork::constant(G), ConfigurationError);

    const auto net = TransferNetwork(
        2, [](const ThermoPhaseState& s) {
            Matrix G = Matrix::Zero(2, 2);
            G(0, 1) = s.S; // goes negative with S
            return G;
        });
    ThermoPhaseState s;
    s.S = -1.0;
    CHECK_THROWS_AS(net.coefficients(s), IndefiniteCoefficient);
}
