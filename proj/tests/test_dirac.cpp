#include <catch2/catch_amalgamated.hpp>

#include "support/test_support.hpp"

using namespace noneq;
using Catch::Approx;

namespace {

ThermoPhaseState reaction_initial(const ReactionMixtureParams& P) {
    ThermoPhaseState s;
    s.N = Vector(2);
    s.N << 0.02, 0.005;
    s.W = Vector::Zero(2);
    s.nu_ext = Vector::Zero(1);
    s.S = reaction_entropy_at_temperature(P, 300.0, s.N);
    return s;
}

} // namespace

TEST_CASE("total Hamiltonian reduces to the base on the constraint set",
          "[dirac]") {
    const auto P = testsup::reaction_defaults();
    const auto energy = reaction_mixture_energy(P);
    const auto total = reaction_total_hamiltonian(energy);
    const auto s = reaction_initial(P);

    Vector q(3);
    q << s.N[0], s.N[1], s.S;
    const Vector p0 = Vector::Zero(3);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        Vector lambda(3);
        lambda << u(rng), u(rng), u(rng);
        CHECK(total.value(q, p0, lambda) == total.base(q, p0));
    }

    // generalized energy matches H~ on the graph of the Legendre transform
    for (int i = 0; i < 50; ++i) {
        Vector v(3);
        v << u(rng), u(rng), u(rng);
        CHECK(total.generalized_energy(q, v, p0) == Approx(total.base(q, p0)));
    }
}

TEST_CASE("dirac_reduce rejects unsupported structures", "[dirac]") {
    const auto P = testsup::reaction_defaults();
    const auto energy = reaction_mixture_energy(P);
    const auto net = testsup::network_2ab();
    const auto probe = reaction_initial(P);

    // missing constraint
    TotalHamiltonian partial = reaction_total_hamiltonian(energy);
    partial.constraints.items.pop_back();
    CHECK_THROWS_AS(dirac_reduce(partial, net, energy, probe),
                    UnsupportedConstraintStructure);

    // general (non-momentum) constraint
    TotalHamiltonian general = reaction_total_hamiltonian(energy);
    general.constraints.items[0].form = PrimaryConstraint::Form::General;
    general.constraints.items[0].value = [](const Vector& q, const Vector& p) {
        return p[0] - q[0];
    };
    CHECK_THROWS_AS(dirac_reduce(general, net, energy, probe),
                    UnsupportedConstraintStructure);

    // base Hamiltonian leaking momentum dependence
    TotalHamiltonian leaky = reaction_total_hamiltonian(energy);
    const auto base = leaky.base;
    leaky.base = [base](const Vector& q, const Vector& p) {
        return base(q, p) + 0.5 * p.squaredNorm();
    };
    CHECK_THROWS_AS(dirac_reduce(leaky, net, energy, probe),
                    UnsupportedConstraintStructure);

    // duplicated momentum index
    TotalHamiltonian dup = reaction_total_hamiltonian(energy);
    dup.constraints.items[1] = PrimaryConstraint::momentum(0);
    CHECK_THROWS_AS(dirac_reduce(dup, net, energy, probe),
                    UnsupportedConstraintStructure);
}

TEST_CASE("reduced field equals the direct reaction field exactly", "[dirac]") {
    const auto P = testsup::reaction_defaults();
    const auto energy = reaction_mixture_energy(P);
    const auto net = testsup::network_2ab();
    const auto probe = reaction_initial(P);
    const auto red = dirac_reduce(reaction_total_hamiltonian(energy), net,
                                  energy, probe);

    ReactionFlow direct(net, energy);
    std::mt19937_64 rng(37);
    for (int i = 0; i < 100; ++i) {
        ThermoPhaseState s = testsup::random_reaction_state(P, rng);
        s.nu_ext = Vector::Zero(1);
        const Vector y = direct.layout().pack(s);
        const Vector a = direct.rhs(0.0, y);
        const Vector b = red.reduced->rhs(0.0, y);
        REQUIRE(a.size() == b.size());
        for (int j = 0; j < a.size(); ++j) CHECK(a[j] == b[j]); // bitwise
    }
}

TEST_CASE("unreduced integration stays on the primary constraint set",
          "[dirac]") {
    const auto P = testsup::reaction_defaults();
    const auto energy = reaction_mixture_energy(P);
    const auto net = testsup::network_2ab();
    const auto initial = reaction_initial(P);

    IntegratorConfig cfg;
    cfg.method = StepMethod::EmbeddedAdaptive;
    cfg.rtol = 1e-10;
    cfg.atol = 1e-12;
    cfg.t_end = 20.0;
    cfg.record_grid = 200;
    const auto dc = dirac_consistency_check(net, energy, initial, cfg);

    CHECK(dc.status == IntegrationStatus::Completed);
    CHECK(dc.max_primary_residual <= 1e-10);
    CHECK(dc.state_deviation <= 1e-9);
    CHECK(dc.multiplier_deviation <= 1e-9);
}

TEST_CASE("multiplier extraction reports the reduced velocities", "[dirac]") {
    const auto P = testsup::reaction_defaults();
    const auto energy = reaction_mixture_energy(P);
    const auto net = testsup::network_ab();
    const auto probe = reaction_initial(P);
    const auto red = dirac_reduce(reaction_total_hamiltonian(energy), net,
                                  energy, probe);

    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        ThermoPhaseState s = testsup::random_reaction_state(P, rng);
        s.nu_ext = Vector::Zero(1);
        const Vector lambda = red.multipliers(s);
        const StateRates r = reaction_field(net, energy, s);
        CHECK(lambda[0] == r.Ndot[0]);
        CHECK(lambda[1] == r.Ndot[1]);
        CHECK(lambda[2] == r.Sdot);
    }
}
