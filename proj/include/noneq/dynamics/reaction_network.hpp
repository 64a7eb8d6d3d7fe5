#pragma once

#include <string>
#include <utility>
#include <vector>

#include "noneq/force.hpp"

namespace noneq {

/// Thermodynamic flux law J_a for a reaction network. Linear closes the
/// second law by construction (J = L A with sym(L) PSD); MassAction is the
/// usual concentration power law, with J_a A^a >= 0 checked at runtime
/// rather than guaranteed.
struct RateLaw {
    enum class Kind { Linear, MassAction };
    Kind kind = Kind::Linear;
    Matrix L;        // r x r, Linear
    Vector k_fwd;    // per reaction, MassAction
    Vector k_bwd;
    double volume = 1e-3; // fixed reactor volume for concentrations (m^3)

    static RateLaw linear(const Matrix& L) {
        check_psd(L, "linear rate law L");
        RateLaw law;
        law.kind = Kind::Linear;
        law.L = L;
        return law;
    }

    static RateLaw mass_action(const Vector& k_fwd, const Vector& k_bwd,
                               double volume) {
        if (k_fwd.size() != k_bwd.size())
            throw ConfigurationError("mass action: k_fwd/k_bwd sizes differ");
        if (k_fwd.minCoeff() < 0 || k_bwd.minCoeff() < 0 || !(volume > 0))
            throw ConfigurationError("mass action: rate constants and volume must be >= 0");
        RateLaw law;
        law.kind = Kind::MassAction;
        law.k_fwd = k_fwd;
        law.k_bwd = k_bwd;
        law.volume = volume;
        return law;
    }
};

/// Stoichiometry of r reactions among R species, with molecular masses.
/// Construction enforces mass conservation per reaction (Lavoisier's law):
/// sum_I m_I nu^a_I = 0 for every a.
class ReactionNetwork {
public:
    ReactionNetwork(Eigen::MatrixXi nu_fwd, Eigen::MatrixXi nu_bwd,
                    Vector masses, RateLaw law,
                    std::vector<std::string> species = {})
        : nu_fwd_(std::move(nu_fwd)),
          nu_bwd_(std::move(nu_bwd)),
          masses_(std::move(masses)),
          law_(std::move(law)),
          species_(std::move(species)) {
        r_ = static_cast<int>(nu_fwd_.rows());
        R_ = static_cast<int>(nu_fwd_.cols());
        if (nu_bwd_.rows() != r_ || nu_bwd_.cols() != R_)
            throw ConfigurationError("stoichiometry matrices differ in shape");
        if (masses_.size() != R_)
            throw ConfigurationError("need one molecular mass per species");
        if (r_ < 1 || R_ < 1)
            throw ConfigurationError("need at least one reaction and species");
        if (nu_fwd_.minCoeff() < 0 || nu_bwd_.minCoeff() < 0)
            throw ConfigurationError("stoichiometric coefficients must be >= 0");
        if (masses_.minCoeff() <= 0)
            throw ConfigurationError("molecular masses must be > 0");
        if (law_.kind == RateLaw::Kind::Linear) {
            if (law_.L.rows() != r_ || law_.L.cols() != r_)
                throw ConfigurationError("linear rate law L must be r x r");
            check_psd(law_.L, "linear rate law L");
        } else if (law_.k_fwd.size() != r_) {
            throw ConfigurationError("mass action needs one rate pair per reaction");
        }
        nu_ = (nu_bwd_ - nu_fwd_).cast<double>();
        for (int a = 0; a < r_; ++a) {
            const double balance = masses_.dot(nu_.row(a));
            const double scale = masses_.cwiseAbs().dot(nu_.row(a).cwiseAbs());
            if (std::abs(balance) > 1e-12 * std::max(1.0, scale))
                throw ConfigurationError(
                    "reaction " + reaction_name(a) +
                    " violates mass conservation: sum_I m_I nu_I = " +
                    std::to_string(balance));
        }
    }

    int species_count() const { return R_; }
    int reaction_count() const { return r_; }
    const Eigen::MatrixXi& nu_forward() const { return nu_fwd_; }
    const Eigen::MatrixXi& nu_backward() const { return nu_bwd_; }
    /// Signed stoichiometry nu = nu'' - nu' as doubles, r x R.
    const Matrix& nu() const { return nu_; }
    const Vector& masses() const { return masses_; }
    const RateLaw& rate_law() const { return law_; }

    std::string species_name(int i) const {
        return i < static_cast<int>(species_.size()) ? species_[i]
                                                     : "X" + std::to_string(i + 1);
    }

    std::string reaction_name(int a) const {
        std::string lhs, rhs;
        for (int i = 0; i < R_; ++i) {
            append_term(lhs, nu_fwd_(a, i), species_name(i));
            append_term(rhs, nu_bwd_(a, i), species_name(i));
        }
        return (lhs.empty() ? "0" : lhs) + " <-> " + (rhs.empty() ? "0" : rhs);
    }

private:
    static void append_term(std::string& side, int coeff, const std::string& name) {
        if (coeff == 0) return;
        if (!side.empty()) side += " + ";
        if (coeff != 1) side += std::to_string(coeff);
        side += name;
    }

    Eigen::MatrixXi nu_fwd_, nu_bwd_;
    Vector masses_;
    RateLaw law_;
    std::vector<std::string> species_;
    Matrix nu_;
    int r_ = 0, R_ = 0;
};

/// Affinities A^a = -sum_I nu^a_I mu^I.
inline Vector affinities(const ReactionNetwork& net, const Vector& mu) {
    if (mu.size() != net.species_count())
        throw DimensionMismatch("mu has wrong dimension for network");
    return Vector(-(net.nu() * mu));
}

/// Thermodynamic fluxes J_a. Linear law: J = L A. Mass action:
/// J_a = k+_a prod_I c_I^nu'_I - k-_a prod_I c_I^nu''_I with c = N / volume.
inline Vector reaction_rates(const ReactionNetwork& net,
                             const ThermoPhaseState& state, const Vector& mu) {
    const RateLaw& law = net.rate_law();
    if (law.kind == RateLaw::Kind::Linear)
        return Vector(law.L * affinities(net, mu));

    if (state.N.size() != net.species_count())
        throw DimensionMismatch("state N has wrong dimension for network");
    const int r = net.reaction_count();
    const int R = net.species_count();
    Vector J(r);
    for (int a = 0; a < r; ++a) {
        double fwd = law.k_fwd[a], bwd = law.k_bwd[a];
        for (int i = 0; i < R; ++i) {
            const double c = state.N[i] / law.volume;
            if (c < 0.0)
                throw DomainError("negative concentration of " + net.species_name(i));
            fwd *= std::pow(c, static_cast<double>(net.nu_forward()(a, i)));
            bwd *= std::pow(c, static_cast<double>(net.nu_backward()(a, i)));
        }
        J[a] = fwd - bwd;
    }
    return J;
}

/// Species production rates dN_I/dt = sum_a J_a nu^a_I.
inline Vector species_rates(const ReactionNetwork& net, const Vector& J) {
    return Vector(net.nu().transpose() * J);
}

} // namespace noneq
