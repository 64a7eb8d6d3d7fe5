#pragma once

#include <utility>
#include <vector>

#include "noneq/hamiltonian.hpp"

namespace noneq {

/// Internal matter transfer between K compartments. G(state) is the K x K
/// matrix of transfer coefficients, nonnegative elementwise; only the
/// upper triangle is read. For each pair k < l the molar flow rate from k
/// to l is J^{k->l} = G^{kl} (mu^k - mu^l) and the reverse flux is its
/// negative, so flux antisymmetry and total mole conservation hold
/// structurally.
class TransferNetwork {
public:
    TransferNetwork(int K, std::function<Matrix(const ThermoPhaseState&)> G)
        : K_(K), G_(std::move(G)) {
        if (K_ < 1) throw ConfigurationError("transfer network needs K >= 1");
        if (!G_) throw ConfigurationError("transfer network needs G");
    }

    static TransferNetwork constant(const Matrix& G) {
        const int K = static_cast<int>(G.rows());
        if (G.cols() != K)
            throw ConfigurationError("transfer coefficient matrix must be square");
        if (G.minCoeff() < 0.0)
            throw ConfigurationError("transfer coefficients must be >= 0");
        return TransferNetwork(K, [G](const ThermoPhaseState&) { return G; });
    }

    int compartments() const { return K_; }

    Matrix coefficients(const ThermoPhaseState& s) const {
        Matrix G = G_(s);
        if (G.rows() != K_ || G.cols() != K_)
            throw DimensionMismatch("G(state) has wrong shape");
        if (G.minCoeff() < 0.0)
            throw IndefiniteCoefficient("transfer coefficient G < 0");
        return G;
    }

    /// Pair fluxes J^{k->l} for k < l, row-major over pairs.
    struct Fluxes {
        std::vector<std::pair<int, int>> pairs; // (k, l), k < l
        Vector values;                          // J^{k->l}

        /// Signed flux J^{from->to}.
        double flow(int from, int to) const {
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (pairs[i].first == from && pairs[i].second == to)
                    return values[static_cast<int>(i)];
                if (pairs[i].first == to && pairs[i].second == from)
                    return -values[static_cast<int>(i)];
            }
            return 0.0;
        }
    };

    Fluxes fluxes(const ThermoPhaseState& s, const Vector& mu) const {
        if (mu.size() != K_)
            throw DimensionMismatch("mu has wrong dimension for network");
        const Matrix G = coefficients(s);
        Fluxes f;
        f.pairs.reserve(static_cast<std::size_t>(K_) * (K_ - 1) / 2);
        std::vector<double> vals;
        for (int k = 0; k < K_; ++k)
            for (int l = k + 1; l < K_; ++l) {
                f.pairs.emplace_back(k, l);
                vals.push_back(G(k, l) * (mu[k] - mu[l]));
            }
        f.values = Eigen::Map<Vector>(vals.data(), static_cast<int>(vals.size()));
        return f;
    }

    /// Mole balance dN_k/dt = sum_l J^{l->k}; pairwise cancellation makes
    /// sum_k dN_k/dt vanish exactly.
    Vector mole_rates(const Fluxes& f) const {
        Vector Ndot = Vector::Zero(K_);
        for (std::size_t i = 0; i < f.pairs.size(); ++i) {
            const auto [k, l] = f.pairs[i];
            const double J_kl = f.values[static_cast<int>(i)];
            Ndot[l] += J_kl;
            Ndot[k] -= J_kl;
        }
        return Ndot;
    }

    /// Entropy production from transfer: sum over pairs of G (mu_k-mu_l)^2 / T.
    double entropy_production(const Fluxes& f, const Vector& mu, double T) const {
        double s = 0.0;
        for (std::size_t i = 0; i < f.pairs.size(); ++i) {
            const auto [k, l] = f.pairs[i];
            s += f.values[static_cast<int>(i)] * (mu[k] - mu[l]);
        }
        return s / T;
    }

private:
    int K_;
    std::function<Matrix(const ThermoPhaseState&)> G_;
};

} // namespace noneq
