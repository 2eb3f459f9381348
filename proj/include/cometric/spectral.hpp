#ifndef COMETRIC_SPECTRAL_HPP
#define COMETRIC_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cometric/scheme.hpp"

namespace cometric {

constexpr double kDefaultTol = 1e-8;
constexpr std::uint64_t kDefaultSeed = 0xA55C13;
constexpr double kIntegerSnapTol = 1e-6;

/// |v - round(v)| <= tol. Diagnostic only; values are never mutated.
inline bool is_integral(double v, double tol = kIntegerSnapTol) {
    return std::abs(v - std::round(v)) <= tol;
}

/// Primitive idempotents E_0..E_d with the eigenmatrices P, Q.
/// Conventions: P(j, i) = p_i(j), Q(j, i) = q_i(j), mult[i] = q_i(0).
struct SpectralBasis {
    int n = 0;
    int d = 0;
    std::vector<Eigen::MatrixXd> idempotents;
    Eigen::MatrixXd P;
    Eigen::MatrixXd Q;
    std::vector<double> mult;
    double tol = kDefaultTol;
    std::uint64_t seed_used = kDefaultSeed;
};

/// Krein parameters q_ij^k of the Hadamard product on the idempotents.
struct KreinTensor {
    int d = 0;
    std::vector<double> q; // (d+1)^3
    double min_entry = 0.0;

    explicit KreinTensor(int d_)
        : d(d_), q(static_cast<std::size_t>(d_ + 1) * (d_ + 1) * (d_ + 1), 0.0) {}

    double operator()(int i, int j, int k) const {
        return q[(static_cast<std::size_t>(i) * (d + 1) + j) * (d + 1) + k];
    }
    double& operator()(int i, int j, int k) {
        return q[(static_cast<std::size_t>(i) * (d + 1) + j) * (d + 1) + k];
    }
};

struct DualRow {
    std::vector<double> values; // (q_e(0), ..., q_e(d))
    bool distinct = false;
};

namespace detail {

// eigenvalue of A_i on the eigenspace of E: trace(A_i E) / trace(E)
inline double eigenvalue_on(const Eigen::MatrixXd& a, const Eigen::MatrixXd& e) {
    return (a * e).trace() / e.trace();
}

} // namespace detail

/// Split the Bose-Mesner algebra into its d+1 common eigenspaces.
///
/// A generic element T = sum c_i A_i with seeded pseudo-random coefficients
/// is diagonalized; eigenvalues are clustered at gap 1e-6 * rho(T) and each
/// cluster's projector becomes one idempotent. If the cluster count is not
/// d+1 the seed is incremented and the draw repeated, up to max_retries.
/// Ordering: E_0 first, the rest by descending p_1(j), ties by ascending
/// multiplicity. Detection never relies on this ordering.
inline SpectralBasis primitive_idempotents(const RelationTable& table,
                                           const IntersectionTensor& tensor,
                                           double tol = kDefaultTol,
                                           std::uint64_t seed = kDefaultSeed,
                                           int max_retries = 16) {
    if (tol <= 0) throw SchemeError("tol must be positive");
    const int n = table.n, d = table.d;
    if (tensor.d != d) throw SchemeError("tensor/table class mismatch");

    std::vector<Eigen::MatrixXd> slices(d + 1);
    for (int i = 0; i <= d; ++i) slices[i] = table.slice_real(i);

    std::vector<Eigen::MatrixXd> projectors;
    std::uint64_t used = seed;
    for (int attempt = 0; attempt < max_retries; ++attempt, ++used) {
        std::mt19937_64 rng(used);
        std::uniform_real_distribution<double> unif(0.25, 1.0);
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i <= d; ++i) t += unif(rng) * slices[i];

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const Eigen::VectorXd& ev = es.eigenvalues();
        const double radius = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
        const double gap = 1e-6 * std::max(radius, 1.0);

        std::vector<std::pair<int, int>> clusters; // [begin, end) in eigenvalue order
        int begin = 0;
        for (int i = 1; i <= n; ++i)
            if (i == n || ev(i) - ev(i - 1) > gap) {
                clusters.emplace_back(begin, i);
                begin = i;
            }
        if (static_cast<int>(clusters.size()) != d + 1) continue;

        projectors.clear();
        for (auto [b, e] : clusters) {
            Eigen::MatrixXd v = es.eigenvectors().middleCols(b, e - b);
            projectors.push_back(v * v.transpose());
        }
        break;
    }
    if (projectors.empty())
        throw DegenerateSplit("no seed in the retry budget gave " + std::to_string(d + 1) +
                              " eigenspaces");

    // E_0 projects onto the all-ones vector
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    int zero_at = -1;
    for (int j = 0; j <= d; ++j)
        if ((projectors[j] * ones - ones).norm() < 0.5) {
            zero_at = j;
            break;
        }
    if (zero_at < 0) throw SchemeError("internal: no eigenspace contains the all-ones vector");

    std::vector<int> order{zero_at};
    std::vector<int> rest;
    for (int j = 0; j <= d; ++j)
        if (j != zero_at) rest.push_back(j);
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
        double pa = detail::eigenvalue_on(slices[std::min(1, d)], projectors[a]);
        double pb = detail::eigenvalue_on(slices[std::min(1, d)], projectors[b]);
        if (std::abs(pa - pb) > 1e-9) return pa > pb;
        return projectors[a].trace() < projectors[b].trace();
    });
    order.insert(order.end(), rest.begin(), rest.end());

    SpectralBasis basis;
    basis.n = n;
    basis.d = d;
    basis.tol = tol;
    basis.seed_used = used;
    basis.idempotents.reserve(d + 1);
    for (int j = 0; j <= d; ++j) basis.idempotents.push_back(projectors[order[j]]);

    basis.P.resize(d + 1, d + 1);
    for (int j = 0; j <= d; ++j)
        for (int i = 0; i <= d; ++i)
            basis.P(j, i) = detail::eigenvalue_on(slices[i], basis.idempotents[j]);

    basis.Q = n * basis.P.inverse();
    basis.mult.resize(d + 1);
    for (int i = 0; i <= d; ++i) basis.mult[i] = basis.Q(0, i);
    return basis;
}

/// q_ij^k = (n / m_k) * trace(E_k (E_i o E_j)), o the entrywise product.
inline KreinTensor krein_parameters(const SpectralBasis& basis) {
    const int d = basis.d;
    const double n = basis.n;
    KreinTensor kt(d);
    kt.min_entry = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= d; ++i)
        for (int j = i; j <= d; ++j) {
            Eigen::MatrixXd had = basis.idempotents[i].cwiseProduct(basis.idempotents[j]);
            for (int k = 0; k <= d; ++k) {
                double q = n / basis.mult[k] * (basis.idempotents[k] * had).trace();
                kt(i, j, k) = q;
                kt(j, i, k) = q;
                kt.min_entry = std::min(kt.min_entry, q);
            }
        }
    if (kt.min_entry < -10.0 * basis.tol)
        throw KreinViolation("Krein parameter " + std::to_string(kt.min_entry) +
                             " below -10*tol; basis is numerically invalid");
    return kt;
}

/// Row (q_e(0), ..., q_e(d)) of dual eigenvalues, with a distinctness flag.
inline DualRow dual_eigenvalue_row(const SpectralBasis& basis, int e, double tol = kDefaultTol) {
    if (e < 1 || e > basis.d) throw SchemeError("e must be in 1..d");
    DualRow row;
    row.values.resize(basis.d + 1);
    for (int j = 0; j <= basis.d; ++j) row.values[j] = basis.Q(j, e);
    row.distinct = true;
    for (int a = 0; a <= basis.d && row.distinct; ++a)
        for (int b = a + 1; b <= basis.d; ++b)
            if (std::abs(row.values[a] - row.values[b]) <= tol) {
                row.distinct = false;
                break;
            }
    return row;
}

} // namespace cometric

#endif
