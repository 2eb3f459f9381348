#ifndef COMETRIC_POLYPROPS_HPP
#define COMETRIC_POLYPROPS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "cometric/spectral.hpp"

namespace cometric {

/// An ordering of relations (P) or idempotents (Q) under which the
/// corresponding structure-constant slice is irreducible tridiagonal.
struct OrderingWitness {
    enum class Kind { PPoly, QPoly };
    Kind kind = Kind::QPoly;
    std::vector<int> order; // i_0 = 0, i_1 = e, ..., i_d
    int e = 0;
};

/// N_h filtration of idempotent indices by first appearance in Hadamard
/// powers of E_e, plus the Q-polynomial verdict it implies.
struct FiltrationResult {
    int e = 0;
    std::vector<std::vector<int>> N; // N_0..N_d
    std::vector<int> leftover;       // indices with no h <= d
    bool is_qpoly = false;
    std::vector<int> order; // set when is_qpoly and every |N_h| = 1
};

/// Larman-Rogers-Seidel ratios K_1..K_d and the witness l they match.
struct RatioResult {
    int e = 0;
    std::vector<double> K; // K_1..K_d
    std::optional<int> l_witness;
    bool is_qpoly = false;
    std::vector<bool> integral_flags;
    std::vector<int> matched_ls; // every l that matched; >1 means ambiguous
    bool ambiguous = false;
};

/// Numeric check of the Lagrange interpolation identity
/// sum_i beta_i^j prod_{k != i} (x - beta_k)/(beta_i - beta_k) = x^j.
/// True mathematically for j <= s-1; exposed as a self-test primitive.
inline bool lagrange_identity_check(const std::vector<double>& betas, int j, double x,
                                    double tol = kDefaultTol) {
    const int s = static_cast<int>(betas.size());
    if (j < 0 || j > s - 1) throw SchemeError("need 0 <= j <= s-1");
    for (int a = 0; a < s; ++a)
        for (int b = a + 1; b < s; ++b)
            if (std::abs(betas[a] - betas[b]) <= tol)
                throw DegenerateNodes("nodes " + std::to_string(a) + " and " + std::to_string(b) +
                                      " coincide within tol");
    double sum = 0.0;
    double scale = std::abs(std::pow(x, j));
    for (int i = 0; i < s; ++i) {
        double term = std::pow(betas[i], j);
        for (int k = 0; k < s; ++k) {
            if (k == i) continue;
            term *= (x - betas[k]) / (betas[i] - betas[k]);
            scale = std::max(scale, std::abs(term));
        }
        sum += term;
        scale = std::max(scale, std::abs(sum));
    }
    return std::abs(sum - std::pow(x, j)) <= tol * std::max(scale, 1.0);
}

/// K_i = prod_{j != i, j >= 1} (theta*_0 - theta*_j) / (theta*_i - theta*_j).
inline std::vector<double> lrs_ratios(const std::vector<double>& theta_star,
                                      double tol = kDefaultTol) {
    const int d = static_cast<int>(theta_star.size()) - 1;
    if (d < 2) throw SchemeError("class d >= 2 required");
    for (int a = 0; a <= d; ++a)
        for (int b = a + 1; b <= d; ++b)
            if (std::abs(theta_star[a] - theta_star[b]) <= tol)
                throw NotDistinct("theta* values " + std::to_string(a) + " and " +
                                  std::to_string(b) + " coincide within tol");
    std::vector<double> ratios(d);
    for (int i = 1; i <= d; ++i) {
        double k = 1.0;
        for (int j = 1; j <= d; ++j) {
            if (j == i) continue;
            k *= (theta_star[0] - theta_star[j]) / (theta_star[i] - theta_star[j]);
        }
        ratios[i - 1] = k;
    }
    return ratios;
}

namespace detail {

// shared ratio-vs-eigenvalue matcher for the main criterion and its dual:
// theta is a row of one eigenmatrix, targets(l, i) a row read of the other
template <typename TargetFn>
inline RatioResult ratio_criterion(int d, int e, const std::vector<double>& theta,
                                   TargetFn target, double tol) {
    if (d < 2) throw SchemeError("class d >= 2 required");
    RatioResult res;
    res.e = e;
    res.K = lrs_ratios(theta, tol);
    double kmax = 0.0;
    for (double k : res.K) kmax = std::max(kmax, std::abs(k));
    const double match_tol = 1e-6 * std::max(1.0, kmax);
    // the witness l = i_d is an original label; with e in second position it
    // ranges over every label other than 0 and e (it is {2..d} only when e = 1)
    for (int l = 1; l <= d; ++l) {
        if (l == e) continue;
        double worst = 0.0;
        for (int i = 1; i <= d; ++i)
            worst = std::max(worst, std::abs(res.K[i - 1] + target(l, i)));
        if (worst <= match_tol) res.matched_ls.push_back(l);
    }
    res.is_qpoly = !res.matched_ls.empty();
    res.ambiguous = res.matched_ls.size() > 1;
    if (res.matched_ls.size() == 1) res.l_witness = res.matched_ls.front();
    res.integral_flags.resize(d);
    for (int i = 0; i < d; ++i) res.integral_flags[i] = is_integral(res.K[i]);
    return res;
}

} // namespace detail

/// Main criterion: the scheme is Q-polynomial with respect to E_e iff some
/// l in {2..d} has K_i = -p_i(l) for all i. When it holds, l = i_d.
inline RatioResult qpoly_criterion_main(const SpectralBasis& basis, int e,
                                        double tol = kDefaultTol) {
    DualRow row = dual_eigenvalue_row(basis, e, tol);
    if (!row.distinct) throw NotDistinct("dual eigenvalue row for e = " + std::to_string(e) +
                                         " has coincident entries");
    return detail::ratio_criterion(
        basis.d, e, row.values, [&](int l, int i) { return basis.P(l, i); }, tol);
}

/// Dual criterion: P-polynomial with respect to A_e iff some l in {2..d}
/// has (ratios of the theta row) = -q_i(l) for all i.
inline RatioResult ppoly_criterion_dual(const SpectralBasis& basis, int e,
                                        double tol = kDefaultTol) {
    if (e < 1 || e > basis.d) throw SchemeError("e must be in 1..d");
    std::vector<double> theta(basis.d + 1);
    for (int j = 0; j <= basis.d; ++j) theta[j] = basis.P(j, e);
    for (int a = 0; a <= basis.d; ++a)
        for (int b = a + 1; b <= basis.d; ++b)
            if (std::abs(theta[a] - theta[b]) <= tol)
                throw NotDistinct("eigenvalue row for e = " + std::to_string(e) +
                                  " has coincident entries");
    return detail::ratio_criterion(
        basis.d, e, theta, [&](int l, int i) { return basis.Q(l, i); }, tol);
}

/// Filtration by Hadamard powers of E_e: index j lands in N_h for the
/// minimal h with E_j a component of E_e^{oh}. The scheme is Q-polynomial
/// with respect to E_e iff N_d is nonempty; then every |N_h| = 1 and the
/// singletons spell out the Q-ordering.
inline FiltrationResult hadamard_filtration(const SpectralBasis& basis, int e,
                                            double tol = kDefaultTol) {
    if (e < 1 || e > basis.d) throw SchemeError("e must be in 1..d");
    const int d = basis.d;
    FiltrationResult res;
    res.e = e;
    res.N.assign(d + 1, {});

    std::vector<int> min_h(d + 1, -1);
    Eigen::MatrixXd h = Eigen::MatrixXd::Ones(basis.n, basis.n); // E_e^{o0}
    for (int step = 0; step <= d; ++step) {
        const double hnorm = std::max(1.0, h.norm());
        for (int j = 0; j <= d; ++j)
            if (min_h[j] < 0 && (basis.idempotents[j] * h).norm() > tol * hnorm)
                min_h[j] = step;
        if (step < d) h = h.cwiseProduct(basis.idempotents[e]);
    }
    for (int j = 0; j <= d; ++j) {
        if (min_h[j] >= 0)
            res.N[min_h[j]].push_back(j);
        else
            res.leftover.push_back(j);
    }
    res.is_qpoly = !res.N[d].empty();
    if (res.is_qpoly) {
        bool all_singleton = true;
        for (int hh = 0; hh <= d; ++hh) all_singleton = all_singleton && res.N[hh].size() == 1;
        if (all_singleton)
            for (int hh = 0; hh <= d; ++hh) res.order.push_back(res.N[hh].front());
    }
    return res;
}

namespace detail {

template <typename Tensor>
inline std::vector<OrderingWitness> tridiagonal_orderings_impl(const Tensor& t, double tol,
                                                               OrderingWitness::Kind kind) {
    const int d = t.d;
    std::vector<OrderingWitness> witnesses;
    if (d < 2) return witnesses;
    for (int e = 1; e <= d; ++e) {
        std::vector<int> order{0, e};
        std::vector<bool> used(d + 1, false);
        used[0] = used[e] = true;
        bool ok = true;
        while (static_cast<int>(order.size()) <= d) {
            int cur = order.back();
            int next = -1, hits = 0;
            for (int k = 0; k <= d; ++k)
                if (!used[k] && static_cast<double>(t(e, cur, k)) > tol) {
                    next = k;
                    ++hits;
                }
            if (hits != 1) {
                ok = false;
                break;
            }
            order.push_back(next);
            used[next] = true;
        }
        if (!ok) continue;
        // full tridiagonal support of (t_{e, i_a}^{i_b})
        for (int a = 0; a <= d && ok; ++a)
            for (int b = 0; b <= d; ++b) {
                double v = static_cast<double>(t(e, order[a], order[b]));
                int band = std::abs(a - b);
                if (band > 1 && std::abs(v) > tol) ok = false;
                if (band == 1 && v <= tol) ok = false;
            }
        if (ok) witnesses.push_back({kind, order, e});
    }
    return witnesses;
}

} // namespace detail

/// All Q-polynomial orderings of the Krein tensor: greedy extension from
/// each e, then a full tridiagonal-support check.
inline std::vector<OrderingWitness> tridiagonal_orderings(const KreinTensor& kt,
                                                          double tol = kDefaultTol) {
    return detail::tridiagonal_orderings_impl(kt, std::max(tol, 1e-7),
                                              OrderingWitness::Kind::QPoly);
}

/// All P-polynomial orderings of the intersection tensor. Entries are exact
/// integers, so the zero test is a half-unit threshold.
inline std::vector<OrderingWitness> tridiagonal_orderings(const IntersectionTensor& it,
                                                          double /*tol*/ = 0.5) {
    return detail::tridiagonal_orderings_impl(it, 0.5, OrderingWitness::Kind::PPoly);
}

/// Suzuki's five alternative-ordering patterns, as permutations of 0..d
/// relative to a reference ordering. Returns nothing when the pattern does
/// not produce a permutation for this d.
inline std::optional<std::vector<int>> suzuki_pattern(int id, int d) {
    std::vector<int> p{0};
    auto interleave = [&](int hi_start, int hi_step, int lo_start, int lo_step) {
        int hi = hi_start, lo = lo_start;
        bool take_hi = true;
        while (static_cast<int>(p.size()) <= d && (hi > 0 || lo <= d)) {
            if (take_hi && hi > 0) {
                p.push_back(hi);
                hi -= hi_step;
            } else if (!take_hi && lo <= d) {
                p.push_back(lo);
                lo += lo_step;
            }
            take_hi = !take_hi;
        }
    };
    switch (id) {
        case 1:
            for (int i = 2; i <= d; i += 2) p.push_back(i);
            for (int i = (d % 2 == 1) ? d : d - 1; i >= 1; i -= 2) p.push_back(i);
            break;
        case 2:
            interleave(d, 1, 1, 1);
            break;
        case 3:
            interleave(d, 2, 2, 2);
            break;
        case 4:
            interleave(d - 1, 2, 2, 2);
            if (static_cast<int>(p.size()) == d) p.push_back(d);
            break;
        case 5:
            if (d != 5) return std::nullopt;
            p = {0, 5, 3, 2, 4, 1};
            break;
        default:
            return std::nullopt;
    }
    if (static_cast<int>(p.size()) != d + 1) return std::nullopt;
    std::vector<bool> seen(d + 1, false);
    for (int v : p) {
        if (v < 0 || v > d || seen[v]) return std::nullopt;
        seen[v] = true;
    }
    return p;
}

struct SuzukiReport {
    bool skipped_m1 = false; // m_1 <= 2: ordinary n-gons, comparison not applicable
    bool unique = false;     // single ordering, nothing to compare
    struct PairCheck {
        int other_index = 0; // index into the witness list
        int pattern = 0;     // matching pattern id, 0 on violation
        bool violation = false;
    };
    std::vector<PairCheck> checks;
};

/// Check every non-reference Q-ordering against the five admissible
/// alternative-ordering patterns. A violation on a validated scheme with
/// m_1 > 2 indicates a software bug.
inline SuzukiReport suzuki_consistency(const std::vector<OrderingWitness>& witnesses, int d,
                                       double m1) {
    SuzukiReport rep;
    if (std::round(m1) <= 2) {
        rep.skipped_m1 = true;
        return rep;
    }
    if (witnesses.size() <= 1) {
        rep.unique = true;
        return rep;
    }
    const std::vector<int>& ref = witnesses.front().order;
    std::vector<int> inv(d + 1);
    for (int a = 0; a <= d; ++a) inv[ref[a]] = a;
    for (std::size_t w = 1; w < witnesses.size(); ++w) {
        std::vector<int> relative(d + 1);
        for (int a = 0; a <= d; ++a) relative[a] = inv[witnesses[w].order[a]];
        SuzukiReport::PairCheck check;
        check.other_index = static_cast<int>(w);
        check.violation = true;
        for (int id = 1; id <= 5; ++id) {
            auto pattern = suzuki_pattern(id, d);
            if (pattern && *pattern == relative) {
                check.pattern = id;
                check.violation = false;
                break;
            }
        }
        rep.checks.push_back(check);
    }
    return rep;
}

struct IntegralityReport {
    bool hypothesis = false; // m_1 > 2 and some odd t <= d/2 with m_t != m_{d-t+1}
    std::vector<double> mult_in_order;
    std::vector<bool> integral; // per K_j, within the snap tolerance
    bool contradiction = false; // hypothesis holds yet some K_j non-integral
};

/// Integrality diagnostic for the ratios of a Q-polynomial ordering.
/// Multiplicities are re-indexed along the witness ordering before the
/// hypothesis is evaluated.
inline IntegralityReport integrality_report(const SpectralBasis& basis,
                                            const OrderingWitness& witness,
                                            const std::vector<double>& K) {
    const int d = basis.d;
    IntegralityReport rep;
    rep.mult_in_order.resize(d + 1);
    for (int t = 0; t <= d; ++t) rep.mult_in_order[t] = basis.mult[witness.order[t]];

    bool m1_big = std::round(rep.mult_in_order[1]) > 2;
    bool exists_t = false;
    for (int t = 1; 2 * t <= d; t += 2)
        if (std::llround(rep.mult_in_order[t]) != std::llround(rep.mult_in_order[d - t + 1]))
            exists_t = true;
    rep.hypothesis = m1_big && exists_t;

    rep.integral.resize(K.size());
    bool all_integral = true;
    for (std::size_t j = 0; j < K.size(); ++j) {
        rep.integral[j] = is_integral(K[j]);
        all_integral = all_integral && rep.integral[j];
    }
    rep.contradiction = rep.hypothesis && !all_integral;
    return rep;
}

} // namespace cometric

#endif
