// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Everything runs at desk scale in a few seconds.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "cometric/io.hpp"
#include "oracles.hpp"

using namespace cometric;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& label, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& ex) {
        detail = std::string("exception: ") + ex.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << label;
    if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

SpectralBasis basis_of(const RelationTable& t) {
    return primitive_idempotents(t, validate_axioms(t));
}

bool fail(std::string& detail, const std::string& msg) {
    if (detail.empty()) detail = msg;
    return false;
}

} // namespace

int main() {
    const std::vector<std::string> names = catalog_names();

    criterion(1, "axiom validator accepts the catalog and rejects P_3", [&](std::string& detail) {
        for (const auto& name : names) {
            try {
                validate_axioms(catalog_lookup(name).table);
            } catch (const std::exception& ex) {
                return fail(detail, name + ": " + ex.what());
            }
        }
        Eigen::MatrixXi p3 = Eigen::MatrixXi::Zero(3, 3);
        p3(0, 1) = p3(1, 0) = p3(1, 2) = p3(2, 1) = 1;
        try {
            validate_axioms(from_distance_partition(p3));
            return fail(detail, "P_3 accepted");
        } catch (const NotAScheme&) {
        }
        return true;
    });

    criterion(2, "spectral identities within 1e-6 on every catalog entry",
              [&](std::string& detail) {
        for (const auto& name : names) {
            const RelationTable t = catalog_lookup(name).table;
            SpectralBasis b = basis_of(t);
            const int n = t.n, d = t.d;

            Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
            for (const auto& e : b.idempotents) sum += e;
            if ((sum - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-6)
                return fail(detail, name + ": sum E_i != I");

            for (int i = 0; i <= d; ++i)
                for (int j = 0; j <= d; ++j) {
                    Eigen::MatrixXd prod = b.idempotents[i] * b.idempotents[j];
                    if (i == j) prod -= b.idempotents[i];
                    if (prod.norm() > 1e-6)
                        return fail(detail, name + ": E_i E_j != delta E_i");
                }

            if ((b.P * b.Q - n * Eigen::MatrixXd::Identity(d + 1, d + 1)).norm() > 1e-6)
                return fail(detail, name + ": PQ != nI");

            for (int i = 0; i <= d; ++i) {
                Eigen::MatrixXd rec = Eigen::MatrixXd::Zero(n, n);
                for (int j = 0; j <= d; ++j) rec += b.P(j, i) * b.idempotents[j];
                if ((rec - t.slice_real(i)).norm() > 1e-6)
                    return fail(detail, name + ": A_i reconstruction");
                Eigen::MatrixXd dual = static_cast<double>(n) * b.idempotents[i];
                for (int j = 0; j <= d; ++j) dual -= b.Q(j, i) * t.slice_real(j);
                if (dual.norm() > 1e-6) return fail(detail, name + ": E_i reconstruction");
            }

            long long msum = 0;
            for (double m : b.mult) {
                if (!is_integral(m) || std::llround(m) < 1)
                    return fail(detail, name + ": bad multiplicity");
                msum += std::llround(m);
            }
            if (msum != n) return fail(detail, name + ": multiplicities do not sum to n");
        }
        return true;
    });

    criterion(3, "Krein condition: min entry >= -1e-7 on every catalog entry",
              [&](std::string& detail) {
        for (const auto& name : names) {
            KreinTensor kt = krein_parameters(basis_of(catalog_lookup(name).table));
            if (kt.min_entry < -1e-7)
                return fail(detail, name + ": min " + std::to_string(kt.min_entry));
        }
        return true;
    });

    criterion(4, "cross-route equivalence of the three Q-polynomial verdicts",
              [&](std::string& detail) {
        for (const auto& name : names) {
            SpectralBasis b = basis_of(catalog_lookup(name).table);
            if (b.d < 2) continue;
            auto witnesses = tridiagonal_orderings(krein_parameters(b));
            for (int e = 1; e <= b.d; ++e) {
                if (!dual_eigenvalue_row(b, e).distinct) continue;
                RatioResult ratio = qpoly_criterion_main(b, e);
                FiltrationResult filt = hadamard_filtration(b, e);
                const OrderingWitness* tri = nullptr;
                for (const auto& w : witnesses)
                    if (w.e == e) tri = &w;
                const std::string where = name + " e=" + std::to_string(e);
                if (ratio.is_qpoly != filt.is_qpoly || ratio.is_qpoly != (tri != nullptr))
                    return fail(detail, where + ": verdicts disagree");
                if (ratio.is_qpoly) {
                    if (!ratio.l_witness) return fail(detail, where + ": no unique l");
                    if (filt.N[b.d].size() != 1 || filt.N[b.d].front() != tri->order.back() ||
                        *ratio.l_witness != tri->order.back())
                        return fail(detail, where + ": l mismatch");
                }
            }
        }
        // a genuinely negative scheme: all three routes must agree it fails
        SpectralBasis cyc = basis_of(oracles::cyclotomic13());
        if (!tridiagonal_orderings(krein_parameters(cyc)).empty())
            return fail(detail, "cyclotomic13: spurious tridiagonal witness");
        for (int e = 1; e <= cyc.d; ++e) {
            if (!dual_eigenvalue_row(cyc, e).distinct)
                return fail(detail, "cyclotomic13: coincident dual row");
            if (qpoly_criterion_main(cyc, e).is_qpoly || hadamard_filtration(cyc, e).is_qpoly)
                return fail(detail, "cyclotomic13 e=" + std::to_string(e) + ": false positive");
        }
        return true;
    });

    criterion(5, "concrete ratios: Petersen K=(2,-1) l=2, cube K=(3,-3,1) l=3",
              [&](std::string& detail) {
        // independent oracle first: eigenvalues of the adjacency slices
        auto spec = oracles::slice_spectrum(petersen().table.slice_real(1));
        if (spec.size() != 3 || std::abs(spec[0].first - 3) > 1e-8 ||
            std::abs(spec[1].first - 1) > 1e-8 || std::abs(spec[2].first + 2) > 1e-8)
            return fail(detail, "Petersen spectrum oracle failed");

        SpectralBasis pet = basis_of(petersen().table);
        RatioResult rp = qpoly_criterion_main(pet, 1);
        if (!rp.is_qpoly || !rp.l_witness || *rp.l_witness != 2)
            return fail(detail, "Petersen verdict/l");
        if (std::abs(rp.K[0] - 2) > 1e-6 || std::abs(rp.K[1] + 1) > 1e-6)
            return fail(detail, "Petersen K");
        for (int i = 1; i <= 2; ++i)
            if (std::abs(rp.K[i - 1] + pet.P(2, i)) > 1e-6)
                return fail(detail, "Petersen K vs -p_i(2)");

        SpectralBasis cube = basis_of(hamming(3, 2).table);
        for (int j = 0; j <= 3; ++j)
            for (int i = 0; i <= 3; ++i)
                if (std::abs(cube.P(j, i) - oracles::krawtchouk(i, j, 3)) > 1e-8)
                    return fail(detail, "cube Krawtchouk oracle failed");
        RatioResult rc = qpoly_criterion_main(cube, 1);
        if (!rc.is_qpoly || !rc.l_witness || *rc.l_witness != 3) return fail(detail, "cube verdict/l");
        const double expected[3] = {3, -3, 1};
        for (int i = 1; i <= 3; ++i) {
            if (std::abs(rc.K[i - 1] - expected[i - 1]) > 1e-6) return fail(detail, "cube K");
            if (std::abs(rc.K[i - 1] + cube.P(3, i)) > 1e-6)
                return fail(detail, "cube K vs -p_i(3)");
        }
        return true;
    });

    criterion(6, "Lagrange identity: 1000 randomized trials at 1e-8",
              [&](std::string& detail) {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> size_dist(2, 8);
        std::uniform_real_distribution<double> x_dist(-10, 10);
        for (int trial = 0; trial < 1000; ++trial) {
            const int s = size_dist(rng);
            std::vector<double> betas;
            double v = x_dist(rng);
            for (int i = 0; i < s; ++i) {
                betas.push_back(v);
                v += 0.1 + std::uniform_real_distribution<double>(0.0, 2.0)(rng);
            }
            std::shuffle(betas.begin(), betas.end(), rng);
            const int j = std::uniform_int_distribution<int>(0, s - 1)(rng);
            if (!lagrange_identity_check(betas, j, x_dist(rng), 1e-8))
                return fail(detail, "trial " + std::to_string(trial));
        }
        return true;
    });

    criterion(7, "filtration collapse and singleton levels on catalog x e",
              [&](std::string& detail) {
        for (const auto& name : names) {
            SpectralBasis b = basis_of(catalog_lookup(name).table);
            if (b.d < 2) continue;
            for (int e = 1; e <= b.d; ++e) {
                FiltrationResult f = hadamard_filtration(b, e);
                const std::string where = name + " e=" + std::to_string(e);
                for (int i = 1; i < b.d; ++i)
                    if (f.N[i].empty() && !f.N[i + 1].empty())
                        return fail(detail, where + ": collapse violated");
                if (f.is_qpoly)
                    for (int h = 0; h <= b.d; ++h)
                        if (f.N[h].size() != 1)
                            return fail(detail, where + ": non-singleton N_" + std::to_string(h));
            }
        }
        return true;
    });

    criterion(8, "integrality: hypothesis forces integer K; n-gons and icosahedron non-integral",
              [&](std::string& detail) {
        bool pentagon_nonintegral = false, icosa_nonintegral = false;
        for (const auto& name : names) {
            SpectralBasis b = basis_of(catalog_lookup(name).table);
            if (b.d < 2) continue;
            auto witnesses = tridiagonal_orderings(krein_parameters(b));
            for (const auto& w : witnesses) {
                if (!dual_eigenvalue_row(b, w.e).distinct) continue;
                RatioResult r = qpoly_criterion_main(b, w.e);
                IntegralityReport rep = integrality_report(b, w, r.K);
                bool all_integral = true, any_nonintegral = false;
                for (bool flag : rep.integral) {
                    all_integral = all_integral && flag;
                    any_nonintegral = any_nonintegral || !flag;
                }
                if (rep.hypothesis && !all_integral)
                    return fail(detail, name + ": hypothesis contradicted");
                if (name == "cycle:5" && any_nonintegral) pentagon_nonintegral = true;
                if (name == "icosahedron" && any_nonintegral) icosa_nonintegral = true;
            }
        }
        if (!pentagon_nonintegral) return fail(detail, "pentagon K unexpectedly integral");
        if (!icosa_nonintegral) return fail(detail, "icosahedron K unexpectedly integral");
        return true;
    });

    criterion(9, "dual criterion mirrors the main one on self-dual schemes; J(5,2) is P-poly",
              [&](std::string& detail) {
        for (const char* name : {"hamming:3,2", "cycle:5"}) {
            SpectralBasis b = basis_of(catalog_lookup(name).table);
            RatioResult q = qpoly_criterion_main(b, 1);
            RatioResult p = ppoly_criterion_dual(b, 1);
            const std::string where = name;
            if (!q.is_qpoly || !p.is_qpoly) return fail(detail, where + ": verdict");
            if (!q.l_witness || !p.l_witness || *q.l_witness != *p.l_witness)
                return fail(detail, where + ": l mismatch");
            for (std::size_t i = 0; i < q.K.size(); ++i)
                if (std::abs(q.K[i] - p.K[i]) > 1e-6) return fail(detail, where + ": K mismatch");
        }
        IntersectionTensor j52 = validate_axioms(johnson(5, 2).table);
        auto pw = tridiagonal_orderings(j52);
        bool johnson_relation = false;
        for (const auto& w : pw)
            if (w.e == 1) johnson_relation = true;
        if (!johnson_relation) return fail(detail, "J(5,2) relation 1 not P-polynomial");
        SpectralBasis bj = basis_of(johnson(5, 2).table);
        RatioResult pj = ppoly_criterion_dual(bj, 1);
        if (!pj.is_qpoly) return fail(detail, "J(5,2) dual criterion negative for e=1");
        return true;
    });

    criterion(10, "CLI contract: round-trip, deterministic machine reports",
              [&](std::string& detail) {
        namespace fs = std::filesystem;
        fs::path tmp = fs::temp_directory_path() / ("cometric_acc_" + std::to_string(::getpid()));
        fs::create_directories(tmp);
        bool ok = true;
        for (const auto& name : names) {
            const std::string path = (tmp / "scheme.json").string();
            dump_catalog(name, path);
            if (!(load_scheme(path) == catalog_lookup(name).table)) {
                ok = fail(detail, name + ": round-trip mismatch");
                break;
            }
        }
        if (ok) {
            AnalysisOptions opt;
            opt.seed = 4242;
            std::string a = report_machine(analyze(petersen().table, opt, "petersen"));
            std::string b = report_machine(analyze(petersen().table, opt, "petersen"));
            if (a != b) ok = fail(detail, "machine reports differ across runs");
        }
        fs::remove_all(tmp);
        return ok;
    });

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                  : std::to_string(g_failures) + " CRITERIA FAILED")
              << "\n";
    return g_failures == 0 ? 0 : 1;
}
