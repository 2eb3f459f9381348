#ifndef COMETRIC_IO_HPP
#define COMETRIC_IO_HPP

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cometric/catalog.hpp"
#include "cometric/polyprops.hpp"

namespace cometric {

using json = nlohmann::ordered_json;

struct AnalysisOptions {
    double tol = kDefaultTol;
    std::uint64_t seed = kDefaultSeed;
    int e = -1; // -1 sweeps all e in 1..d
    int digits = 6;
};

struct PerEResult {
    int e = 0;
    std::vector<double> theta_star;
    bool distinct = false;
    std::optional<RatioResult> ratio;
    std::optional<FiltrationResult> filtration;
    bool tridiagonal_qpoly = false;
    std::optional<std::vector<int>> witness_order;
    std::optional<IntegralityReport> integrality;
    std::optional<RatioResult> ppoly;
    bool discrepancy = false;
    std::string discrepancy_reason;
};

struct AnalysisReport {
    std::string name;
    int n = 0;
    int d = 0;
    std::vector<long long> valencies;
    std::vector<long long> multiplicities;
    Eigen::MatrixXd P, Q;
    double krein_min = 0.0;
    std::vector<OrderingWitness> q_witnesses;
    std::vector<OrderingWitness> p_witnesses;
    SuzukiReport suzuki;
    std::vector<PerEResult> per_e;
    bool discrepancy = false;
    double tol = kDefaultTol;
    std::uint64_t seed = kDefaultSeed;
    int digits = 6;
};

// ---------------------------------------------------------------------------
// scheme files

inline void save_scheme(const RelationTable& table, const std::string& name,
                        const std::string& path) {
    json doc;
    doc["type"] = "relation_matrix";
    if (!name.empty()) doc["name"] = name;
    doc["n"] = table.n;
    doc["d"] = table.d;
    json rows = json::array();
    for (int x = 0; x < table.n; ++x) {
        json row = json::array();
        for (int y = 0; y < table.n; ++y) row.push_back(table(x, y));
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    std::ofstream out(path);
    if (!out) throw SchemeError("cannot write " + path);
    out << doc.dump(2) << "\n";
}

inline void dump_catalog(const std::string& name, const std::string& path) {
    CatalogEntry entry = catalog_lookup(name);
    save_scheme(entry.table, entry.name, path);
}

/// Parse and validate a scheme file. Both accepted forms:
///   {"type":"relation_matrix","n":..,"d":..,"rows":[[..],..]}
///   {"type":"graph","n":..,"edges":[[a,b],..]}
inline RelationTable load_scheme(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& ex) {
        throw ParseError(path + ": " + ex.what());
    }
    auto require = [&](const char* field) -> const json& {
        if (!doc.contains(field)) throw ParseError(path + ": missing field '" + field + "'");
        return doc[field];
    };
    const std::string type = require("type").get<std::string>();
    const int n = require("n").get<int>();
    if (n < 2) throw ParseError(path + ": n must be >= 2");

    if (type == "relation_matrix") {
        const int d = require("d").get<int>();
        const json& rows = require("rows");
        if (static_cast<int>(rows.size()) != n) throw ParseError(path + ": expected " +
                                                                 std::to_string(n) + " rows");
        RelationTable table(n, d);
        for (int x = 0; x < n; ++x) {
            const json& row = rows[x];
            if (static_cast<int>(row.size()) != n)
                throw ParseError(path + ": row " + std::to_string(x) + " has wrong length");
            for (int y = 0; y < n; ++y) {
                if (!row[y].is_number_integer())
                    throw ParseError(path + ": rel[" + std::to_string(x) + "][" +
                                     std::to_string(y) + "] is not an integer");
                const int v = row[y].get<int>();
                if (v < 0 || v > d)
                    throw ParseError(path + ": rel[" + std::to_string(x) + "][" +
                                     std::to_string(y) + "] = " + std::to_string(v) +
                                     " out of range 0.." + std::to_string(d));
                table(x, y) = v;
            }
        }
        validate_axioms(table);
        return table;
    }
    if (type == "graph") {
        const json& edges = require("edges");
        Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
        for (const auto& edge : edges) {
            if (!edge.is_array() || edge.size() != 2)
                throw ParseError(path + ": edges must be pairs");
            const int a = edge[0].get<int>(), b = edge[1].get<int>();
            if (a < 0 || a >= n || b < 0 || b >= n || a == b)
                throw ParseError(path + ": bad edge [" + std::to_string(a) + "," +
                                 std::to_string(b) + "]");
            adj(a, b) = 1;
            adj(b, a) = 1;
        }
        RelationTable table = from_distance_partition(adj);
        validate_axioms(table);
        return table;
    }
    throw ParseError(path + ": unknown type '" + type + "'");
}

// ---------------------------------------------------------------------------
// analysis pipeline

/// Full pipeline on a validated table: spectral data, Krein tensor, both
/// tridiagonal families, and per-e cross-checked polynomial detection.
/// Any disagreement between the three Q-routes sets the discrepancy flag;
/// the three criteria are mathematically equivalent, so a set flag means a
/// numerical breakdown or a bug.
inline AnalysisReport analyze(const RelationTable& table, const AnalysisOptions& opt = {},
                              const std::string& name = "") {
    IntersectionTensor tensor = validate_axioms(table);
    if (table.d < 2) throw SchemeError("class d >= 2 required");

    AnalysisReport rep;
    rep.name = name;
    rep.n = table.n;
    rep.d = table.d;
    rep.tol = opt.tol;
    rep.digits = opt.digits;
    rep.valencies = tensor.valency;

    SpectralBasis basis = primitive_idempotents(table, tensor, opt.tol, opt.seed);
    rep.seed = basis.seed_used;
    rep.P = basis.P;
    rep.Q = basis.Q;
    for (double m : basis.mult) rep.multiplicities.push_back(std::llround(m));

    KreinTensor krein = krein_parameters(basis);
    rep.krein_min = krein.min_entry;
    rep.q_witnesses = tridiagonal_orderings(krein, opt.tol);
    rep.p_witnesses = tridiagonal_orderings(tensor);

    {
        double m1 = rep.q_witnesses.empty()
                        ? 0.0
                        : basis.mult[rep.q_witnesses.front().order[1]];
        rep.suzuki = suzuki_consistency(rep.q_witnesses, rep.d, m1);
        for (const auto& check : rep.suzuki.checks)
            if (check.violation) rep.discrepancy = true;
    }

    std::vector<int> sweep;
    if (opt.e < 0)
        for (int e = 1; e <= rep.d; ++e) sweep.push_back(e);
    else
        sweep.push_back(opt.e);

    for (int e : sweep) {
        PerEResult per;
        per.e = e;
        DualRow row = dual_eigenvalue_row(basis, e, opt.tol);
        per.theta_star = row.values;
        per.distinct = row.distinct;

        for (const auto& w : rep.q_witnesses)
            if (w.e == e) {
                per.tridiagonal_qpoly = true;
                per.witness_order = w.order;
            }

        if (per.distinct) {
            per.ratio = qpoly_criterion_main(basis, e, opt.tol);
            per.filtration = hadamard_filtration(basis, e, opt.tol);

            const bool v1 = per.ratio->is_qpoly;
            const bool v2 = per.filtration->is_qpoly;
            const bool v3 = per.tridiagonal_qpoly;
            if (v1 != v2 || v2 != v3) {
                per.discrepancy = true;
                per.discrepancy_reason = "route verdicts disagree: ratio=" +
                                         std::to_string(v1) + " filtration=" +
                                         std::to_string(v2) + " tridiagonal=" +
                                         std::to_string(v3);
            } else if (v1) {
                // witness-l agreement: l = i_d = the element of N_d
                const int i_d = per.witness_order->back();
                const int n_d = per.filtration->N[rep.d].front();
                if (per.ratio->ambiguous || !per.ratio->l_witness ||
                    *per.ratio->l_witness != i_d || n_d != i_d) {
                    per.discrepancy = true;
                    per.discrepancy_reason = "witness l disagrees across routes";
                }
            }
            // filtration shape: empty N collapses, positive runs are singletons
            for (int i = 1; i < rep.d; ++i)
                if (per.filtration->N[i].empty() && !per.filtration->N[i + 1].empty()) {
                    per.discrepancy = true;
                    per.discrepancy_reason = "filtration collapse violated";
                }
            if (v2 && per.filtration->order.empty()) {
                per.discrepancy = true;
                per.discrepancy_reason = "positive filtration with non-singleton level";
            }

            if (v1 && per.witness_order) {
                OrderingWitness w{OrderingWitness::Kind::QPoly, *per.witness_order, e};
                per.integrality = integrality_report(basis, w, per.ratio->K);
                if (per.integrality->contradiction) {
                    per.discrepancy = true;
                    per.discrepancy_reason = "integrality hypothesis contradicted";
                }
            }
        }

        try {
            per.ppoly = ppoly_criterion_dual(basis, e, opt.tol);
        } catch (const NotDistinct&) {
            // eigenvalue row has repeats; dual criterion inapplicable for this e
        }

        rep.discrepancy = rep.discrepancy || per.discrepancy;
        rep.per_e.push_back(std::move(per));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// rendering

namespace detail {

inline double round_to(double v, int digits) {
    const double scale = std::pow(10.0, digits);
    double r = std::round(v * scale) / scale;
    if (r == 0.0) r = 0.0; // normalize -0
    return r;
}

inline json matrix_json(const Eigen::MatrixXd& m, int digits) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(round_to(m(i, j), digits));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json matrix_integral_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(is_integral(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json ratio_json(const RatioResult& r, int digits) {
    json out;
    out["is_qpoly"] = r.is_qpoly;
    json k = json::array();
    for (double v : r.K) k.push_back(round_to(v, digits));
    out["K"] = std::move(k);
    if (r.l_witness)
        out["l"] = *r.l_witness;
    else
        out["l"] = nullptr;
    out["matched_ls"] = r.matched_ls;
    out["ambiguous"] = r.ambiguous;
    out["integral_flags"] = r.integral_flags;
    return out;
}

} // namespace detail

inline json report_json(const AnalysisReport& rep) {
    const int digits = rep.digits;
    json doc;
    doc["name"] = rep.name;
    doc["n"] = rep.n;
    doc["d"] = rep.d;
    doc["valencies"] = rep.valencies;
    doc["multiplicities"] = rep.multiplicities;
    doc["P"] = detail::matrix_json(rep.P, digits);
    doc["P_is_integral"] = detail::matrix_integral_json(rep.P);
    doc["Q"] = detail::matrix_json(rep.Q, digits);
    doc["Q_is_integral"] = detail::matrix_integral_json(rep.Q);
    doc["krein_min"] = detail::round_to(rep.krein_min, std::max(digits, 10));

    auto witnesses_json = [](const std::vector<OrderingWitness>& ws) {
        json arr = json::array();
        for (const auto& w : ws) {
            json j;
            j["e"] = w.e;
            j["order"] = w.order;
            arr.push_back(std::move(j));
        }
        return arr;
    };
    doc["q_witnesses"] = witnesses_json(rep.q_witnesses);
    doc["p_witnesses"] = witnesses_json(rep.p_witnesses);

    {
        json s;
        if (rep.suzuki.skipped_m1)
            s["status"] = "m_1 = 2 excluded";
        else if (rep.suzuki.unique)
            s["status"] = "unique ordering";
        else {
            s["status"] = "compared";
            json checks = json::array();
            for (const auto& c : rep.suzuki.checks) {
                json cj;
                cj["other"] = c.other_index;
                cj["pattern"] = c.violation ? json(nullptr) : json(c.pattern);
                cj["violation"] = c.violation;
                checks.push_back(std::move(cj));
            }
            s["checks"] = std::move(checks);
        }
        doc["suzuki"] = std::move(s);
    }

    json blocks = json::array();
    for (const auto& per : rep.per_e) {
        json b;
        b["e"] = per.e;
        json ts = json::array();
        for (double v : per.theta_star) ts.push_back(detail::round_to(v, digits));
        b["theta_star"] = std::move(ts);
        b["theta_star_distinct"] = per.distinct;
        if (per.ratio) b["ratio_criterion"] = detail::ratio_json(*per.ratio, digits);
        if (per.filtration) {
            json f;
            f["N"] = per.filtration->N;
            f["leftover"] = per.filtration->leftover;
            f["is_qpoly"] = per.filtration->is_qpoly;
            f["order"] = per.filtration->order;
            b["filtration"] = std::move(f);
        }
        b["tridiagonal_qpoly"] = per.tridiagonal_qpoly;
        if (per.witness_order) b["witness_order"] = *per.witness_order;
        if (per.integrality) {
            json ij;
            ij["hypothesis"] = per.integrality->hypothesis;
            ij["integral"] = per.integrality->integral;
            ij["contradiction"] = per.integrality->contradiction;
            b["integrality"] = std::move(ij);
        }
        if (per.ppoly) b["ppoly_dual_criterion"] = detail::ratio_json(*per.ppoly, digits);
        b["discrepancy"] = per.discrepancy;
        if (per.discrepancy) b["discrepancy_reason"] = per.discrepancy_reason;
        blocks.push_back(std::move(b));
    }
    doc["per_e"] = std::move(blocks);
    doc["discrepancy"] = rep.discrepancy;
    doc["tol"] = rep.tol;
    doc["seed"] = rep.seed;
    return doc;
}

inline std::string report_machine(const AnalysisReport& rep) {
    return report_json(rep).dump(2) + "\n";
}

inline std::string report_text(const AnalysisReport& rep) {
    std::ostringstream os;
    os << "scheme " << (rep.name.empty() ? "(unnamed)" : rep.name) << "  n=" << rep.n
       << "  d=" << rep.d << "\n";
    os << "valencies     ";
    for (auto v : rep.valencies) os << std::setw(8) << v;
    os << "\nmultiplicities";
    for (auto m : rep.multiplicities) os << std::setw(8) << m;
    os << "\n";

    auto print_matrix = [&](const char* label, const Eigen::MatrixXd& m) {
        os << label << " =\n";
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            os << "  ";
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                os << std::setw(rep.digits + 6) << std::setprecision(rep.digits)
                   << detail::round_to(m(i, j), rep.digits);
            os << "\n";
        }
    };
    print_matrix("P", rep.P);
    print_matrix("Q", rep.Q);
    os << "krein min entry = " << std::setprecision(3) << rep.krein_min << "\n";

    auto print_witnesses = [&](const char* label, const std::vector<OrderingWitness>& ws) {
        os << label << ":";
        if (ws.empty()) os << " none";
        for (const auto& w : ws) {
            os << " (";
            for (std::size_t i = 0; i < w.order.size(); ++i)
                os << (i ? "," : "") << w.order[i];
            os << ")";
        }
        os << "\n";
    };
    print_witnesses("Q-poly orderings", rep.q_witnesses);
    print_witnesses("P-poly orderings", rep.p_witnesses);

    if (rep.suzuki.skipped_m1)
        os << "suzuki: m_1 = 2 excluded\n";
    else if (rep.suzuki.unique)
        os << "suzuki: unique ordering\n";
    else
        for (const auto& c : rep.suzuki.checks)
            os << "suzuki: witness " << c.other_index
               << (c.violation ? " VIOLATION" : " pattern " + std::to_string(c.pattern)) << "\n";

    for (const auto& per : rep.per_e) {
        os << "e=" << per.e << "  theta*=(";
        for (std::size_t i = 0; i < per.theta_star.size(); ++i)
            os << (i ? "," : "") << std::setprecision(rep.digits) << per.theta_star[i];
        os << ")" << (per.distinct ? "" : "  [repeated, criteria skipped]") << "\n";
        if (per.ratio) {
            os << "   ratio criterion: " << (per.ratio->is_qpoly ? "Q-polynomial" : "not Q-poly");
            if (per.ratio->l_witness) os << ", l=" << *per.ratio->l_witness;
            if (per.ratio->ambiguous) os << " AMBIGUOUS";
            os << "  K=(";
            for (std::size_t i = 0; i < per.ratio->K.size(); ++i)
                os << (i ? "," : "") << std::setprecision(rep.digits) << per.ratio->K[i];
            os << ")\n";
        }
        if (per.filtration) {
            os << "   filtration: " << (per.filtration->is_qpoly ? "Q-polynomial" : "not Q-poly");
            if (!per.filtration->order.empty()) {
                os << ", order (";
                for (std::size_t i = 0; i < per.filtration->order.size(); ++i)
                    os << (i ? "," : "") << per.filtration->order[i];
                os << ")";
            }
            os << "\n";
        }
        os << "   tridiagonal: " << (per.tridiagonal_qpoly ? "witness found" : "no witness")
           << "\n";
        if (per.integrality) {
            os << "   integrality: hypothesis "
               << (per.integrality->hypothesis ? "holds" : "fails") << ", K";
            bool all = true;
            for (bool f : per.integrality->integral) all = all && f;
            os << (all ? " all integral" : " has non-integral entries");
            if (per.integrality->contradiction) os << " CONTRADICTION";
            os << "\n";
        }
        if (per.ppoly) {
            os << "   dual criterion: " << (per.ppoly->is_qpoly ? "P-polynomial" : "not P-poly");
            if (per.ppoly->l_witness) os << ", l=" << *per.ppoly->l_witness;
            os << "\n";
        }
        if (per.discrepancy) os << "   DISCREPANCY: " << per.discrepancy_reason << "\n";
    }
    if (rep.discrepancy) os << "DISCREPANCY detected\n";
    return os.str();
}

} // namespace cometric

#endif
