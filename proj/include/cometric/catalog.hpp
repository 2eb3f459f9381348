#ifndef COMETRIC_CATALOG_HPP
#define COMETRIC_CATALOG_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cometric/scheme.hpp"

namespace cometric {

constexpr long long kCatalogSizeCap = 4096;

struct CatalogEntry {
    std::string name;
    RelationTable table;
};

/// Distance scheme of the n-cycle; d = floor(n/2).
inline CatalogEntry cycle(int n) {
    if (n < 3) throw SchemeError("cycle needs n >= 3");
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
    for (int v = 0; v < n; ++v) {
        adj(v, (v + 1) % n) = 1;
        adj((v + 1) % n, v) = 1;
    }
    return {"cycle:" + std::to_string(n), from_distance_partition(adj)};
}

/// Hamming scheme H(d, q): q-ary d-tuples, relation = Hamming distance.
inline CatalogEntry hamming(int d, int q) {
    if (d < 1 || q < 2) throw SchemeError("hamming needs d >= 1, q >= 2");
    long long n = 1;
    for (int i = 0; i < d; ++i) {
        n *= q;
        if (n > kCatalogSizeCap) throw TooLarge("hamming(" + std::to_string(d) + "," +
                                                std::to_string(q) + ") exceeds the size cap");
    }
    auto digit = [&](long long w, int pos) {
        for (int i = 0; i < pos; ++i) w /= q;
        return static_cast<int>(w % q);
    };
    RelationTable t(static_cast<int>(n), d);
    for (long long x = 0; x < n; ++x)
        for (long long y = 0; y < n; ++y) {
            int dist = 0;
            for (int pos = 0; pos < d; ++pos)
                if (digit(x, pos) != digit(y, pos)) ++dist;
            t(static_cast<int>(x), static_cast<int>(y)) = dist;
        }
    return {"hamming:" + std::to_string(d) + "," + std::to_string(q), t};
}

/// Johnson scheme J(v, k) on k-subsets; relation i = k - |A intersect B|,
/// the graph-distance convention in the Johnson graph.
inline CatalogEntry johnson(int v, int k) {
    if (k < 1 || 2 * k > v) throw SchemeError("johnson needs 1 <= k <= v/2");
    std::vector<unsigned> subsets;
    for (unsigned mask = 0; mask < (1u << v); ++mask)
        if (__builtin_popcount(mask) == k) subsets.push_back(mask);
    const long long n = static_cast<long long>(subsets.size());
    if (n > kCatalogSizeCap)
        throw TooLarge("johnson(" + std::to_string(v) + "," + std::to_string(k) +
                       ") exceeds the size cap");
    RelationTable t(static_cast<int>(n), k);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            t(x, y) = k - __builtin_popcount(subsets[x] & subsets[y]);
    return {"johnson:" + std::to_string(v) + "," + std::to_string(k), t};
}

/// Distance scheme of the icosahedron, n = 12, d = 3. Hard-coded edge list.
inline CatalogEntry icosahedron() {
    // vertex 0 and 11 antipodal; 1..5 around 0, 6..10 around 11
    static constexpr std::array<std::pair<int, int>, 30> edges{{
        {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5},
        {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1},
        {11, 6}, {11, 7}, {11, 8}, {11, 9}, {11, 10},
        {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 6},
        {1, 6}, {1, 7}, {2, 7}, {2, 8}, {3, 8},
        {3, 9}, {4, 9}, {4, 10}, {5, 10}, {5, 6},
    }};
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(12, 12);
    for (auto [a, b] : edges) {
        adj(a, b) = 1;
        adj(b, a) = 1;
    }
    return {"icosahedron", from_distance_partition(adj)};
}

/// Distance scheme of the Petersen graph (2-subsets of a 5-set, adjacent
/// when disjoint), n = 10, d = 2.
inline CatalogEntry petersen() {
    std::vector<unsigned> subsets;
    for (unsigned mask = 0; mask < 32; ++mask)
        if (__builtin_popcount(mask) == 2) subsets.push_back(mask);
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(10, 10);
    for (int x = 0; x < 10; ++x)
        for (int y = 0; y < 10; ++y)
            if (x != y && (subsets[x] & subsets[y]) == 0) adj(x, y) = 1;
    return {"petersen", from_distance_partition(adj)};
}

/// Resolve a catalog name such as "petersen", "cycle:5", "hamming:3,2",
/// "johnson:5,2", "icosahedron".
inline CatalogEntry catalog_lookup(const std::string& name) {
    auto parse_args = [&](const std::string& s) {
        std::vector<int> out;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t comma = s.find(',', pos);
            std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
            try {
                out.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw UnknownName("bad catalog argument '" + tok + "' in '" + name + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return out;
    };
    const std::size_t colon = name.find(':');
    const std::string head = name.substr(0, colon);
    const std::vector<int> args =
        colon == std::string::npos ? std::vector<int>{} : parse_args(name.substr(colon + 1));

    if (head == "petersen" && args.empty()) return petersen();
    if (head == "icosahedron" && args.empty()) return icosahedron();
    if (head == "cycle" && args.size() == 1) return cycle(args[0]);
    if (head == "hamming" && args.size() == 2) return hamming(args[0], args[1]);
    if (head == "johnson" && args.size() == 2) return johnson(args[0], args[1]);
    throw UnknownName("unknown catalog name '" + name + "'");
}

/// The fixed reference list used by tests and demos.
inline std::vector<std::string> catalog_names() {
    std::vector<std::string> names{"petersen", "icosahedron"};
    for (int n = 4; n <= 12; ++n) names.push_back("cycle:" + std::to_string(n));
    for (int d = 2; d <= 4; ++d) names.push_back("hamming:" + std::to_string(d) + ",2");
    names.push_back("hamming:2,3");
    names.push_back("johnson:5,2");
    names.push_back("johnson:4,2");
    return names;
}

} // namespace cometric

#endif
