#ifndef COMETRIC_SCHEME_HPP
#define COMETRIC_SCHEME_HPP

#include <cstdint>
#include <queue>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "cometric/errors.hpp"

namespace cometric {

/// Partition of X x X into relations R_0..R_d, stored as a dense class map.
/// Vertices are indexed 0..n-1; rel(x, y) is the class of the pair (x, y).
struct RelationTable {
    int n = 0;
    int d = 0;
    std::vector<int> rel; // n*n, row-major

    RelationTable() = default;
    RelationTable(int n_, int d_) : n(n_), d(d_), rel(static_cast<std::size_t>(n_) * n_, 0) {}

    int operator()(int x, int y) const { return rel[static_cast<std::size_t>(x) * n + y]; }
    int& operator()(int x, int y) { return rel[static_cast<std::size_t>(x) * n + y]; }

    /// 0/1 indicator matrix of relation i (the adjacency matrix A_i).
    Eigen::MatrixXi slice(int i) const {
        Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if ((*this)(x, y) == i) a(x, y) = 1;
        return a;
    }

    Eigen::MatrixXd slice_real(int i) const { return slice(i).cast<double>(); }

    bool operator==(const RelationTable& o) const { return n == o.n && d == o.d && rel == o.rel; }
};

/// Structure constants p_ij^k of the adjacency-matrix basis, plus valencies.
struct IntersectionTensor {
    int d = 0;
    std::vector<long long> p; // (d+1)^3
    std::vector<long long> valency; // k_i = p_ii^0

    explicit IntersectionTensor(int d_)
        : d(d_),
          p(static_cast<std::size_t>(d_ + 1) * (d_ + 1) * (d_ + 1), 0),
          valency(d_ + 1, 0) {}

    long long operator()(int i, int j, int k) const {
        return p[(static_cast<std::size_t>(i) * (d + 1) + j) * (d + 1) + k];
    }
    long long& operator()(int i, int j, int k) {
        return p[(static_cast<std::size_t>(i) * (d + 1) + j) * (d + 1) + k];
    }
};

namespace detail {

inline void check_table_shape(const RelationTable& t) {
    if (t.n < 2) throw SchemeError("need at least 2 points");
    if (t.d < 1) throw SchemeError("need class d >= 1");
    for (int x = 0; x < t.n; ++x)
        for (int y = 0; y < t.n; ++y) {
            int v = t(x, y);
            if (v < 0 || v > t.d) {
                std::ostringstream os;
                os << "rel[" << x << "][" << y << "] = " << v << " out of range 0.." << t.d;
                throw SchemeError(os.str());
            }
        }
}

} // namespace detail

/// Verify the four defining axioms and compute the intersection numbers.
/// Triple counts are taken by direct enumeration over all z, pinned to the
/// first pair seen in each relation class; any disagreement is a NotAScheme.
inline IntersectionTensor validate_axioms(const RelationTable& t) {
    detail::check_table_shape(t);
    const int n = t.n, d = t.d;

    for (int x = 0; x < n; ++x) {
        if (t(x, x) != 0) throw BadDiagonal("rel[x][x] != 0 at x = " + std::to_string(x));
        for (int y = 0; y < n; ++y) {
            if (x != y && t(x, y) == 0)
                throw BadDiagonal("rel[x][y] = 0 off the diagonal at (" + std::to_string(x) +
                                  ", " + std::to_string(y) + ")");
            if (t(x, y) != t(y, x))
                throw NotSymmetric("rel[" + std::to_string(x) + "][" + std::to_string(y) +
                                   "] != rel[" + std::to_string(y) + "][" + std::to_string(x) + "]");
        }
    }

    // a representative pair per class, also catching empty relations
    std::vector<std::pair<int, int>> repr(d + 1, {-1, -1});
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (repr[t(x, y)].first < 0) repr[t(x, y)] = {x, y};
    for (int k = 0; k <= d; ++k)
        if (repr[k].first < 0) throw EmptyRelation("relation " + std::to_string(k) + " is empty");

    IntersectionTensor tensor(d);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            for (int k = 0; k <= d; ++k) {
                auto [rx, ry] = repr[k];
                long long count = 0;
                for (int z = 0; z < n; ++z)
                    if (t(rx, z) == i && t(z, ry) == j) ++count;
                tensor(i, j, k) = count;
            }

    // axiom 4: the count must not depend on the chosen pair
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const int k = t(x, y);
            for (int i = 0; i <= d; ++i) {
                std::vector<long long> count(d + 1, 0);
                for (int z = 0; z < n; ++z) {
                    int jz = t(z, y);
                    if (t(x, z) == i) ++count[jz];
                }
                for (int j = 0; j <= d; ++j)
                    if (count[j] != tensor(i, j, k)) {
                        std::ostringstream os;
                        os << "p_{" << i << "," << j << "}^" << k << " differs: pair ("
                           << repr[k].first << "," << repr[k].second << ") gives "
                           << tensor(i, j, k) << ", pair (" << x << "," << y << ") gives "
                           << count[j];
                        throw NotAScheme(i, j, k, os.str());
                    }
            }
        }

    for (int i = 0; i <= d; ++i) tensor.valency[i] = tensor(i, i, 0);
    return tensor;
}

/// Relation table of the graph-distance partition of a connected graph.
/// Does not itself guarantee the scheme axioms; run validate_axioms after.
inline RelationTable from_distance_partition(const Eigen::MatrixXi& adjacency) {
    const int n = static_cast<int>(adjacency.rows());
    if (adjacency.cols() != n) throw SchemeError("adjacency must be square");
    for (int x = 0; x < n; ++x) {
        if (adjacency(x, x) != 0) throw SchemeError("adjacency diagonal must be zero");
        for (int y = 0; y < n; ++y) {
            if (adjacency(x, y) != adjacency(y, x)) throw SchemeError("adjacency must be symmetric");
            if (adjacency(x, y) != 0 && adjacency(x, y) != 1)
                throw SchemeError("adjacency entries must be 0/1");
        }
    }

    std::vector<int> dist(static_cast<std::size_t>(n) * n, -1);
    int diameter = 0;
    for (int s = 0; s < n; ++s) {
        std::queue<int> q;
        dist[static_cast<std::size_t>(s) * n + s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v)
                if (adjacency(u, v) == 1 && dist[static_cast<std::size_t>(s) * n + v] < 0) {
                    dist[static_cast<std::size_t>(s) * n + v] =
                        dist[static_cast<std::size_t>(s) * n + u] + 1;
                    q.push(v);
                }
        }
        for (int v = 0; v < n; ++v) {
            int dv = dist[static_cast<std::size_t>(s) * n + v];
            if (dv < 0)
                throw Disconnected("no path from " + std::to_string(s) + " to " + std::to_string(v));
            diameter = std::max(diameter, dv);
        }
    }

    RelationTable t(n, diameter);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t(x, y) = dist[static_cast<std::size_t>(x) * n + y];
    return t;
}

} // namespace cometric

#endif
