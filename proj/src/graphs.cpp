#include "copos/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace copos {

bool SignedGraph::has_edge(int i, int j) const { return sign_of(i, j).has_value(); }

std::optional<EdgeSign> SignedGraph::sign_of(int i, int j) const {
    if (i == j) return std::nullopt;
    if (i > j) std::swap(i, j);
    for (const auto& e : edges)
        if (e.i == i && e.j == j) return e.sign;
    return std::nullopt;
}

int SignedGraph::degree(int v) const {
    int d = 0;
    for (const auto& e : edges)
        if (e.i == v || e.j == v) ++d;
    return d;
}

std::vector<int> SignedGraph::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& e : edges) {
        if (e.i == v) out.push_back(e.j);
        if (e.j == v) out.push_back(e.i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SignedGraph graph_of(const SymMatrix& a, double zero_tol) {
    SignedGraph g;
    g.order = a.order();
    for (int i = 0; i < a.order(); ++i)
        for (int j = i + 1; j < a.order(); ++j) {
            const double v = a(i, j);
            if (v > zero_tol)
                g.edges.push_back({i, j, EdgeSign::Positive});
            else if (v < -zero_tol)
                g.edges.push_back({i, j, EdgeSign::Negative});
        }
    return g;
}

const char* to_string(PatternKind k) {
    switch (k) {
        case PatternKind::T5Pattern: return "T5_PATTERN";
        case PatternKind::Tn: return "TN";
        case PatternKind::K2n: return "K2N";
        case PatternKind::Other: return "OTHER";
    }
    return "?";
}

SignedGraph canonical_tn(int n) {
    if (n < 3) throw std::invalid_argument("canonical_tn: n must be >= 3");
    SignedGraph g;
    g.order = n;
    for (int apex = 0; apex < n - 2; ++apex) {
        g.edges.push_back({apex, n - 2, EdgeSign::Positive});
        g.edges.push_back({apex, n - 1, EdgeSign::Positive});
    }
    g.edges.push_back({n - 2, n - 1, EdgeSign::Positive});
    std::sort(g.edges.begin(), g.edges.end(), [](const SignedEdge& x, const SignedEdge& y) {
        return std::pair(x.i, x.j) < std::pair(y.i, y.j);
    });
    return g;
}

SignedGraph canonical_k2n(int n) {
    if (n < 1) throw std::invalid_argument("canonical_k2n: n must be >= 1");
    SignedGraph g;
    g.order = n + 2;
    for (int w = 2; w < n + 2; ++w) {
        g.edges.push_back({0, w, EdgeSign::Positive});
        g.edges.push_back({1, w, EdgeSign::Positive});
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const SignedEdge& x, const SignedEdge& y) {
        return std::pair(x.i, x.j) < std::pair(y.i, y.j);
    });
    return g;
}

namespace {

// Sign codes: 0 none, +1 positive, -1 negative.
int sign_code(const SymMatrix& a, int i, int j, double tol) {
    const double v = a(i, j);
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

// Signed canonical T5 layout. Zero block on {0,1,2}; apexes 0 and 1 carry
// (-, +) toward (3, 4); apex 2 carries (+, -); base edge (3,4) is negative.
constexpr int kT5Sign[5][5] = {{0, 0, 0, -1, 1},
                               {0, 0, 0, -1, 1},
                               {0, 0, 0, 1, -1},
                               {-1, -1, 1, 0, -1},
                               {1, 1, -1, -1, 0}};

} // namespace

std::optional<PatternMatch> match_t5(const SymMatrix& a) {
    if (a.order() != 5) return std::nullopt;
    constexpr double tol = 1e-12;

    int code[5][5];
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) code[i][j] = (i == j) ? 0 : sign_code(a, i, j, tol);

    std::array<int, 5> perm{0, 1, 2, 3, 4};
    std::optional<PatternMatch> shape_match;
    do {
        bool signs_ok = true, shape_ok = true;
        for (int i = 0; i < 5 && shape_ok; ++i)
            for (int j = i + 1; j < 5; ++j) {
                const int c = code[perm[i]][perm[j]];
                const int want = kT5Sign[i][j];
                if (c != want) signs_ok = false;
                if ((c == 0) != (want == 0)) {
                    shape_ok = false;
                    break;
                }
            }
        if (signs_ok) {
            PatternMatch m;
            m.kind = PatternKind::T5Pattern;
            m.permutation.assign(perm.begin(), perm.end());
            m.n = 5;
            return m;
        }
        if (shape_ok && !shape_match) {
            PatternMatch m;
            m.kind = PatternKind::Tn;
            m.permutation.assign(perm.begin(), perm.end());
            m.n = 5;
            shape_match = std::move(m);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return shape_match;
}

std::optional<PatternMatch> match_k2n(const SymMatrix& a) {
    const int order = a.order();
    const int n = order - 2;
    if (n < 1) return std::nullopt;
    const SignedGraph g = graph_of(a);

    std::optional<PatternMatch> best;
    for (int u = 0; u < order; ++u) {
        for (int v = u + 1; v < order; ++v) {
            if (g.has_edge(u, v)) continue;
            bool ok = true;
            for (int w = 0; w < order && ok; ++w) {
                if (w == u || w == v) continue;
                if (!g.has_edge(u, w) || !g.has_edge(v, w)) ok = false;
                for (int x = w + 1; x < order && ok; ++x) {
                    if (x == u || x == v) continue;
                    if (g.has_edge(w, x)) ok = false;
                }
            }
            if (!ok) continue;
            PatternMatch m;
            m.kind = PatternKind::K2n;
            m.n = n;
            m.permutation = {u, v};
            for (int w = 0; w < order; ++w)
                if (w != u && w != v) m.permutation.push_back(w);
            for (int w = 0; w < order; ++w) {
                if (w == u || w == v) continue;
                if (g.sign_of(u, w) == EdgeSign::Negative &&
                    g.sign_of(v, w) == EdgeSign::Negative) {
                    m.negative_pair_vertex = w;
                    break;
                }
            }
            if (!best || m.permutation < best->permutation) best = std::move(m);
        }
    }
    return best;
}

NegativeSubgraph negative_subgraph(const SignedGraph& g) {
    NegativeSubgraph out;
    out.graph.order = g.order;
    for (const auto& e : g.edges)
        if (e.sign == EdgeSign::Negative) out.graph.edges.push_back(e);

    std::vector<int> stack{0};
    std::vector<bool> seen(static_cast<std::size_t>(g.order), false);
    if (g.order > 0) seen[0] = true;
    int reached = g.order > 0 ? 1 : 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& e : out.graph.edges) {
            const int w = (e.i == v) ? e.j : (e.j == v ? e.i : -1);
            if (w >= 0 && !seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    out.connected = (reached == g.order);
    return out;
}

} // namespace copos
