#ifndef COPOS_GRAPHS_HPP
#define COPOS_GRAPHS_HPP

#include <optional>
#include <vector>

#include "copos/sym_matrix.hpp"

namespace copos {

enum class EdgeSign { Positive, Negative };

struct SignedEdge {
    int i = 0;  // i < j
    int j = 0;
    EdgeSign sign = EdgeSign::Positive;
    friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

// Vertex set {0..order-1} plus signed edges, kept sorted by (i, j).
struct SignedGraph {
    int order = 0;
    std::vector<SignedEdge> edges;

    bool has_edge(int i, int j) const;
    std::optional<EdgeSign> sign_of(int i, int j) const;
    int degree(int v) const;
    std::vector<int> neighbors(int v) const;
    friend bool operator==(const SignedGraph&, const SignedGraph&) = default;
};

// G(A): edge (i,j,+) iff a_ij > zero_tol, (i,j,-) iff a_ij < -zero_tol.
SignedGraph graph_of(const SymMatrix& a, double zero_tol = 1e-12);

enum class PatternKind {
    T5Pattern,  // the signed T5 layout used by the degree-2-free branch
    Tn,         // unsigned T_n shape (T5 with a different signing, or larger n)
    K2n,
    Other,
};

const char* to_string(PatternKind k);

struct PatternMatch {
    PatternKind kind = PatternKind::Other;
    // apply_permutation(A, permutation) has the canonical layout for `kind`.
    std::vector<int> permutation;
    int n = 0;  // family parameter: 5 for T5, n for K_{2,n} / T_n
    // K2n: a part-two vertex of degree 2 whose two edges are both negative.
    std::optional<int> negative_pair_vertex;
};

// Canonical unsigned T_n: base edge (n-2, n-1), apexes 0..n-3 joined to both.
SignedGraph canonical_tn(int n);
// Canonical K_{2,n}: parts {0, 1} and {2..n+1}, all edges positive.
SignedGraph canonical_k2n(int n);

// Signed T5 recognition per the canonical layout (zero block on {0,1,2},
// negatives {03, 13, 24, 34}, positives {04, 14, 23}). Exhaustive search over
// all 120 relabelings; the lexicographically smallest match wins. Returns
// kind Tn when the unsigned shape is T5 but the signing differs, and nullopt
// when the graph is not T5 at all.
std::optional<PatternMatch> match_t5(const SymMatrix& a);

// K_{2,n} recognition for order n+2 matrices (n >= 1).
std::optional<PatternMatch> match_k2n(const SymMatrix& a);

struct NegativeSubgraph {
    SignedGraph graph;      // edges restricted to sign -
    bool connected = false; // on the full vertex set
};

NegativeSubgraph negative_subgraph(const SignedGraph& g);

} // namespace copos

#endif
