#ifndef COPOS_GENERATORS_HPP
#define COPOS_GENERATORS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "copos/rng.hpp"
#include "copos/s_family.hpp"
#include "copos/sym_matrix.hpp"

namespace copos {

struct GeneratedInstance {
    SymMatrix matrix;
    std::string kind;
    std::uint64_t seed = 0;
    std::optional<std::array<double, 5>> theta;  // family parameter when applicable
    std::map<std::string, std::string> labels;
};

// Angles for the cyclic T5 edge frame (zero triangle {0,1,4}): sum below pi,
// every component within pi/2, negative base edges, three positive cosine-sum
// entries, and the two dominance inequalities for the zero triangle. These
// are exactly the inequalities the completion step needs.
ThetaVector sample_edge_frame_theta(Rng& rng);

// Completed variant on the sum = pi slice that still carries the T5 sign
// layout (for instances whose PSD part is an exact boundary member).
ThetaVector sample_boundary_frame_theta(Rng& rng);

// The edge restriction of S(theta): family values on the seven T5 edges,
// zeros on the triangle {0,1,4}. Copositive since it dominates S(theta).
SymMatrix t5_edge_matrix(const ThetaVector& theta);

GeneratedInstance gen_horn();
GeneratedInstance gen_s_theta(const ThetaVector& theta);
GeneratedInstance gen_hildebrand(std::uint64_t seed);

enum class T5Flavor {
    Theta,     // exact edge restriction; recovery route
    Slack,     // nonnegative slack on the edges; simplex-search route
    Boundary,  // sum-pi member plus forced fills; trivial completion
    Bordered,  // nonnegative border over a T4 block
    Schur,     // negative degree-2 vertex over a pivot lift
};

GeneratedInstance gen_t5(T5Flavor flavor, std::uint64_t seed);

// Relabeled edge restriction plus nonnegative slack: a matrix that
// entrywise dominates a hidden family member under a hidden permutation.
GeneratedInstance gen_dominating(std::uint64_t seed);

// K_{2,n} instances, n in {1..4}: pivot lifts of T_{n+1} matrices for the
// constructive chain, or entrywise-nonnegative fillings.
GeneratedInstance gen_k2n(int n, std::uint64_t seed);
GeneratedInstance gen_k2n_nonneg(int n, std::uint64_t seed);

enum class T6Flavor {
    Nonneg,     // diagonal plus nonnegative pattern entries (trivially SPN)
    Lift,       // pivot lift of a certifiable T5 instance (SPN, copositive)
    Perturbed,  // lift with signed noise on the edges (status unknown)
};

GeneratedInstance gen_t6(T6Flavor flavor, std::uint64_t seed);

} // namespace copos

#endif
