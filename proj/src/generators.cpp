#include "copos/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "copos/certify.hpp"
#include "copos/graphs.hpp"

namespace copos {

namespace {

constexpr double kPi = std::numbers::pi;

std::string theta_string(const ThetaVector& t) {
    std::string s;
    for (int i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s;
}

std::vector<int> random_perm(Rng& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.uniform_int(0, i)]);
    return p;
}

bool edge_frame_ok(const std::array<double, 5>& t, double margin) {
    const double half = kPi / 2;
    double sum = 0.0;
    for (double v : t) sum += v;
    if (sum > kPi - 3 * margin) return false;
    for (double v : t)
        if (v < margin || v > half - margin) return false;
    if (t[3] + t[4] < half + margin) return false;  // negative (0,3) entry
    if (t[4] + t[0] < half + margin) return false;  // nonpositive (1,4) value
    if (t[0] + t[1] > half - margin) return false;  // positive (0,2) entry
    if (t[1] + t[2] > half - margin) return false;
    if (t[2] + t[3] > half - margin) return false;
    return true;
}

// T4 block used by the bordered and pivot flavors: an edge-frame matrix with
// apex 1 deleted (graph T4, base pair at indices {1,2}).
SymMatrix t4_block(Rng& rng, ThetaVector& theta_out) {
    theta_out = sample_edge_frame_theta(rng);
    return t5_edge_matrix(theta_out).without_index(1);
}

// Triangle matrix used as the T3 target of the K_{2,2} lift: a rank-one
// mixed-sign part filled up by nonnegative entries.
SymMatrix t3_block(Rng& rng) {
    const double a = rng.uniform(0.4, 0.9), b = rng.uniform(0.4, 0.9);
    const std::array<double, 3> p{1.0, -a, b};
    SymMatrix m(3);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) m.set(i, j, p[i] * p[j]);
    for (int i = 0; i < 3; ++i) m.add_at(i, i, rng.uniform(0.05, 0.4));
    m.add_at(1, 2, rng.uniform(0.0, 0.4 * a * b));  // keep the (1,2) edge negative
    return m;
}

// Pivot lift [[1, b'], [b, M + b b']] placing the new vertex at index 0.
SymMatrix pivot_lift(const SymMatrix& m, std::span<const double> b) {
    const int n = m.order();
    SymMatrix a(n + 1);
    a.set(0, 0, 1.0);
    for (int i = 0; i < n; ++i) {
        a.set(0, i + 1, b[i]);
        for (int j = i; j < n; ++j) a.set(i + 1, j + 1, m(i, j) + b[i] * b[j]);
    }
    return a;
}

// Nonnegative slack on existing edges, bounded away from zero so inner
// feasibility problems keep a margin for the projection solver.
void slacken(SymMatrix& m, Rng& rng) {
    const int n = m.order();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (m(i, j) == 0.0) continue;
            const double room = m(i, j) < 0.0 ? 0.2 * -m(i, j) : 0.15;
            m.add_at(i, j, rng.uniform(0.15 * room, room));
        }
}

GeneratedInstance shuffled(GeneratedInstance inst, Rng& rng) {
    const auto perm = random_perm(rng, inst.matrix.order());
    inst.matrix = apply_permutation(inst.matrix, perm);
    return inst;
}

} // namespace

ThetaVector sample_edge_frame_theta(Rng& rng) {
    for (int attempt = 0; attempt < 100'000; ++attempt) {
        std::array<double, 5> t{};
        t[0] = rng.uniform(0.3, 1.2);
        t[1] = rng.uniform(0.05, 0.6);
        t[2] = rng.uniform(0.05, 0.6);
        t[3] = rng.uniform(0.45, 1.35);
        t[4] = rng.uniform(0.45, 1.35);
        if (edge_frame_ok(t, 0.02)) return ThetaVector(t);
    }
    throw std::runtime_error("sample_edge_frame_theta: rejection sampling failed");
}

ThetaVector sample_boundary_frame_theta(Rng& rng) {
    for (int attempt = 0; attempt < 100'000; ++attempt) {
        const ThetaVector t = sample_edge_frame_theta(rng);
        const ThetaVector c = theta_completion(t, 0);
        std::array<double, 5> v = c.values();
        const double half = kPi / 2;
        // The raised component must keep the sign layout intact.
        if (v[0] > half - 1e-3) continue;
        if (v[0] + v[1] > half - 1e-3) continue;
        return c;
    }
    throw std::runtime_error("sample_boundary_frame_theta: rejection sampling failed");
}

SymMatrix t5_edge_matrix(const ThetaVector& theta) {
    SymMatrix b = build_s(theta);
    b.set(0, 1, 0.0);
    b.set(0, 4, 0.0);
    b.set(1, 4, 0.0);
    return b;
}

GeneratedInstance gen_horn() {
    GeneratedInstance inst{horn_matrix(), "horn", 0, std::array<double, 5>{}, {}};
    inst.labels["class"] = to_string(SFamilyClass::Horn);
    return inst;
}

GeneratedInstance gen_s_theta(const ThetaVector& theta) {
    GeneratedInstance inst{build_s(theta), "s-theta", 0, theta.values(), {}};
    inst.labels["class"] = to_string(classify_s(theta));
    inst.labels["theta"] = theta_string(theta);
    return inst;
}

GeneratedInstance gen_hildebrand(std::uint64_t seed) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::array<double, 5> t{};
    double s = 0.0;
    for (double& v : t) {
        v = rng.uniform(0.1, 1.0);
        s += v;
    }
    const double target = rng.uniform(0.2, 0.9) * kPi;
    for (double& v : t) v *= target / s;
    auto inst = gen_s_theta(ThetaVector(t));
    inst.kind = "hildebrand";
    inst.seed = seed;
    return inst;
}

GeneratedInstance gen_t5(T5Flavor flavor, std::uint64_t seed) {
    Rng rng(seed ^ 0xc2b2ae3d27d4eb4full);
    GeneratedInstance inst{SymMatrix(5), "t5-spn", seed, std::nullopt, {}};
    switch (flavor) {
        case T5Flavor::Theta: {
            const ThetaVector t = sample_edge_frame_theta(rng);
            inst.matrix = t5_edge_matrix(t);
            inst.theta = t.values();
            inst.labels["route"] = "theta";
            inst.labels["theta"] = theta_string(t);
            break;
        }
        case T5Flavor::Slack: {
            const ThetaVector t = sample_edge_frame_theta(rng);
            SymMatrix b = t5_edge_matrix(t);
            // Nonnegative slack on the edges only; signs and zeros survive.
            for (int i = 0; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j) {
                    if (b(i, j) == 0.0) continue;
                    const double room =
                        b(i, j) < 0.0 ? 0.25 * -b(i, j) : 0.2;
                    b.add_at(i, j, rng.uniform(0.0, room));
                }
            inst.matrix = b;
            inst.theta = t.values();
            inst.labels["route"] = "search";
            break;
        }
        case T5Flavor::Boundary: {
            const ThetaVector tp = sample_boundary_frame_theta(rng);
            SymMatrix a = build_s(tp);
            // Force the zero triangle; the edges keep exact family values, so
            // the decomposition slack lives entirely on the triangle fills.
            a.set(0, 1, 0.0);
            a.set(0, 4, 0.0);
            a.set(1, 4, 0.0);
            inst.matrix = a;
            inst.theta = tp.values();
            inst.labels["route"] = "boundary";
            inst.labels["theta"] = theta_string(tp);
            break;
        }
        case T5Flavor::Bordered: {
            ThetaVector t(0, 0, 0, 0, 0);
            SymMatrix inner = t4_block(rng, t);
            slacken(inner, rng);
            SymMatrix a(5);
            a.set(0, 0, 1.0);
            // Base pair of the T4 block sits at inner indices {1,2}.
            a.set(0, 2, rng.uniform(0.2, 0.9));
            a.set(0, 3, rng.uniform(0.2, 0.9));
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) a.set(i + 1, j + 1, inner(i, j));
            inst.matrix = a;
            inst.labels["route"] = "bordered";
            break;
        }
        case T5Flavor::Schur: {
            ThetaVector t(0, 0, 0, 0, 0);
            SymMatrix inner = t4_block(rng, t);
            slacken(inner, rng);
            // Negative entries toward the base pair, small enough to keep the
            // base edge negative after the b b' correction.
            const double base = inner(1, 2);  // negative
            const double cap = std::sqrt(0.5 * -base);
            std::array<double, 4> b{0.0, -rng.uniform(0.1, cap), -rng.uniform(0.1, cap), 0.0};
            inst.matrix = pivot_lift(inner, b);
            inst.labels["route"] = "schur";
            break;
        }
    }
    return shuffled(std::move(inst), rng);
}

GeneratedInstance gen_dominating(std::uint64_t seed) {
    auto inst = gen_t5(T5Flavor::Slack, seed ^ 0xa54ff53a5f1d36f1ull);
    inst.kind = "dominating";
    inst.seed = seed;
    inst.labels["route"] = "dominates-family-member";
    return inst;
}

GeneratedInstance gen_k2n(int n, std::uint64_t seed) {
    if (n < 1 || n > 4) throw std::invalid_argument("gen_k2n: n must be in 1..4");
    Rng rng(seed ^ 0x510e527fade682d1ull);
    GeneratedInstance inst{SymMatrix(n + 2), "k2n", seed, std::nullopt, {}};
    inst.labels["n"] = std::to_string(n);

    if (n == 1) {
        // Path u - w - v with nonnegative entries.
        SymMatrix a = SymMatrix::identity(3);
        a.set(0, 2, rng.uniform(0.1, 0.9));
        a.set(1, 2, rng.uniform(0.1, 0.9));
        inst.matrix = a;
        inst.labels["route"] = "nonneg";
        return shuffled(std::move(inst), rng);
    }

    // Pivot lift of a T_{n+1} matrix: the new vertex takes two negative
    // edges to the base pair whose product cancels the base edge exactly.
    SymMatrix m(3);
    int base_i = 0, base_j = 1;
    if (n == 2) {
        m = t3_block(rng);
        base_i = 0;
        base_j = 1;
    } else if (n == 3) {
        ThetaVector t(0, 0, 0, 0, 0);
        m = t4_block(rng, t);
        slacken(m, rng);
        base_i = 1;
        base_j = 2;
    } else {
        const ThetaVector t = sample_edge_frame_theta(rng);
        m = t5_edge_matrix(t);
        inst.theta = t.values();
        base_i = 2;
        base_j = 3;
    }
    const double base = m(base_i, base_j);
    if (!(base < 0.0)) throw std::logic_error("gen_k2n: base edge must be negative");
    const double t0 = rng.uniform(0.3, 1.0);
    std::vector<double> b(static_cast<std::size_t>(m.order()), 0.0);
    b[base_i] = -t0;
    b[base_j] = base / t0;  // (-t0) * (base/t0) = -base cancels the entry
    inst.matrix = pivot_lift(m, b);
    inst.labels["route"] = "lift";
    return shuffled(std::move(inst), rng);
}

GeneratedInstance gen_k2n_nonneg(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_k2n_nonneg: n must be >= 1");
    Rng rng(seed ^ 0x9b05688c2b3e6c1full);
    SymMatrix a = SymMatrix::identity(n + 2);
    for (int w = 2; w < n + 2; ++w) {
        a.set(0, w, rng.uniform(0.1, 1.0));
        a.set(1, w, rng.uniform(0.1, 1.0));
    }
    GeneratedInstance inst{std::move(a), "k2n", seed, std::nullopt, {}};
    inst.labels["n"] = std::to_string(n);
    inst.labels["route"] = "nonneg";
    return shuffled(std::move(inst), rng);
}

GeneratedInstance gen_t6(T6Flavor flavor, std::uint64_t seed) {
    Rng rng(seed ^ 0x1f83d9abfb41bd6bull);
    GeneratedInstance inst{SymMatrix(6), "t6", seed, std::nullopt, {}};
    switch (flavor) {
        case T6Flavor::Nonneg: {
            SymMatrix a = SymMatrix::identity(6);
            for (int apex = 0; apex < 4; ++apex) {
                a.set(apex, 4, rng.uniform(0.05, 1.0));
                a.set(apex, 5, rng.uniform(0.05, 1.0));
            }
            a.set(4, 5, rng.uniform(0.05, 1.0));
            inst.matrix = a;
            inst.labels["flavor"] = "nonneg";
            break;
        }
        case T6Flavor::Lift:
        case T6Flavor::Perturbed: {
            const ThetaVector t = sample_edge_frame_theta(rng);
            const SymMatrix m = t5_edge_matrix(t);
            // Another apex joins the base pair {2,3} with negative edges.
            const double cap = std::sqrt(0.5 * -m(2, 3));
            std::array<double, 5> b{0.0, 0.0, -rng.uniform(0.1, cap), -rng.uniform(0.1, cap),
                                    0.0};
            SymMatrix a = pivot_lift(m, b);
            if (flavor == T6Flavor::Perturbed) {
                for (int i = 0; i < 6; ++i)
                    for (int j = i + 1; j < 6; ++j) {
                        if (a(i, j) == 0.0) continue;
                        const double mag = 0.12 * std::abs(a(i, j));
                        a.add_at(i, j, rng.uniform(-mag, mag));
                    }
                inst.labels["flavor"] = "perturbed-lift";
            } else {
                inst.labels["flavor"] = "lift";
            }
            inst.matrix = a;
            break;
        }
    }
    return shuffled(std::move(inst), rng);
}

} // namespace copos
