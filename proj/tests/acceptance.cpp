// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion pins its tolerances in code.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "copos/certify.hpp"
#include "copos/cones.hpp"
#include "copos/dense.hpp"
#include "copos/generators.hpp"
#include "copos/graphs.hpp"
#include "copos/rng.hpp"
#include "copos/s_family.hpp"
#include "copos/search.hpp"
#include "oracles.hpp"

using namespace copos;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
    int id;
    const char* summary;
    std::function<bool(std::string&)> run;
};

ThetaVector random_theta(Rng& rng, double lo_frac, double hi_frac, double comp_lo = 0.0) {
    std::array<double, 5> u{};
    double s = 0.0;
    for (double& v : u) {
        v = rng.uniform(comp_lo, 1.0);
        s += v;
    }
    const double target = rng.uniform(lo_frac, hi_frac) * kPi;
    for (double& v : u) v *= target / s;
    return ThetaVector(u);
}

SymMatrix random_sym(Rng& rng, int n, double lo, double hi) {
    SymMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) a.set(i, j, rng.uniform(lo, hi));
    return a;
}

SymMatrix random_spn(Rng& rng, int n, double margin) {
    SymMatrix a(n);
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int r = 0; r < 2; ++r) {
        for (double& v : col) v = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) a.add_at(i, j, col[i] * col[j]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) a.add_at(i, j, rng.uniform(0.0, 0.5));
    for (int i = 0; i < n; ++i) a.add_at(i, i, margin);
    return a;
}

// --------------------------------------------------------------------------
// 1. Horn fixture.
bool crit_horn(std::string& detail) {
    const SymMatrix h = build_s(ThetaVector(0, 0, 0, 0, 0));
    const SymMatrix expected = SymMatrix::from_rows({{1, -1, 1, 1, -1},
                                                     {-1, 1, -1, 1, 1},
                                                     {1, -1, 1, -1, 1},
                                                     {1, 1, -1, 1, -1},
                                                     {-1, 1, 1, -1, 1}});
    if (max_abs_diff(h, expected) != 0.0) {
        detail = "explicit Horn matrix mismatch";
        return false;
    }
    const auto cv = check_copositive(h);
    if (cv.status != CopositivityStatus::Copositive) {
        detail = "Horn not certified copositive";
        return false;
    }
    const auto sv = check_spn(h, 50'000, 1e-8);
    if (sv.certificate || sv.gap <= 1e-4) {
        detail = "expected NOT_FOUND with gap > 1e-4, gap = " + std::to_string(sv.gap);
        return false;
    }
    detail = "gap " + std::to_string(sv.gap);
    return true;
}

// 2. Sum-pi members: PSD, rank <= 2, rank-2 factors reproduce.
bool crit_boundary(std::string& detail) {
    Rng rng(2001);
    for (int t = 0; t < 1000; ++t) {
        const ThetaVector theta = random_theta(rng, 1.0, 1.0);
        const SymMatrix s = build_s(theta);
        std::array<double, 64> full{};
        s.to_full(full.data());
        const auto eig = dense::jacobi_eig(full.data(), 5);
        if (eig.values[0] < -1e-9) {
            detail = "negative eigenvalue " + std::to_string(eig.values[0]);
            return false;
        }
        // singular values of a symmetric matrix are the absolute eigenvalues
        std::array<double, 5> abs_eigs{};
        for (int i = 0; i < 5; ++i) abs_eigs[i] = std::abs(eig.values[i]);
        std::sort(abs_eigs.rbegin(), abs_eigs.rend());
        if (abs_eigs[2] > 1e-9) {
            detail = "third singular value " + std::to_string(abs_eigs[2]);
            return false;
        }
        const auto f = rank2_factors(theta);
        if (max_abs_diff(f.compose(), s) > 1e-10) {
            detail = "rank-2 factors residual too large";
            return false;
        }
    }
    return true;
}

// 3. Random family members are certified copositive within depth 24.
bool crit_copositive_sweep(std::string& detail) {
    Rng rng(2003);
    int max_depth_seen = 0;
    for (int t = 0; t < 100; ++t) {
        // Valid angles with the sum spread over (0, 0.9 pi]; every sixth draw
        // zeroes a component to cover the one-sided boundary classes.
        std::array<double, 5> u{};
        double s = 0.0;
        for (double& v : u) {
            v = rng.uniform(0.0, 1.0);
            s += v;
        }
        const double frac = rng.uniform(0.05, 0.9);
        for (double& v : u) v *= frac * kPi / s;
        if (t % 6 == 0) u[t % 5] = 0.0;
        const auto v = check_copositive(build_s(ThetaVector(u)));
        if (v.status != CopositivityStatus::Copositive || v.depth > 24) {
            detail = "sample " + std::to_string(t) + " -> " + to_string(v.status) +
                     " at depth " + std::to_string(v.depth);
            return false;
        }
        max_depth_seen = std::max(max_depth_seen, v.depth);
    }
    detail = "max depth " + std::to_string(max_depth_seen);
    return true;
}

// 4. Hildebrand members resist the SPN search with a visible gap.
bool crit_hildebrand_gap(std::string& detail) {
    Rng rng(2004);
    double min_gap = 1e9;
    for (int t = 0; t < 50; ++t) {
        const ThetaVector theta = random_theta(rng, 0.2, 0.9, 0.1);
        const auto r = check_spn(build_s(theta), 50'000, 1e-8);
        if (r.certificate) {
            detail = "unexpected decomposition at sample " + std::to_string(t);
            return false;
        }
        min_gap = std::min(min_gap, r.gap);
    }
    if (min_gap <= 1e-6) {
        detail = "gap " + std::to_string(min_gap) + " not bounded away from zero";
        return false;
    }
    detail = "min gap " + std::to_string(min_gap);
    return true;
}

// 5. Constructive T5 suite across all three routes.
bool crit_t5_suite(std::string& detail) {
    Rng rng(2005);
    int counts[3] = {0, 0, 0};  // bordered, schur, theta
    const T5Flavor plan[] = {T5Flavor::Bordered, T5Flavor::Schur, T5Flavor::Theta,
                             T5Flavor::Bordered, T5Flavor::Schur, T5Flavor::Boundary,
                             T5Flavor::Bordered, T5Flavor::Schur, T5Flavor::Slack};
    for (int t = 0; t < 200; ++t) {
        const auto inst = gen_t5(plan[t % 9], rng.bits());
        CertifyTrace trace;
        try {
            trace = certify_t5(inst.matrix);
        } catch (const certify_error& e) {
            detail = "sample " + std::to_string(t) + ": " + e.what();
            return false;
        }
        trace.certificate.tol = 1e-8;
        if (!validate_certificate(inst.matrix, trace.certificate)) {
            detail = "certificate failed validation at sample " + std::to_string(t);
            return false;
        }
        if (trace.route == CertifyRoute::Bordered) ++counts[0];
        if (trace.route == CertifyRoute::SchurReduce) ++counts[1];
        if (trace.route == CertifyRoute::ThetaCompletion) ++counts[2];
    }
    detail = "routes bordered/schur/theta = " + std::to_string(counts[0]) + "/" +
             std::to_string(counts[1]) + "/" + std::to_string(counts[2]);
    return counts[0] >= 50 && counts[1] >= 50 && counts[2] >= 50;
}

// 6. Completion ledger.
bool crit_completion(std::string& detail) {
    Rng rng(2006);
    for (int t = 0; t < 1000; ++t) {
        const ThetaVector theta = sample_edge_frame_theta(rng);
        for (const int l : {0, 3}) {
            ThetaVector tp(0, 0, 0, 0, 0);
            try {
                tp = theta_completion(theta, l);
            } catch (const std::exception& e) {
                detail = "completion rejected a valid sample: " + std::string(e.what());
                return false;
            }
            double rest = 0.0;
            for (int i = 0; i < 5; ++i)
                if (i != l) rest += tp[i];
            if (rest + tp[l] != kPi) {
                detail = "sum not exactly pi at sample " + std::to_string(t);
                return false;
            }
            if (!(tp[l] > theta[l]) || tp[l] > kPi / 2 + 1e-12) {
                detail = "completed component out of range";
                return false;
            }
            const SymMatrix lo = build_s(tp);
            const SymMatrix hi = build_s(theta);
            for (int i = 0; i < 5; ++i) {
                if (lo(i, cyc(i, 2)) > hi(i, cyc(i, 2)) + 1e-14) {
                    detail = "cosine-sum entry not dominated";
                    return false;
                }
                if (i != l && lo(i, cyc(i, 1)) != hi(i, cyc(i, 1))) {
                    detail = "direct entry changed off the completion index";
                    return false;
                }
            }
        }
    }
    return true;
}

// 7. K_{2,n} suite.
bool crit_k2n_suite(std::string& detail) {
    Rng rng(2007);
    for (int t = 0; t < 50; ++t) {
        const int n = (t % 2 == 0) ? 3 : 4;
        const auto inst = gen_k2n(n, rng.bits());
        CertifyTrace trace;
        try {
            trace = certify_k2n(inst.matrix);
        } catch (const std::exception& e) {
            detail = "K2," + std::to_string(n) + " sample " + std::to_string(t) + ": " +
                     e.what();
            return false;
        }
        trace.certificate.tol = 1e-8;
        if (!validate_certificate(inst.matrix, trace.certificate)) {
            detail = "certificate failed validation at sample " + std::to_string(t);
            return false;
        }
    }
    try {
        certify_k2n(gen_k2n_nonneg(5, 99).matrix);
        detail = "K2,5 was not rejected";
        return false;
    } catch (const out_of_proved_range&) {
    }
    return true;
}

// 8. Oracle equivalence on small orders.
bool crit_oracles(std::string& detail) {
    Rng rng(2008);
    int kept = 0;
    while (kept < 200) {
        const int n = (kept % 2 == 0) ? 3 : 4;
        SymMatrix a = (kept % 4 < 2) ? random_sym(rng, n, -1.0, 1.0)
                                     : random_spn(rng, n, rng.uniform(0.01, 0.3));
        const int m = (n == 3) ? 1414 : 180;  // about 1e6 grid points each
        const double gmin = oracles::simplex_grid_min(a, m);
        if (std::abs(gmin) < 5e-4) continue;
        ++kept;
        const auto v = check_copositive(a);
        const bool mine = v.status == CopositivityStatus::Copositive;
        const bool oracle = gmin > -1e-6;
        if (mine != oracle) {
            detail = "copositivity disagreement (grid min " + std::to_string(gmin) + ")";
            return false;
        }
    }

    // Down-set search on order 3 via the refined brute-force oracle.
    kept = 0;
    while (kept < 200) {
        SymMatrix a = (kept % 2 == 0) ? random_sym(rng, 3, -1.0, 1.0)
                                      : random_spn(rng, 3, rng.uniform(0.05, 0.3));
        const double gmin = oracles::simplex_grid_min(a, 400);
        if (std::abs(gmin) < 1e-2) continue;  // order 3: copositive iff SPN
        ++kept;
        const bool mine = check_spn(a, 20'000, 1e-8).certificate.has_value();
        if (mine != oracles::downset_finds(a)) {
            detail = "down-set disagreement (grid min " + std::to_string(gmin) + ")";
            return false;
        }
    }
    return true;
}

// 9. Lift round-trips and scaling back-transforms.
bool crit_lifts(std::string& detail) {
    Rng rng(2009);
    for (int t = 0; t < 1000; ++t) {
        const int n = rng.uniform_int(3, 6);
        SymMatrix p0(n - 1), n0(n - 1);
        std::vector<double> col(static_cast<std::size_t>(n) - 1);
        for (int r = 0; r < 2; ++r) {
            for (double& v : col) v = rng.uniform(-1.0, 1.0);
            for (int i = 0; i < n - 1; ++i)
                for (int j = i; j < n - 1; ++j) p0.add_at(i, j, col[i] * col[j]);
        }
        for (int i = 0; i < n - 1; ++i)
            for (int j = i; j < n - 1; ++j) n0.set(i, j, rng.uniform(0.0, 0.7));
        const SpnCertificate inner{p0, n0, 1e-10};

        const int k = rng.uniform_int(0, n - 1);
        const double d = rng.uniform(0.4, 2.0);
        std::vector<double> b(static_cast<std::size_t>(n) - 1);
        for (double& v : b) v = rng.uniform(-1.0, 1.0);
        SymMatrix a(n);
        a.set(k, k, d);
        for (int i = 0, ii = 0; i < n; ++i) {
            if (i == k) continue;
            a.set(std::min(i, k), std::max(i, k), b[ii]);
            for (int j = i, jj = ii; j < n; ++j) {
                if (j == k) continue;
                a.set(i, j, p0(ii, jj) + n0(ii, jj) + b[ii] * b[jj] / d);
                ++jj;
            }
            ++ii;
        }
        const auto ls = lift_schur(a, k, inner);
        if (!validate_certificate(a, ls) || max_abs_diff(ls.p + ls.n, a) > 1e-10) {
            detail = "pivot lift failed at sample " + std::to_string(t);
            return false;
        }

        SymMatrix ab(n);
        ab.set(k, k, rng.uniform(0.0, 2.0));
        for (int i = 0, ii = 0; i < n; ++i) {
            if (i == k) continue;
            ab.set(std::min(i, k), std::max(i, k), rng.uniform(0.0, 1.0));
            for (int j = i, jj = ii; j < n; ++j) {
                if (j == k) continue;
                ab.set(i, j, p0(ii, jj) + n0(ii, jj));
                ++jj;
            }
            ++ii;
        }
        const auto lb = lift_bordered(ab, k, inner);
        if (!validate_certificate(ab, lb) || max_abs_diff(lb.p + lb.n, ab) > 1e-10) {
            detail = "bordered lift failed at sample " + std::to_string(t);
            return false;
        }

        // normalize_diag back-transform round-trip
        SymMatrix scaled(n);
        std::vector<double> dscale(static_cast<std::size_t>(n));
        for (double& v : dscale) v = rng.uniform(0.5, 2.0);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                scaled.set(i, j, (p0(std::min(i, n - 2), std::min(j, n - 2)) + 1.5 * (i == j)) *
                                     dscale[i] * dscale[j]);
        const auto norm = normalize_diag(scaled);
        SymMatrix recomposed(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                recomposed.set(i, j, norm.matrix(i, j) * norm.scale[i] * norm.scale[j]);
        if (max_abs_diff(recomposed, scaled) > 1e-12) {
            detail = "scaling back-transform residual too large";
            return false;
        }
    }
    return true;
}

// 10. Determinism: byte-identical search reports, lex-smallest relabelings.
bool crit_determinism(std::string& detail) {
    SearchParams params;
    params.samples = 30;
    params.seed = 20'260'808;
    params.max_depth = 10;
    params.max_iter = 4000;
    const auto r1 = run_search_t6(params);
    const auto r2 = run_search_t6(params);
    if (report_to_json(r1) != report_to_json(r2)) {
        detail = "reports differ between runs";
        return false;
    }

    Rng rng(2010);
    SymMatrix base = SymMatrix::identity(5);
    base.set(0, 3, -0.5);
    base.set(1, 3, -0.5);
    base.set(2, 4, -0.5);
    base.set(3, 4, -0.5);
    base.set(0, 4, 0.4);
    base.set(1, 4, 0.4);
    base.set(2, 3, 0.4);
    for (int t = 0; t < 500; ++t) {
        std::vector<int> sigma{0, 1, 2, 3, 4};
        for (int i = 4; i > 0; --i) std::swap(sigma[i], sigma[rng.uniform_int(0, i)]);
        const SymMatrix shuffled = apply_permutation(base, sigma);
        const auto m = match_t5(shuffled);
        if (!m || m->kind != PatternKind::T5Pattern) {
            detail = "shuffled pattern not recognized";
            return false;
        }
        // Exhaustively confirm no lexicographically smaller valid relabeling.
        std::array<int, 5> perm{0, 1, 2, 3, 4};
        std::vector<int> smallest;
        do {
            const SymMatrix cand = apply_permutation(shuffled, std::vector<int>(perm.begin(), perm.end()));
            if (max_abs_diff(cand, base) == 0.0) {
                smallest.assign(perm.begin(), perm.end());
                break;  // next_permutation enumerates in lexicographic order
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (smallest != m->permutation) {
            detail = "returned permutation is not the lexicographically smallest";
            return false;
        }
    }
    return true;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Horn fixture: exact entries, copositive, no SPN split (gap > 1e-4)", crit_horn},
        {2, "sum-pi members: PSD, rank <= 2, rank-2 factors (1000 samples)", crit_boundary},
        {3, "family members certified copositive within depth 24 (100 samples)",
         crit_copositive_sweep},
        {4, "Hildebrand members: no SPN split, gap > 1e-6 (50 samples)", crit_hildebrand_gap},
        {5, "constructive T5 suite: 200 instances across all routes at tol 1e-8",
         crit_t5_suite},
        {6, "completion ledger: exact sum, component bounds, dominance (1000 samples)",
         crit_completion},
        {7, "K_{2,n} suite: 50 instances certify; n = 5 rejected", crit_k2n_suite},
        {8, "oracle equivalence: grid minimization and down-set search", crit_oracles},
        {9, "lift round-trips (residual <= 1e-10) and scaling (<= 1e-12), 1000 samples",
         crit_lifts},
        {10, "determinism: byte-identical reports, lex-smallest relabelings",
         crit_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %2d: %s%s%s (%.1f s)\n", ok ? "PASS" : "FAIL", c.id,
                    c.summary, detail.empty() ? "" : " -- ", detail.c_str(), dt);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
