#include "copos/certify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace copos {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdgeCheckTol = 1e-7;
constexpr double kCertTol = 1e-9;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt_theta(const ThetaVector& t) {
    std::string s = "(";
    for (int i = 0; i < 5; ++i) s += (i ? ", " : "") + fmt(t[i]);
    return s + ")";
}

} // namespace

const char* to_string(CertifyRoute r) {
    switch (r) {
        case CertifyRoute::Bordered: return "BORDERED";
        case CertifyRoute::SchurReduce: return "SCHUR_REDUCE";
        case CertifyRoute::ThetaCompletion: return "THETA_COMPLETION";
        case CertifyRoute::ProjectionFallback: return "PROJECTION_FALLBACK";
    }
    return "?";
}

double clamped_acos(double x) {
    if (x > 1.0 || x < -1.0) {
        const double overshoot = std::abs(x) - 1.0;
        if (overshoot > 1e-9)
            throw std::domain_error("clamped_acos: argument exceeds [-1,1] by " + fmt(overshoot));
        x = std::clamp(x, -1.0, 1.0);
    }
    return std::acos(x);
}

namespace {

// Zero-triangle layouts in the cyclic frame. For triangle {0,1,4} the direct
// edges are (1,2),(2,3),(3,4); angles 0 and 4 come from entries (0,2) and
// (0,3); edges (1,3),(2,4) are checks. Triangle {0,3,4} mirrors this.
bool is_zero_triple(const SymMatrix& b, int i, int j, int k, double tol) {
    return std::abs(b(i, j)) <= tol && std::abs(b(i, k)) <= tol && std::abs(b(j, k)) <= tol;
}

double nonneg_angle(double v, const char* what) {
    if (v < 0.0) {
        if (v < -1e-9)
            throw std::domain_error(std::string("recover_theta: negative angle for ") + what);
        v = 0.0;
    }
    return v;
}

} // namespace

ThetaVector recover_theta(const SymMatrix& b) {
    if (b.order() != 5) throw std::invalid_argument("recover_theta: order must be 5");
    constexpr double ztol = 1e-12;
    std::array<double, 5> t{};
    if (is_zero_triple(b, 0, 1, 4, ztol)) {
        t[1] = clamped_acos(-b(1, 2));
        t[2] = clamped_acos(-b(2, 3));
        t[3] = clamped_acos(-b(3, 4));
        t[0] = nonneg_angle(clamped_acos(b(0, 2)) - t[1], "theta_0");
        t[4] = nonneg_angle(clamped_acos(b(0, 3)) - t[3], "theta_4");
    } else if (is_zero_triple(b, 0, 3, 4, ztol)) {
        t[0] = clamped_acos(-b(0, 1));
        t[1] = clamped_acos(-b(1, 2));
        t[2] = clamped_acos(-b(2, 3));
        t[3] = nonneg_angle(clamped_acos(b(2, 4)) - t[2], "theta_3");
        t[4] = nonneg_angle(clamped_acos(b(1, 4)) - t[0], "theta_4");
    } else {
        throw certify_error("recover_theta: no zero triangle {0,1,4} or {0,3,4}");
    }
    double sum = 0.0;
    for (double v : t) sum += v;
    if (sum > kPi + 1e-9)
        throw certify_error("recover_theta: recovered angles sum beyond pi: " + fmt(sum));
    const ThetaVector theta(t);

    // All seven edge values must reproduce; two of them are pure checks.
    const SymMatrix s = build_s(theta);
    double maxerr = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (std::abs(b(i, j)) > ztol) maxerr = std::max(maxerr, std::abs(b(i, j) - s(i, j)));
    if (maxerr > kEdgeCheckTol)
        throw certify_error("recover_theta: edge values are not a family restriction (residual " +
                            fmt(maxerr) + ")");
    return theta;
}

namespace {

// Canonical-signed-T5 positions -> cyclic frame with zero triangle {0,1,4}.
constexpr std::array<int, 5> kCanonToCyclic{0, 2, 4, 3, 1};

std::vector<int> compose_to_cyclic(std::span<const int> match_perm) {
    std::vector<int> q(5);
    for (int i = 0; i < 5; ++i) q[i] = match_perm[kCanonToCyclic[i]];
    return q;
}

std::vector<int> invert_perm(std::span<const int> p) {
    std::vector<int> inv(p.size());
    for (int i = 0; i < static_cast<int>(p.size()); ++i) inv[p[i]] = i;
    return inv;
}

} // namespace

ThetaVector recover_theta(const SymMatrix& b, const PatternMatch& match) {
    if (match.kind != PatternKind::T5Pattern)
        throw std::invalid_argument("recover_theta: match must be a T5 pattern");
    return recover_theta(apply_permutation(b, compose_to_cyclic(match.permutation)));
}

ThetaVector theta_completion(const ThetaVector& theta, int l) {
    if (l != 0 && l != 3)
        throw std::invalid_argument("theta_completion: completion index must be 0 or 3");
    if (!(theta.sum() < kPi))
        throw std::domain_error("theta_completion: requires sum(theta) < pi");
    double rest = 0.0;
    for (int i = 0; i < 5; ++i)
        if (i != l) rest += theta[i];
    if (rest < kPi / 2 - 1e-12)
        throw std::domain_error(
            "theta_completion: requires sum of the other four angles >= pi/2 (got " + fmt(rest) +
            ")");

    std::array<double, 5> t = theta.values();
    // The completed component is the exact residual: rest >= pi/2 makes the
    // subtraction exact (Sterbenz), so rest + t[l] reproduces pi exactly in
    // that association.
    t[l] = kPi - rest;
    if (t[l] > kPi / 2 + 1e-12)
        throw std::domain_error("theta_completion: completed angle exceeds pi/2");
    return ThetaVector(t);
}

Normalized normalize_diag(const SymMatrix& a) {
    const int n = a.order();
    Normalized out{SymMatrix(n), std::vector<double>(static_cast<std::size_t>(n))};
    for (int i = 0; i < n; ++i) {
        if (!(a(i, i) > 0.0))
            throw std::domain_error("normalize_diag: diagonal entry " + std::to_string(i) +
                                    " is not positive");
        out.scale[i] = std::sqrt(a(i, i));
    }
    for (int i = 0; i < n; ++i) {
        out.matrix.set(i, i, 1.0);
        for (int j = i + 1; j < n; ++j)
            out.matrix.set(i, j, a(i, j) / (out.scale[i] * out.scale[j]));
    }
    return out;
}

SpnCertificate denormalize_certificate(const SpnCertificate& cert, std::span<const double> scale) {
    const int n = cert.p.order();
    if (static_cast<int>(scale.size()) != n)
        throw std::invalid_argument("denormalize_certificate: scale length mismatch");
    SpnCertificate out{SymMatrix(n), SymMatrix(n), cert.tol};
    double smax = 1.0;
    for (double s : scale) smax = std::max(smax, s * s);
    out.tol = cert.tol * smax;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            out.p.set(i, j, cert.p(i, j) * scale[i] * scale[j]);
            out.n.set(i, j, cert.n(i, j) * scale[i] * scale[j]);
        }
    return out;
}

SpnCertificate lift_schur(const SymMatrix& a, int k, const SpnCertificate& inner) {
    const int n = a.order();
    if (k < 0 || k >= n) throw std::out_of_range("lift_schur: pivot index");
    const double pivot = a(k, k);
    if (!(pivot > 1e-12)) throw std::domain_error("lift_schur: pivot entry not positive");
    const SymMatrix reduced = schur_complement(a, k);
    if (!validate_certificate(reduced, inner))
        throw certify_error("lift_schur: inner certificate does not validate against A/A[k]");

    std::vector<double> b;
    for (int i = 0; i < n; ++i)
        if (i != k) b.push_back(a(i, k));

    SpnCertificate out{SymMatrix(n), SymMatrix(n), inner.tol};
    out.p.set(k, k, pivot);
    for (int i = 0, ii = 0; i < n; ++i) {
        if (i == k) continue;
        out.p.set(std::min(i, k), std::max(i, k), b[ii]);
        for (int j = i, jj = ii; j < n; ++j) {
            if (j == k) continue;
            out.p.set(i, j, inner.p(ii, jj) + b[ii] * b[jj] / pivot);
            out.n.set(i, j, inner.n(ii, jj));
            ++jj;
        }
        ++ii;
    }
    return out;
}

SpnCertificate lift_bordered(const SymMatrix& a, int k, const SpnCertificate& inner) {
    const int n = a.order();
    if (k < 0 || k >= n) throw std::out_of_range("lift_bordered: border index");
    for (int j = 0; j < n; ++j) {
        if (j != k && a(k, j) < -inner.tol)
            throw certify_error("lift_bordered: row " + std::to_string(k) +
                                " has a negative entry at column " + std::to_string(j));
    }
    if (a(k, k) < -inner.tol)
        throw certify_error("lift_bordered: negative diagonal at the border index");
    const SymMatrix reduced = a.without_index(k);
    if (!validate_certificate(reduced, inner))
        throw certify_error("lift_bordered: inner certificate does not validate");

    SpnCertificate out{SymMatrix(n), SymMatrix(n), inner.tol};
    out.n.set(k, k, a(k, k));
    for (int i = 0, ii = 0; i < n; ++i) {
        if (i == k) {
            continue;
        }
        out.n.set(std::min(i, k), std::max(i, k), a(i, k));
        for (int j = i, jj = ii; j < n; ++j) {
            if (j == k) continue;
            out.p.set(i, j, inner.p(ii, jj));
            out.n.set(i, j, inner.n(ii, jj));
            ++jj;
        }
        ++ii;
    }
    return out;
}

// ---------------------------------------------------------------------------
// certify_t5

namespace {

// Largest entrywise excess of S(theta') over the target (upper triangle).
double excess_over(const SymMatrix& target, const ThetaVector& tp) {
    const SymMatrix s = build_s(tp);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) worst = std::max(worst, s(i, j) - target(i, j));
    return worst;
}

// Coordinate-descent search for theta' on the sum-pi slice minimizing the
// excess of S(theta') over the target. Mass moves between component pairs.
struct SearchResult {
    bool ok = false;
    double excess = 0.0;
    std::array<double, 5> theta{};
};

SearchResult simplex_search(const SymMatrix& target, const std::array<double, 5>& seed) {
    std::array<double, 5> t = seed;
    {
        double s = 0.0;
        for (double v : t) s += v;
        if (s <= 0.0) t = {kPi / 5, kPi / 5, kPi / 5, kPi / 5, kPi / 5};
        else
            for (double& v : t) v *= kPi / s;
    }
    auto eval = [&](const std::array<double, 5>& x) {
        return excess_over(target, ThetaVector(x));
    };
    double cur = eval(t);
    for (int sweep = 0; sweep < 120; ++sweep) {
        bool improved = false;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                if (i == j) continue;
                // transfer mass from j to i
                double lo = 0.0, hi = t[j];
                if (hi <= 0.0) continue;
                double best_t = 0.0, best_v = cur;
                for (int gridpass = 0; gridpass < 4; ++gridpass) {
                    const int steps = 12;
                    for (int g = 0; g <= steps; ++g) {
                        const double tau = lo + (hi - lo) * g / steps;
                        std::array<double, 5> cand = t;
                        cand[i] += tau;
                        cand[j] -= tau;
                        if (cand[j] < 0.0) cand[j] = 0.0;
                        const double v = eval(cand);
                        if (v < best_v) {
                            best_v = v;
                            best_t = tau;
                        }
                    }
                    const double width = (hi - lo) / steps;
                    lo = std::max(0.0, best_t - width);
                    hi = std::min(t[j], best_t + width);
                }
                if (best_v < cur - 1e-16) {
                    t[i] += best_t;
                    t[j] -= best_t;
                    if (t[j] < 0.0) t[j] = 0.0;
                    cur = best_v;
                    improved = true;
                }
            }
        }
        if (!improved || cur <= 1e-10) break;
    }
    return {cur <= 1e-9, cur, t};
}

// Inner SPN certification for reduced matrices (order <= 4 in-scope). A
// near-feasible first pass earns a longer second run; tangent feasibility
// makes the projections sublinear.
SpnCertificate certify_small(const SymMatrix& m, std::vector<std::string>& diag,
                             const char* label) {
    auto r = check_spn(m, 50'000, kCertTol);
    if (!r.certificate && r.gap < 1e-3) r = check_spn(m, 400'000, kCertTol);
    if (!r.certificate) {
        diag.push_back(std::string(label) + ": projections did not converge (gap " +
                       fmt(r.gap) + ")");
        throw certify_error("inner certification failed", diag);
    }
    return *r.certificate;
}

bool row_all_nonneg(const SymMatrix& m, int v, double tol) {
    for (int j = 0; j < m.order(); ++j)
        if (j != v && m(v, j) < -tol) return false;
    return true;
}

// Best-effort angle seed for the simplex search: invert the three direct
// edges of the cyclic frame and derive the other two, clamping freely, then
// rescale below pi if needed.
std::array<double, 5> seed_from_edges(const SymMatrix& b) {
    auto soft_acos = [](double x) { return std::acos(std::clamp(x, -1.0, 1.0)); };
    std::array<double, 5> t{};
    t[1] = soft_acos(-b(1, 2));
    t[2] = soft_acos(-b(2, 3));
    t[3] = soft_acos(-b(3, 4));
    t[0] = std::max(0.0, soft_acos(b(0, 2)) - t[1]);
    t[4] = std::max(0.0, soft_acos(b(0, 3)) - t[3]);
    double sum = 0.0;
    for (double v : t) sum += v;
    if (sum > kPi)
        for (double& v : t) v *= (kPi - 1e-9) / sum;
    return t;
}

// Nonpositive row with at least one actual edge: the pivot-reduction case.
bool row_nonpos_with_edges(const SymMatrix& m, const SignedGraph& g, int v, double tol) {
    if (g.degree(v) == 0) return false;
    for (int j = 0; j < m.order(); ++j)
        if (j != v && m(v, j) > tol) return false;
    return true;
}

} // namespace

CertifyTrace certify_t5(const SymMatrix& a) {
    if (a.order() != 5) throw std::invalid_argument("certify_t5: order must be 5");
    std::vector<std::string> diagnostics;
    CertifyTrace trace;

    const Normalized norm = normalize_diag(a);
    const SymMatrix& m = norm.matrix;
    bool scaled = false;
    for (int i = 0; i < 5; ++i)
        if (std::abs(a(i, i) - 1.0) > 1e-15) scaled = true;
    if (scaled) trace.steps.push_back({"normalize-diag", ""});

    auto finish = [&](CertifyRoute route, SpnCertificate cert) {
        if (scaled) cert = denormalize_certificate(cert, norm.scale);
        if (!validate_certificate(a, cert))
            throw certify_error("certify_t5: assembled certificate failed validation",
                                diagnostics);
        trace.route = route;
        trace.certificate = std::move(cert);
        return trace;
    };

    const SignedGraph g = graph_of(m);

    // Bordered branch: any vertex whose whole row is nonnegative.
    for (int v = 0; v < 5; ++v) {
        if (!row_all_nonneg(m, v, 1e-12)) continue;
        try {
            const SpnCertificate inner =
                certify_small(m.without_index(v), diagnostics, "bordered");
            trace.steps.push_back({"border", "vertex " + std::to_string(v)});
            trace.steps.push_back({"lift-bordered", ""});
            return finish(CertifyRoute::Bordered, lift_bordered(m, v, inner));
        } catch (const certify_error&) {
            // diagnostics already recorded; try the other branches
        }
    }

    // Pivot-reduction branch: a vertex with a nonpositive row (degree >= 1).
    for (int v = 0; v < 5; ++v) {
        if (!row_nonpos_with_edges(m, g, v, 1e-12)) continue;
        try {
            const SpnCertificate inner =
                certify_small(schur_complement(m, v), diagnostics, "schur");
            trace.steps.push_back({"schur-pivot", "vertex " + std::to_string(v)});
            trace.steps.push_back({"lift-schur", ""});
            return finish(CertifyRoute::SchurReduce, lift_schur(m, v, inner));
        } catch (const certify_error&) {
            // fall through to the pattern branch
        }
    }

    // Pattern branch: recover the angles on the edges, complete, dominate.
    // The canonical layout has an apex-swap automorphism, and only one of the
    // two resulting cyclic frames carries the family parametrization, so both
    // are attempted.
    const auto match = match_t5(m);
    std::vector<std::vector<int>> frames;
    if (match && match->kind == PatternKind::T5Pattern) {
        trace.steps.push_back({"match", "T5 pattern"});
        frames.push_back(compose_to_cyclic(match->permutation));
        auto swapped = match->permutation;
        std::swap(swapped[0], swapped[1]);
        frames.push_back(compose_to_cyclic(swapped));
    } else {
        diagnostics.push_back("match: graph is not the signed T5 pattern");
    }

    std::vector<std::array<double, 5>> seeds(frames.size(),
                                             {kPi / 5, kPi / 5, kPi / 5, kPi / 5, kPi / 5});
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const SymMatrix cyclic = apply_permutation(m, frames[f]);
        seeds[f] = seed_from_edges(cyclic);
        try {
            const ThetaVector theta = recover_theta(cyclic);
            trace.steps.push_back({"recover-theta", fmt_theta(theta)});
            seeds[f] = theta.values();
            const int l = 0;  // the cyclic frame is built with zero triangle {0,1,4}
            ThetaVector completed = theta;
            if (theta.sum() < kPi - 1e-12) {
                completed = theta_completion(theta, l);
                trace.steps.push_back(
                    {"completion", "l = " + std::to_string(l) + ", theta' = " + fmt_theta(completed)});
            } else {
                trace.steps.push_back({"completion", "angle sum already at pi"});
            }
            seeds[f] = completed.values();
            const SymMatrix p = build_s(completed);
            SymMatrix nn = cyclic;
            nn -= p;
            double worst = 0.0;
            for (int i = 0; i < 5; ++i)
                for (int j = i; j < 5; ++j) worst = std::min(worst, nn(i, j));
            if (worst >= -1e-9) {
                SpnCertificate cert{apply_permutation(p, invert_perm(frames[f])),
                                    apply_permutation(nn, invert_perm(frames[f])), kCertTol};
                return finish(CertifyRoute::ThetaCompletion, std::move(cert));
            }
            diagnostics.push_back("completion: dominated by " + fmt(-worst) +
                                  " beyond tolerance");
        } catch (const certify_error& e) {
            diagnostics.push_back(std::string("recover-theta: ") + e.what());
        } catch (const std::domain_error& e) {
            diagnostics.push_back(std::string("completion: ") + e.what());
        }
    }

    // Simplex search for a dominated boundary member, from the recovery seed
    // plus deterministic perturbed restarts.
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const SymMatrix cyclic = apply_permutation(m, frames[f]);
        SearchResult sr = simplex_search(cyclic, seeds[f]);
        for (int restart = 1; restart <= 3 && !sr.ok; ++restart) {
            std::array<double, 5> jiggled = seeds[f];
            for (int i = 0; i < 5; ++i)
                jiggled[i] = std::max(0.0, jiggled[i] * (1.0 + 0.07 * restart * ((i % 2) ? 1 : -1)));
            const SearchResult again = simplex_search(cyclic, jiggled);
            if (again.excess < sr.excess) sr = again;
        }
        if (sr.ok) {
            const ThetaVector tp(sr.theta);
            trace.steps.push_back(
                {"simplex-search", "l = 0, seed theta = " + fmt_theta(ThetaVector(seeds[f])) +
                                       ", theta' = " + fmt_theta(tp) +
                                       ", excess = " + fmt(sr.excess)});
            const SymMatrix p = build_s(tp);
            SymMatrix nn = cyclic;
            nn -= p;
            SpnCertificate cert{apply_permutation(p, invert_perm(frames[f])),
                                apply_permutation(nn, invert_perm(frames[f])), kCertTol};
            return finish(CertifyRoute::ThetaCompletion, std::move(cert));
        }
        diagnostics.push_back("simplex-search: best excess " + fmt(sr.excess));
    }

    // Last resort: alternating projections on the full matrix.
    const auto r = check_spn(m, 50'000, kCertTol);
    if (r.certificate) {
        trace.steps.push_back({"projections", "converged"});
        return finish(CertifyRoute::ProjectionFallback, *r.certificate);
    }
    diagnostics.push_back("projections: no convergence (gap " + fmt(r.gap) + ")");
    throw certify_error("certify_t5: no branch produced a validating certificate", diagnostics);
}

// ---------------------------------------------------------------------------
// certify_k2n

CertifyTrace certify_k2n(const SymMatrix& a, bool allow_unproved) {
    const int order = a.order();
    const int n = order - 2;
    if (n < 1) throw std::invalid_argument("certify_k2n: order must be at least 3");
    std::vector<std::string> diagnostics;
    CertifyTrace trace;

    const Normalized norm = normalize_diag(a);
    const SymMatrix& m = norm.matrix;
    bool scaled = false;
    for (int i = 0; i < order; ++i)
        if (std::abs(a(i, i) - 1.0) > 1e-15) scaled = true;
    if (scaled) trace.steps.push_back({"normalize-diag", ""});

    auto finish = [&](CertifyRoute route, SpnCertificate cert,
                      std::vector<CertifyStep> inner_steps = {}) {
        for (auto& st : inner_steps) trace.steps.push_back(std::move(st));
        if (scaled) cert = denormalize_certificate(cert, norm.scale);
        if (!validate_certificate(a, cert))
            throw certify_error("certify_k2n: assembled certificate failed validation",
                                diagnostics);
        trace.route = route;
        trace.certificate = std::move(cert);
        return trace;
    };

    const auto match = match_k2n(m);
    if (!match || match->kind != PatternKind::K2n)
        throw certify_error("certify_k2n: graph is not a complete bipartite K_{2,n}");
    if (n > 4 && !allow_unproved)
        throw out_of_proved_range("certify_k2n: n = " + std::to_string(n) +
                                  " is outside the proved range n <= 4");
    trace.steps.push_back({"match", "K_{2," + std::to_string(n) + "}"});

    // Base case: order <= 4.
    if (order <= 4) {
        trace.steps.push_back({"base-case", "order <= 4"});
        const SpnCertificate cert = certify_small(m, diagnostics, "base");
        return finish(CertifyRoute::ProjectionFallback, cert);
    }

    // Main step: a part-two vertex incident with two negative edges pivots
    // down to a T_{n+1} matrix.
    if (match->negative_pair_vertex) {
        const int v = *match->negative_pair_vertex;
        trace.steps.push_back({"schur-pivot", "vertex " + std::to_string(v) +
                                                  " (two negative edges)"});
        const SymMatrix reduced = schur_complement(m, v);
        trace.steps.push_back({"reduced-graph", "T_" + std::to_string(n + 1)});
        if (reduced.order() == 5) {
            try {
                CertifyTrace inner = certify_t5(reduced);
                std::vector<CertifyStep> sub;
                sub.push_back({"inner-route", to_string(inner.route)});
                for (auto& st : inner.steps) sub.push_back(std::move(st));
                sub.push_back({"lift-schur", ""});
                return finish(CertifyRoute::SchurReduce,
                              lift_schur(m, v, inner.certificate), std::move(sub));
            } catch (const certify_error& e) {
                diagnostics.push_back(std::string("inner T5: ") + e.what());
                for (const auto& d : e.diagnostics()) diagnostics.push_back("  " + d);
            }
        } else {
            const SpnCertificate inner = certify_small(reduced, diagnostics, "inner T4");
            std::vector<CertifyStep> sub{{"lift-schur", ""}};
            return finish(CertifyRoute::SchurReduce, lift_schur(m, v, inner), std::move(sub));
        }
    }

    // Subgraph handling: a part-two vertex with a nonnegative row borders a
    // K_{2,n-1} matrix.
    for (int idx = 2; idx < order; ++idx) {
        const int v = match->permutation[idx];
        if (!row_all_nonneg(m, v, 1e-12)) continue;
        trace.steps.push_back({"border", "vertex " + std::to_string(v)});
        try {
            CertifyTrace inner = certify_k2n(m.without_index(v), allow_unproved);
            std::vector<CertifyStep> sub;
            sub.push_back({"inner-route", to_string(inner.route)});
            for (auto& st : inner.steps) sub.push_back(std::move(st));
            sub.push_back({"lift-bordered", ""});
            return finish(CertifyRoute::Bordered, lift_bordered(m, v, inner.certificate),
                          std::move(sub));
        } catch (const certify_error& e) {
            diagnostics.push_back(std::string("inner K2n: ") + e.what());
        }
        break;
    }

    // Mixed-sign part-two rows: fall back to projections.
    const auto r = check_spn(m, 50'000, kCertTol);
    if (r.certificate) {
        trace.steps.push_back({"projections", n > 4 ? "heuristic (unproved range)" : "converged"});
        return finish(CertifyRoute::ProjectionFallback, *r.certificate);
    }
    diagnostics.push_back("projections: no convergence (gap " + fmt(r.gap) + ")");
    throw certify_error("certify_k2n: no branch produced a validating certificate", diagnostics);
}

} // namespace copos
