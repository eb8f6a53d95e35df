#pragma once

// Verification suites behind `sieve verify`. Each suite returns a list of named
// checks with the instance, the expected value and what was computed.

#include <set>

#include <json.hpp>

#include "double_sieve.hpp"
#include "fourier.hpp"
#include "sieve_sum.hpp"
#include "spacing.hpp"
#include "square_norm.hpp"

namespace gls {

enum class Suite { Spacing, Gauss, Dls, Coverage, Poisson, FastPath };

inline std::string to_string(Suite s) {
    switch (s) {
        case Suite::Spacing: return "spacing";
        case Suite::Gauss: return "gauss";
        case Suite::Dls: return "dls";
        case Suite::Coverage: return "coverage";
        case Suite::Poisson: return "poisson";
        case Suite::FastPath: return "fastpath";
    }
    return "?";
}

inline Suite parse_suite(const std::string& s) {
    for (Suite k : {Suite::Spacing, Suite::Gauss, Suite::Dls, Suite::Coverage, Suite::Poisson, Suite::FastPath})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown suite: " + s);
}

inline Int default_max_norm(Suite s) {
    switch (s) {
        case Suite::Spacing: return 40;
        case Suite::Gauss: return 60;
        case Suite::Dls: return 16;
        case Suite::Coverage: return 10'000;
        case Suite::Poisson: return 20;
        case Suite::FastPath: return 100;
    }
    return 0;
}

struct VerifyCheck {
    std::string name;
    nlohmann::json instance;
    nlohmann::json expected;
    nlohmann::json got;
    bool pass = false;
};

struct VerifyReport {
    Suite suite = Suite::Spacing;
    Int max_norm = 0;
    std::vector<VerifyCheck> checks;
    nlohmann::json extra = nlohmann::json::object();

    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
    }
    bool passed() const { return failures() == 0; }

    void add(std::string name, nlohmann::json instance, nlohmann::json expected, nlohmann::json got, bool pass) {
        checks.push_back({std::move(name), std::move(instance), std::move(expected), std::move(got), pass});
    }

    nlohmann::json to_json() const {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& c : checks)
            rows.push_back({{"name", c.name}, {"instance", c.instance}, {"expected", c.expected}, {"got", c.got}, {"pass", c.pass}});
        nlohmann::json j = {{"suite", to_string(suite)}, {"max_norm", max_norm}, {"passed", passed()},
                            {"failures", failures()}, {"checks", rows}};
        for (const auto& [k, v] : extra.items()) j[k] = v;
        return j;
    }
};

inline nlohmann::json to_json(const GaussianInt& g) { return nlohmann::json::array({g.re, g.im}); }

namespace detail {
inline Int uniform_int(PhaseEngine& eng, Int lo, Int hi) {
    return lo + static_cast<Int>(next_unit_interval(eng) * static_cast<double>(hi - lo + 1));
}

inline std::vector<GaussianInt> reduced_residues(const GaussianInt& q) {
    const ResidueSystem rs = residue_system(q);
    std::vector<GaussianInt> out;
    for (std::size_t k = 0; k < rs.size(); ++k)
        if (rs.reduced_flags[k]) out.push_back(rs.representatives[k]);
    return out;
}

inline double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }
}  // namespace detail

// Spacing dichotomy and the (k, l) identities for 2 <= N(q2) <= max_norm, coordinates in [-bound, bound].
inline void spacing_checks(VerifyReport& rep, Int max_norm, Int bound = 5) {
    for (const auto& q2 : ModuliFamily(FamilyKind::AllGaussian, {1.0, static_cast<double>(max_norm)}).enumerate()) {
        std::size_t violations = 0, identity_failures = 0, pairs = 0;
        nlohmann::json first = nullptr;
        for (const auto& r2 : detail::reduced_residues(q2)) {
            const auto v = verify_spacing_lemma(q2, r2, bound);
            if (!v.empty() && first.is_null())
                first = {{"r2", to_json(r2)}, {"uv", {v[0].uv.first, v[0].uv.second}}, {"uv_tilde", {v[0].uv_tilde.first, v[0].uv_tilde.second}}};
            violations += v.size();
            const auto [k, l] = kl_pair(q2, r2);
            const GaussianInt prod = r2 * conj(q2);
            if (k * k + l * l != norm(r2) * norm(q2) || prod != GaussianInt{k, -l}) ++identity_failures;
            ++pairs;
        }
        nlohmann::json inst = {{"q2", to_json(q2)}, {"reduced_r2", pairs}, {"bound", bound}};
        nlohmann::json got = {{"violations", violations}};
        if (!first.is_null()) got["first"] = first;
        rep.add("spacing_lemma", inst, {{"violations", 0}}, got, violations == 0);
        rep.add("kl_identities", inst, {{"failures", 0}}, {{"failures", identity_failures}}, identity_failures == 0);
    }
}

// Distinct f-points of q in (Q/2, Q] inside D_R(0) against 1 + 16 R^2 N(q2), for N(q2) <= Q <= max_q.
inline void packing_checks(VerifyReport& rep, Int max_q, const std::vector<ExactRational>& radii) {
    for (const auto& rad : radii) {
        std::size_t instances = 0, failures = 0;
        double worst = 0.0;
        for (Int Q = 1; Q <= max_q; ++Q) {
            const ModuliFamily window(FamilyKind::AllGaussian, NormWindow::dyadic(static_cast<double>(Q)));
            for (const auto& q2 : ModuliFamily(FamilyKind::AllGaussian, {0.0, static_cast<double>(Q)}).enumerate())
                for (const auto& r2 : detail::reduced_residues(q2)) {
                    const Int distinct = distinct_f_points_in_disk(make_spacing_instance(q2, r2), window, rad);
                    const ExactRational cap = packing_bound(rad, norm(q2));
                    if (rational(distinct) > cap) ++failures;
                    worst = std::max(worst, static_cast<double>(distinct) / to_double(cap));
                    ++instances;
                }
        }
        rep.add("packing_bound", {{"R", rad.str()}, {"max_Q", max_q}, {"instances", instances}},
                {{"failures", 0}}, {{"failures", failures}, {"max_count_over_bound", worst}}, failures == 0);
    }
}

// Largest number of q with N(q) <= L Q in one class mod q2, against 4L + 4.
inline void class_multiplicity_checks(VerifyReport& rep, Int max_q, Int max_l) {
    for (Int L = 1; L <= max_l; ++L) {
        Int worst = 0;
        for (Int Q = 1; Q <= max_q; ++Q)
            for (const auto& q2 : ModuliFamily(FamilyKind::AllGaussian, NormWindow::dyadic(static_cast<double>(Q))).enumerate())
                worst = std::max(worst, max_class_multiplicity(q2, static_cast<double>(L * Q)));
        rep.add("class_multiplicity", {{"L", L}, {"max_Q", max_q}}, {{"at_most", 4 * L + 4}}, {{"max", worst}}, worst <= 4 * L + 4);
    }
}

// sum_{r mod q} e(Re(m r / q)) = N(q) [q | m] for every class m and N(q) <= max_norm.
inline void orthogonality_checks(VerifyReport& rep, Int max_norm) {
    for (const auto& q : ModuliFamily(FamilyKind::AllGaussian, {0.0, static_cast<double>(max_norm)}).enumerate()) {
        double worst = 0.0;
        std::vector<GaussianInt> ms = residue_system(q).representatives;
        ms.push_back(q);
        ms.push_back(q * GaussianInt{2, -3} + GaussianInt{1, 0});
        for (const auto& m : ms) {
            const double expect = divides(q, m) ? static_cast<double>(norm(q)) : 0.0;
            worst = std::max(worst, std::abs(orthogonality_sum(q, m) - Complex(expect, 0.0)));
        }
        rep.add("additive_orthogonality", {{"q", to_json(q)}, {"classes", ms.size()}}, {{"max_abs_error_at_most", 1e-9}},
                {{"max_abs_error", worst}}, worst <= 1e-9);
    }
}

// | |tau(chi)|^2 - N(q) | for every proper chi mod q, N(q) <= max_norm.
inline void gauss_sum_checks(VerifyReport& rep, Int max_norm) {
    for (const auto& q : ModuliFamily(FamilyKind::AllGaussian, {0.0, static_cast<double>(max_norm)}).enumerate()) {
        const CharacterTable table(q);
        double worst = 0.0;
        Int proper = 0;
        for (const auto& chi : table.characters()) {
            if (!chi.proper) continue;
            worst = std::max(worst, std::abs(std::norm(table.gauss_sum(chi)) - static_cast<double>(norm(q))));
            ++proper;
        }
        rep.add("gauss_sum_modulus", {{"q", to_json(q)}, {"proper_characters", proper}}, {{"max_abs_error_at_most", 1e-6}},
                {{"max_abs_error", worst}}, worst <= 1e-6);
    }
}

inline BilinearInstance random_bilinear_instance(PhaseEngine& eng, int dims) {
    auto real = [&](double lo, double hi) { return lo + (hi - lo) * next_unit_interval(eng); };
    BilinearInstance inst;
    inst.K = dims;
    inst.box_x = {real(0.1, 3.0), real(0.1, 3.0)};
    inst.box_y = {real(0.1, 3.0), real(0.1, 3.0)};
    const Int nx = detail::uniform_int(eng, 0, 40), ny = detail::uniform_int(eng, 0, 40);
    auto point = [&] {
        const double x0 = real(-2.0, 2.0), x1 = dims == 2 ? real(-2.0, 2.0) : 0.0;
        return WeightedPoint{{x0, x1}, std::polar(real(0.1, 2.0), 2.0 * std::numbers::pi * next_unit_interval(eng))};
    };
    for (Int i = 0; i < nx; ++i) inst.xs.push_back(point());
    for (Int i = 0; i < ny; ++i) inst.ys.push_back(point());
    return inst;
}

inline void dls_checks(VerifyReport& rep, Int max_norm, std::uint64_t seed = 7) {
    auto record = [&](const std::string& name, nlohmann::json inst, const BilinearInstance& b) {
        const DlsCheck c = check_dls(b);
        rep.add(name, std::move(inst), {{"lhs_squared_at_most", c.rhs}}, {{"lhs_squared", c.lhs_squared}}, c.holds);
    };
    BilinearInstance trivial;
    trivial.xs = {{{0.0, 0.0}, 1.0}};
    trivial.ys = {{{0.0, 0.0}, 1.0}};
    record("dls_trivial", {{"K", 2}}, trivial);

    PhaseEngine eng(seed);
    std::size_t failures = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const DlsCheck c = check_dls(random_bilinear_instance(eng, 2));
        if (!c.holds) ++failures;
        if (c.rhs > 0.0) worst = std::max(worst, c.lhs_squared / c.rhs);
    }
    rep.add("dls_random", {{"K", 2}, {"instances", 100}, {"seed", seed}}, {{"failures", 0}},
            {{"failures", failures}, {"max_lhs_over_rhs", worst}}, failures == 0);

    const ModuliFamily fam(FamilyKind::AllGaussian, NormWindow::dyadic(static_cast<double>(max_norm)));
    const Int radius_sq = 4 * max_norm;
    record("dls_sieve_instance", {{"family", "all"}, {"window_high", max_norm}, {"N", radius_sq}, {"coeff", "random"}},
           sieve_bilinear_instance(fam, random_phases(radius_sq, seed)));
}

inline void coverage_checks(VerifyReport& rep, Int max_norm) {
    const CoverageDiff diff = coverage_diff(max_norm);
    nlohmann::json missing = nlohmann::json::array(), extraneous = nlohmann::json::array();
    for (const auto& g : diff.missing) missing.push_back(to_json(g));
    for (const auto& g : diff.extraneous) extraneous.push_back(to_json(g));
    rep.extra["missing"] = missing;
    rep.extra["extraneous"] = extraneous;

    rep.add("no_extraneous", {{"max_norm", max_norm}}, {{"extraneous", 0}}, {{"extraneous", diff.extraneous.size()}},
            diff.extraneous.empty());
    const auto primitive_missing = std::count_if(diff.missing.begin(), diff.missing.end(), [](const auto& g) { return coordinate_gcd(g) == 1; });
    rep.add("missing_are_imprimitive", {{"max_norm", max_norm}}, {{"primitive_missing", 0}},
            {{"missing", diff.missing.size()}, {"primitive_missing", primitive_missing}}, primitive_missing == 0);
    const auto param = enumerate_pyth_param(max_norm);
    const std::set<GaussianInt> param_set(param.begin(), param.end());
    std::size_t primitive = 0, covered = 0;
    for (const auto& g : enumerate_square_norm(max_norm)) {
        if (coordinate_gcd(g) != 1) continue;
        ++primitive;
        covered += param_set.count(g);
    }
    rep.add("primitive_covered", {{"max_norm", max_norm}}, {{"covered", primitive}}, {{"covered", covered}}, covered == primitive);
}

inline void theta_checks(VerifyReport& rep, std::uint64_t seed = 99) {
    std::vector<double> thetas{0.0, 0.25, -0.25, 0.5, -0.5};
    PhaseEngine eng(seed);
    for (int i = 0; i < 20; ++i) thetas.push_back(next_unit_interval(eng) - 0.5);
    for (double q : {1.0, 2.0, 5.0, 10.0}) {
        double worst = 0.0;
        for (double t : thetas) worst = std::max(worst, theta_identity_check(q, t, theta_cutoff(q)).residual);
        rep.add("theta_identity", {{"Qparam", q}, {"thetas", thetas.size()}}, {{"residual_at_most", 1e-9}}, {{"max_residual", worst}},
                worst <= 1e-9);
    }
}

// Spatial form against scale * frequency form on random instances.
inline void poisson2d_checks(VerifyReport& rep, int instances = 20, std::uint64_t seed = 12) {
    PhaseEngine eng(seed);
    int done = 0;
    while (done < instances) {
        const GaussianInt q2{detail::uniform_int(eng, -6, 6), detail::uniform_int(eng, -6, 6)};
        const GaussianInt r2{detail::uniform_int(eng, -6, 6), detail::uniform_int(eng, -6, 6)};
        if (q2.is_zero() || !coprime(r2, q2)) continue;
        const auto inst = make_spacing_instance(q2, r2);
        const FamilyKind kind = std::array{FamilyKind::AllGaussian, FamilyKind::NaturalIntegers, FamilyKind::SquareNorm}[done % 3];
        const ModuliFamily fam(kind, {0.0, 1.0});
        const WeightFunction w{done % 2 == 0 ? WeightKind::ExpLinear : WeightKind::ExpSqrt};
        const double scale = 0.05 + 1.95 * next_unit_interval(eng), qw = 2.0 + 28.0 * next_unit_interval(eng);
        const double freq = scale * weighted_lattice_sum(inst, fam, w, qw, scale).value;
        const double spatial = spatial_lattice_sum(inst, fam, w, qw, scale);
        const double gap = detail::relative_gap(spatial, freq);
        rep.add("poisson_2d",
                {{"q2", to_json(q2)}, {"r2", to_json(r2)}, {"family", to_string(kind)}, {"weight", w.kind == WeightKind::ExpLinear ? "exp-linear" : "exp-sqrt"},
                 {"scale", scale}, {"Qwindow", qw}},
                {{"relative_gap_at_most", 1e-6}}, {{"relative_gap", gap}, {"spatial", spatial}, {"frequency", freq}}, gap <= 1e-6);
        ++done;
    }
}

// Every u2 <= max_u2, valid (x2, y2) mod u2, gamma mod u2 and integer U, V <= max_uv.
// The count is accumulated in V from the structured form; the brute double loop is
// compared at U = V = max_uv.
inline void congruence_checks(VerifyReport& rep, Int max_u2 = 30, Int max_uv = 15) {
    for (Int u2 = 1; u2 <= max_u2; ++u2) {
        std::size_t instances = 0, bound_failures = 0, count_mismatches = 0;
        for (Int x2 = 0; x2 < u2; ++x2)
            for (Int y2 = 0; y2 < u2; ++y2) {
                if (!coprime(GaussianInt{x2, y2}, GaussianInt{u2}) || std::gcd(std::gcd(x2, u2), y2) != 1) continue;
                for (Int gamma = 0; gamma < u2; ++gamma) {
                    auto inst = make_congruence_instance(u2, x2, y2, gamma, static_cast<double>(max_uv), static_cast<double>(max_uv));
                    if (congruence_count(inst) != congruence_count_structured(inst)) ++count_mismatches;
                    const Int d = inst.d, up = inst.u2_prime;
                    for (Int U = 0; U <= max_uv; ++U) {
                        inst.U = static_cast<double>(U);
                        for (Int V = 0; V <= max_uv; ++V) {
                            inst.V = static_cast<double>(V);
                            const Int t = congruence_count_structured(inst);
                            if (t * d * up > (d + 2 * V) * (up + 2 * U)) ++bound_failures;
                            ++instances;
                        }
                    }
                }
            }
        rep.add("congruence_count", {{"u2", u2}, {"max_UV", max_uv}, {"instances", instances}},
                {{"bound_failures", 0}, {"count_mismatches", 0}}, {{"bound_failures", bound_failures}, {"count_mismatches", count_mismatches}},
                bound_failures == 0 && count_mismatches == 0);
    }
}

// count{q in (Q/2, Q] : f-point in D_R(0)} <= e^{2 pi} * spatial majorant, for N(q2) <= Q <= max_q.
inline void domination_checks(VerifyReport& rep, Int max_q) {
    for (const ExactRational rad : {rational(1, 20), rational(1, 4), rational(49, 100)}) {
        std::size_t instances = 0, failures = 0;
        double worst = 0.0;
        for (Int Q = 1; Q <= max_q; ++Q)
            for (const auto& q2 : ModuliFamily(FamilyKind::AllGaussian, {0.0, static_cast<double>(Q)}).enumerate())
                for (const auto& r2 : detail::reduced_residues(q2)) {
                    const auto dc = indicator_domination_check(make_spacing_instance(q2, r2), ModuliFamily(FamilyKind::AllGaussian, {0.0, 1.0}),
                                                               static_cast<double>(Q), rad);
                    if (!dc.holds()) ++failures;
                    if (dc.majorant > 0.0) worst = std::max(worst, static_cast<double>(dc.count) / dc.majorant);
                    ++instances;
                }
        rep.add("indicator_domination", {{"R", rad.str()}, {"max_Q", max_q}, {"instances", instances}}, {{"failures", 0}},
                {{"failures", failures}, {"max_count_over_majorant", worst}}, failures == 0);
    }
}

// Fast and reference sieve sums on random three-modulus families with N(q) <= max_norm, N <= 400.
inline void fastpath_checks(VerifyReport& rep, Int max_norm, int instances = 50, std::uint64_t seed = 2024) {
    PhaseEngine eng(seed);
    const Int side = isqrt(max_norm);
    for (int i = 0; i < instances; ++i) {
        std::vector<GaussianInt> members;
        while (members.size() < 3) {
            const GaussianInt q{detail::uniform_int(eng, 0, side), detail::uniform_int(eng, 0, side)};
            if (!q.is_zero() && norm(q) <= max_norm) members.push_back(q);
        }
        const auto fam = ModuliFamily::custom("random", members, {0.0, static_cast<double>(max_norm)});
        const Int radius_sq = detail::uniform_int(eng, 1, 400);
        const auto coeffs = random_phases(radius_sq, eng());
        const double naive = sieve_lhs(fam, coeffs), fast = sieve_lhs_fast(fam, coeffs);
        const double gap = detail::relative_gap(fast, naive);
        nlohmann::json moduli = nlohmann::json::array();
        for (const auto& q : fam.enumerate()) moduli.push_back(to_json(q));
        rep.add("fast_matches_reference", {{"moduli", moduli}, {"N", radius_sq}}, {{"value", naive}, {"relative_gap_at_most", 1e-6}},
                {{"value", fast}, {"relative_gap", gap}}, gap <= 1e-6);
    }
}

inline VerifyReport run_verify_suite(Suite suite, std::optional<Int> max_norm = std::nullopt) {
    VerifyReport rep;
    rep.suite = suite;
    rep.max_norm = max_norm.value_or(default_max_norm(suite));
    if (rep.max_norm < 1) throw std::invalid_argument("max-norm must be >= 1");
    switch (suite) {
        case Suite::Spacing:
            spacing_checks(rep, rep.max_norm);
            packing_checks(rep, 20, {rational(1, 10), rational(1, 5), rational(2, 5)});
            class_multiplicity_checks(rep, 20, 4);
            break;
        case Suite::Gauss:
            orthogonality_checks(rep, rep.max_norm);
            gauss_sum_checks(rep, rep.max_norm);
            break;
        case Suite::Dls: dls_checks(rep, rep.max_norm); break;
        case Suite::Coverage: coverage_checks(rep, rep.max_norm); break;
        case Suite::Poisson:
            theta_checks(rep);
            poisson2d_checks(rep);
            congruence_checks(rep);
            domination_checks(rep, rep.max_norm);
            break;
        case Suite::FastPath: fastpath_checks(rep, rep.max_norm); break;
    }
    return rep;
}

}  // namespace gls
