#include "astower/verify.hpp"

#include <functional>
#include <sstream>

#include "astower/serialize.hpp"

namespace astower::verify {

namespace {

using oracle::MvContext;
using oracle::MvElement;

std::string level_tag(std::uint32_t i, std::size_t sz) {
    std::ostringstream ss;
    ss << "level " << i << " (size " << sz << ")";
    return ss.str();
}

MvElement embed_lower(const MvContext& ctx, const MvElement& low, std::uint32_t level) {
    MvElement out = oracle::mv_zero(ctx, level);
    for (std::size_t a = 0; a < low.coeffs.size(); ++a) out.coeffs[a] = low.coeffs[a];
    return out;
}

} // namespace

TowerElement random_element(const TowerDescriptor& t, std::uint32_t level, std::mt19937_64& rng) {
    std::vector<word> c(t.level_size(level));
    for (word& w : c) w = rng() % t.p();
    return make_element(t, level, std::move(c));
}

GeneralTower random_general_tower(const TowerDescriptor& t, std::size_t k, std::mt19937_64& rng) {
    if (k > t.height()) throw std::invalid_argument("random_general_tower: k exceeds height");
    // Build level by level: a candidate generator is valid iff its image has
    // nonzero trace, which we can test through the partial isomorphism.
    GeneralTower g = make_general_tower(t, {});
    g.images.push_back(generator_element(t, 0));
    g.images_pd.assign(1, BivariateElement{});
    for (std::uint32_t i = 1; i <= k; ++i) {
        GeneralElement cand;
        TowerElement alpha;
        for (;;) {
            std::vector<word> c(t.level_size(i - 1));
            for (word& w : c) w = rng() % t.p();
            cand = make_general(t, i - 1, std::move(c));
            alpha = apply_isomorphism(g, cand);
            if (absolute_trace(alpha) != 0) break;
        }
        g.generators.push_back(cand);
        TowerElement up = embed_up(alpha);
        TowerElement s = solve_artin_schreier(up);
        g.images_pd.push_back(push_down(s));
        g.images.push_back(std::move(s));
    }
    // Re-run the public entry point on the chosen generators.
    GeneralTower fresh = make_general_tower(t, g.generators);
    compute_images(fresh);
    return fresh;
}

GeneralTower self_general_tower(const TowerDescriptor& t, std::size_t k) {
    MvContext ctx = oracle::primitive_context(t, std::uint32_t(k));
    std::vector<GeneralElement> gens;
    for (std::size_t i = 0; i < k; ++i)
        gens.push_back(make_general(t, std::uint32_t(i), ctx.gamma[i]));
    GeneralTower g = make_general_tower(t, std::move(gens));
    compute_images(g);
    return g;
}

namespace {

struct Runner {
    const TowerDescriptor& t;
    const VerifyOptions& opts;
    std::vector<CheckResult> results;

    void run(const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        try {
            r.detail = body(); // empty on success
            r.pass = r.detail.empty();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
};

std::string check_shape(const TowerDescriptor& t) {
    for (std::uint32_t i = 0; i <= t.height(); ++i) {
        const PrimePoly& q = t.levels[i].q;
        if (!q.is_monic()) return "Q_" + std::to_string(i) + " not monic";
        if (std::size_t(q.degree()) != t.level_size(i))
            return "Q_" + std::to_string(i) + " has wrong degree";
        if (t.levels[i].kind != generator_kind(i, t.p(), t.d))
            return "generator kind off schedule at " + level_tag(i, t.level_size(i));
    }
    return {};
}

std::string check_consistency(const TowerDescriptor& t, const VerifyOptions& opts) {
    for (std::uint32_t i = 0; i <= t.height(); ++i) {
        std::size_t sz = t.level_size(i);
        if (sz <= oracle::kOracleSizeGuard && !irreducible(t.levels[i].q))
            return "Q_" + std::to_string(i) + " is reducible";
        if (i >= 1 && sz <= opts.mv_limit) {
            MvContext ctx = oracle::primitive_context(t, i);
            MvElement v = oracle::eval_poly_at_generator(ctx, t.levels[i].q, i);
            if (!oracle::mv_is_zero(v))
                return "Q_" + std::to_string(i) + "(x_" + std::to_string(i) +
                       ") != 0 under the tower relations";
        }
    }
    return {};
}

std::string check_trace_identities(const TowerDescriptor& t, const VerifyOptions& opts) {
    for (std::uint32_t i = 1; i <= t.height(); ++i) {
        std::size_t sz = t.level_size(i);
        if (sz > opts.oracle_limit) break;
        MvContext ctx = oracle::primitive_context(t, i + 1 <= t.height() ? i + 1 : i);
        // gamma_i under the schedule, as a level-i element
        MvElement gi = oracle::mv_generator(ctx, i);
        if (generator_kind(i + 1, t.p(), t.d) == GeneratorKind::power)
            gi = oracle::mv_pow(ctx, gi, 2 * t.p() - 1);
        // Tr_{U_i/U_{i-1}}(gamma_i) = sum of the p conjugates under p^{p^{i-1}d}
        word sub_order = word(t.level_size(i - 1));
        MvElement acc = gi, cur = gi;
        for (word h = 1; h < t.p(); ++h) {
            cur = oracle::naive_frobenius(ctx, cur, sub_order);
            acc = oracle::mv_add(ctx, acc, cur);
        }
        MvElement gprev = oracle::mv_generator(ctx, i - 1);
        if (i >= 2 && generator_kind(i, t.p(), t.d) == GeneratorKind::power)
            gprev = oracle::mv_pow(ctx, gprev, 2 * t.p() - 1);
        if (i == 1) gprev = oracle::mv_generator(ctx, 0); // gamma_0 = x_0
        MvElement expected;
        if (t.p() != 2) {
            expected = oracle::mv_mul_scalar(ctx, embed_lower(ctx, gprev, i), t.mod.neg(1));
        } else if (i == 1 && t.d % 2 == 1) {
            expected = oracle::mv_scalar(ctx, i, 1);
        } else {
            expected = oracle::mv_add(ctx, oracle::mv_scalar(ctx, i, 1),
                                      embed_lower(ctx, gprev, i));
        }
        if (!(acc.coeffs == expected.coeffs))
            return "relative trace of gamma_" + std::to_string(i) + " off at " +
                   level_tag(i, sz);
    }
    return {};
}

std::string check_embedding(const TowerDescriptor& t, const VerifyOptions& opts) {
    std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ull);
    for (std::uint32_t i = 1; i <= t.height(); ++i) {
        std::size_t sz = t.level_size(i);
        for (std::size_t s = 0; s < opts.samples; ++s) {
            TowerElement v = random_element(t, i, rng);
            if (!(lift_up(push_down(v)) == v))
                return "lift_up(push_down(v)) != v at " + level_tag(i, sz);
        }
        if (opts.exhaustive || sz <= 64) {
            for (std::size_t a = 0; a < sz; ++a) {
                TowerElement v = zero_element(t, i);
                v.coeffs[a] = 1;
                if (!(lift_up(push_down(v)) == v))
                    return "round trip fails on basis vector " + std::to_string(a) + " at " +
                           level_tag(i, sz);
            }
        }
        if (sz <= opts.mv_limit) {
            MvContext ctx = oracle::primitive_context(t, i);
            for (std::size_t s = 0; s < std::min<std::size_t>(opts.samples, 8); ++s) {
                TowerElement v = random_element(t, i, rng);
                MvElement via_c = oracle::basis_convert(ctx, v);
                MvElement via_d = oracle::convert_bivariate(ctx, push_down(v));
                if (!(via_c.coeffs == via_d.coeffs))
                    return "push_down disagrees with the multivariate oracle at " +
                           level_tag(i, sz);
            }
        }
    }
    return {};
}

std::string check_duality(const TowerDescriptor& t, const VerifyOptions& opts) {
    std::mt19937_64 rng(opts.seed ^ 0xda3e39cb94b95bdbull);
    for (std::uint32_t i = 1; i <= t.height(); ++i) {
        std::size_t sz = t.level_size(i);
        if (sz > opts.oracle_limit) break;
        std::size_t msz = t.level_size(i - 1);
        const PrimeModulus& m = t.mod;
        for (std::size_t s = 0; s < opts.samples; ++s) {
            // push_down duality: <pdT(L), v> = <L, pd(v)>
            std::vector<std::vector<word>> L(t.p(), std::vector<word>(msz));
            for (auto& blk : L)
                for (word& w : blk) w = rng() % t.p();
            TowerElement v = random_element(t, i, rng);
            std::vector<word> Lc = push_down_transposed(t, i, L);
            word lhs = 0;
            for (std::size_t a = 0; a < sz; ++a) lhs = m.add(lhs, m.mul(Lc[a], v.coeffs[a]));
            BivariateElement pd = push_down(v);
            word rhs = 0;
            for (std::size_t b = 0; b < t.p(); ++b)
                for (std::size_t a = 0; a < msz; ++a)
                    rhs = m.add(rhs, m.mul(L[b][a], pd.parts[b].coeffs[a]));
            if (lhs != rhs) return "push_down_transposed duality fails at " + level_tag(i, sz);
        }
    }
    // univariate transposed product duality on each level's modulus
    std::mt19937_64 rng2(opts.seed ^ 0x2545f4914f6cdd1dull);
    for (std::uint32_t i = 0; i <= t.height(); ++i) {
        std::size_t n = t.level_size(i);
        if (n > opts.oracle_limit) break;
        const Reducer& red = t.levels[i].red;
        const PrimeModulus& m = t.mod;
        for (std::size_t s = 0; s < opts.samples; ++s) {
            TowerElement w = random_element(t, i, rng2), v = random_element(t, i, rng2);
            std::vector<word> ell(n);
            for (word& x : ell) x = rng2() % t.p();
            PrimePoly wp(t.mod);
            wp.c = w.coeffs;
            wp.normalize();
            std::vector<word> wl = red.transposed_mul(wp, ell);
            word lhs = 0;
            for (std::size_t a = 0; a < n; ++a) lhs = m.add(lhs, m.mul(wl[a], v.coeffs[a]));
            TowerElement prod = mul(v, w);
            word rhs = 0;
            for (std::size_t a = 0; a < n; ++a) rhs = m.add(rhs, m.mul(ell[a], prod.coeffs[a]));
            if (lhs != rhs) return "transposed_mul duality fails at " + level_tag(i, n);
            std::vector<word> wl2 = transposed_mul_naive(wp, ell, t.levels[i].q);
            if (wl != wl2) return "transposed_mul fast/naive mismatch at " + level_tag(i, n);
        }
    }
    return {};
}

std::string check_frobenius(const TowerDescriptor& t, const VerifyOptions& opts) {
    if (!t.options.frobenius_tables) return {};
    std::mt19937_64 rng(opts.seed ^ 0x6a09e667f3bcc909ull);
    for (std::uint32_t i = 0; i <= t.height(); ++i) {
        std::size_t sz = t.level_size(i);
        if (sz > opts.oracle_limit) break;
        MvContext ctx = oracle::primitive_context(t, i);
        std::vector<word> exps;
        for (word n : little_exponent_set(t.d)) exps.push_back(n);
        for (word n = t.d; n <= sz; n *= t.p()) exps.push_back(n);
        for (std::size_t s = 0; s < std::min<std::size_t>(opts.samples, 10); ++s) {
            TowerElement v = random_element(t, i, rng);
            MvElement vm = oracle::basis_convert(ctx, v);
            for (word n : exps) {
                TowerElement f = frobenius(v, n);
                MvElement fm = oracle::naive_frobenius(ctx, vm, n);
                if (!(oracle::basis_convert(ctx, f).coeffs == fm.coeffs))
                    return "frobenius(v, " + std::to_string(n) + ") off at " + level_tag(i, sz);
            }
            TowerElement pt = pseudotrace(v, std::min<std::size_t>(i, 1));
            word nn = t.d;
            for (std::size_t h = 0; h < std::min<std::size_t>(i, 1); ++h) nn *= t.p();
            MvElement ptm = oracle::naive_pseudotrace(ctx, vm, nn);
            if (!(oracle::basis_convert(ctx, pt).coeffs == ptm.coeffs))
                return "pseudotrace off at " + level_tag(i, sz);
        }
    }
    return {};
}

std::string check_solver(const TowerDescriptor& t, const VerifyOptions& opts) {
    if (!t.options.frobenius_tables) return {};
    std::mt19937_64 rng(opts.seed ^ 0xbb67ae8584caa73bull);
    for (std::uint32_t i = 0; i <= t.height(); ++i) {
        std::size_t sz = t.level_size(i);
        if (sz > opts.mv_limit) break;
        for (std::size_t s = 0; s < std::min<std::size_t>(opts.samples, 10); ++s) {
            TowerElement delta = random_element(t, i, rng);
            TowerElement alpha = sub(pow(delta, t.p()), delta);
            TowerElement found = solve_artin_schreier(alpha);
            if (!(sub(pow(found, t.p()), found) == alpha))
                return "solver output fails its equation at " + level_tag(i, sz);
            TowerElement diff = sub(found, delta);
            for (std::size_t a = 1; a < diff.coeffs.size(); ++a)
                if (diff.coeffs[a] != 0)
                    return "solver root not in delta + F_p at " + level_tag(i, sz);
        }
    }
    return {};
}

std::string check_isomorphism(const TowerDescriptor& t, const VerifyOptions& opts) {
    if (!t.options.frobenius_tables) return {};
    std::mt19937_64 rng(opts.seed ^ 0x3c6ef372fe94f82bull);
    std::size_t k = t.height();
    while (k > 0 && t.level_size(k) > opts.mv_limit) --k;
    if (k == 0) return {};
    GeneralTower g = random_general_tower(t, k, rng);
    MvContext ctx = oracle::general_context(g);
    for (std::uint32_t i = 1; i <= k; ++i) {
        const TowerElement& s = g.images[i];
        TowerElement rel = sub(pow(s, t.p()), s);
        TowerElement img = embed_up(apply_isomorphism(g, g.generators[i - 1]));
        if (!(rel == img)) return "s_i^p - s_i != sigma(gamma'_{i-1}) at level " + std::to_string(i);
        for (std::size_t s2 = 0; s2 < opts.samples; ++s2) {
            GeneralElement a = make_general(t, i, [&] {
                std::vector<word> c(t.level_size(i));
                for (word& w : c) w = rng() % t.p();
                return c;
            }());
            GeneralElement b = make_general(t, i, [&] {
                std::vector<word> c(t.level_size(i));
                for (word& w : c) w = rng() % t.p();
                return c;
            }());
            TowerElement sa = apply_isomorphism(g, a), sb = apply_isomorphism(g, b);
            // additive
            MvElement sum = oracle::mv_add(ctx, {i, a.coeffs}, {i, b.coeffs});
            if (!(apply_isomorphism(g, make_general(t, i, sum.coeffs)) == add(sa, sb)))
                return "sigma not additive at level " + std::to_string(i);
            // multiplicative, via the general-tower oracle product
            MvElement prod = oracle::mv_mul(ctx, {i, a.coeffs}, {i, b.coeffs});
            if (!(apply_isomorphism(g, make_general(t, i, prod.coeffs)) == mul(sa, sb)))
                return "sigma not multiplicative at level " + std::to_string(i);
            // round trips
            if (!(apply_inverse(g, sa) == a))
                return "sigma^{-1} . sigma != id at level " + std::to_string(i);
            TowerElement v = random_element(t, i, rng);
            if (!(apply_isomorphism(g, apply_inverse(g, v)) == v))
                return "sigma . sigma^{-1} != id at level " + std::to_string(i);
        }
    }
    return {};
}

std::string check_serialization(const TowerDescriptor& t) {
    TowerDescriptor re = tower_from_json(tower_to_json(t, true));
    if (re.height() != t.height()) return "height changed across serialization";
    for (std::uint32_t i = 0; i <= t.height(); ++i) {
        if (!(re.levels[i].q == t.levels[i].q)) return "Q_i changed across serialization";
        if (re.levels[i].beta_little != t.levels[i].beta_little)
            return "beta tables changed across serialization";
    }
    return {};
}

} // namespace

std::vector<CheckResult> verify_tower(const TowerDescriptor& t, const VerifyOptions& opts) {
    Runner r{t, opts, {}};
    r.run("tower shape", [&] { return check_shape(t); });
    r.run("tower consistency", [&] { return check_consistency(t, opts); });
    r.run("trace identities", [&] { return check_trace_identities(t, opts); });
    r.run("embedding round trip", [&] { return check_embedding(t, opts); });
    r.run("duality contracts", [&] { return check_duality(t, opts); });
    r.run("frobenius and pseudotrace", [&] { return check_frobenius(t, opts); });
    r.run("artin-schreier solver", [&] { return check_solver(t, opts); });
    r.run("isomorphism", [&] { return check_isomorphism(t, opts); });
    r.run("serialization round trip", [&] { return check_serialization(t); });
    return r.results;
}

} // namespace astower::verify
