#pragma once

// The transfer map and conjugacy in the central extension.  For gamma and a
// centralizing x, zeta_gamma(x) is the z-exponent of x^-1 gamma x gamma^-1:
// conjugation by x shifts the central coordinate of gamma by it.  Two lifts
// of a conjugate pair differ by a central offset N, and they are conjugate
// exactly when N lies in the image ideal of zeta on the centralizer.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conjugacy.hpp"
#include "snowflake_words.hpp"

namespace snowflake {

inline Word strip_z(const Word& w) {
    Word r;
    for (Letter l : w)
        if (l.gen != Gen::z) r.push_back(l);
    return r;
}

inline Int zeta_value(const GroupParams& G, const Word& gamma, const Word& x) {
    if (!G.track_z)
        throw std::invalid_argument("zeta_value: group does not track z");
    GroupParams base = GroupParams::bpq_plus(G.p, G.q);
    CanonicalElement gb = canonicalize(base, strip_z(gamma));
    if (!(conjugate(gb, canonicalize(base, strip_z(x))) == gb))
        throw std::domain_error("zeta_value: x does not centralize gamma");
    Word w = inverse_word(x);
    w += gamma;
    w += x;
    w += inverse_word(gamma);
    return z_exponent(G, w);
}

struct CentralizerData {
    enum class Case { identity, pure_b_power, b_l_omega, misses_cb };
    Case kind = Case::misses_cb;
    std::optional<PreferredRep> rep;  // engaged unless misses_cb
    Word u0;                          // b^l omega
    // Generators of the centralizer image with their transfer values.
    std::vector<std::pair<Word, Int>> generators;
    Int ideal_gcd = 0;  // gcd of |zeta| over generators; 0 = zero map
    Int theta_sum = 0;       // theta exponent sum of omega
    Int root_theta_sum = 0;  // theta exponent sum of its maximal root
};

inline CentralizerData centralizer_data(const GroupParams& G, const Word& gamma) {
    if (!G.track_z)
        throw std::invalid_argument("centralizer_data: group does not track z");
    GroupParams base = GroupParams::bpq_plus(G.p, G.q);
    CentralizerData d;
    auto pr = preferred_rep(base, strip_z(gamma));
    if (!pr) {
        d.kind = CentralizerData::Case::misses_cb;
        return d;
    }
    d.rep = pr;
    d.u0 = preferred_rep_word(*pr);
    if (pr->omega.empty() && pr->l == 0) {
        d.kind = CentralizerData::Case::identity;
        return d;
    }
    if (pr->omega.empty()) {
        d.kind = CentralizerData::Case::pure_b_power;
        Word th{Letter{Gen::theta, 1}};
        Int zth = zeta_value(G, d.u0, th);
        d.generators = {{Word{Letter{Gen::b, 1}}, 0}, {Word{Letter{Gen::a, 1}}, 0}, {th, zth}};
        d.ideal_gcd = abs(zth);
        return d;
    }
    d.kind = CentralizerData::Case::b_l_omega;
    Word omega0 = max_root(pr->omega).root;
    d.theta_sum = exponent_sum(pr->omega, Gen::theta);
    d.root_theta_sum = exponent_sum(omega0, Gen::theta);
    Word bw{Letter{Gen::b, 1}};
    Int zb = zeta_value(G, d.u0, bw);
    Int zo = zeta_value(G, d.u0, omega0);
    d.generators = {{bw, zb}, {omega0, zo}};
    d.ideal_gcd = gcd(abs(zb), abs(zo));
    return d;
}

// Solves sum lambda_i m_i = N with m_0 != 0, normalizing the trailing
// coefficients into [0, |m_0|).  The leading coefficient then satisfies
// |lambda| |m_0| < |N| + |m_0| sum_{i>=1} |m_i| whenever some trailing
// generator is nonzero (otherwise |lambda| |m_0| = |N|).
struct BezoutResult {
    bool in_ideal = false;
    Int lambda = 0;
    std::vector<Int> mu;
};

inline BezoutResult bezout_bounded(const std::vector<Int>& m, const Int& N) {
    if (m.empty() || m[0] == 0)
        throw std::invalid_argument("bezout_bounded: leading generator must be nonzero");
    Int g = 0;
    for (const Int& x : m) g = gcd(g, abs(x));
    BezoutResult r;
    if (N % g != 0) return r;
    std::vector<Int> c(m.size(), 0);
    Int acc = m[0];
    c[0] = 1;
    for (size_t i = 1; i < m.size(); ++i) {
        ExtGcd e = ext_gcd(acc, m[i]);
        for (size_t j = 0; j < i; ++j) c[j] *= e.x;
        c[i] = e.y;
        acc = e.g;
    }
    if (acc < 0) {  // single negative generator
        acc = -acc;
        for (Int& x : c) x = -x;
    }
    Int scale = N / acc;
    Int lambda = c[0] * scale;
    Int m0 = abs(m[0]);
    r.mu.resize(m.size() - 1);
    for (size_t i = 1; i < m.size(); ++i) {
        Int ai = c[i] * scale;
        Int mui = fmod_pos(ai, m0);
        Int eta = (ai - mui) / m[0];
        lambda += eta * m[i];
        r.mu[i - 1] = mui;
    }
    r.lambda = lambda;
    r.in_ideal = true;
    return r;
}

// Word g in the centralizer of u0 with zeta_{u0}(g) = N, if one exists.
// b-power coordinates are realized through short_t_word, so |g| grows like
// |coefficient|^{1/alpha} rather than linearly.
inline std::optional<Word> central_offset_conjugator(const GroupParams& G,
                                                     const CentralizerData& data,
                                                     const Int& N) {
    using Case = CentralizerData::Case;
    switch (data.kind) {
        case Case::identity:
        case Case::misses_cb:
            if (N == 0) return Word{};
            return std::nullopt;
        case Case::pure_b_power: {
            const Int& zth = data.generators[2].second;
            if (zth == 0) return N == 0 ? std::optional<Word>(Word{}) : std::nullopt;
            if (N % zth != 0) return std::nullopt;
            return letter_run(Gen::theta, N / zth);
        }
        case Case::b_l_omega: {
            const Word& bw = data.generators[0].first;
            const Int& zb = data.generators[0].second;
            const Word& omega0 = data.generators[1].first;
            const Int& zo = data.generators[1].second;
            if (zb == 0 && zo == 0)
                return N == 0 ? std::optional<Word>(Word{}) : std::nullopt;
            SnowflakeBuilder builder(G);
            auto realize = [&](const Word& x, const Int& e) {
                if (x.size() == 1 && x[0] == Letter{Gen::b, 1})
                    return builder.short_t_word({0, e});
                return word_power(x, e);
            };
            Word first = bw, second = omega0;
            Int mfirst = zb, msecond = zo;
            if (zb == 0) {
                std::swap(first, second);
                std::swap(mfirst, msecond);
            }
            BezoutResult bz = bezout_bounded({mfirst, msecond}, N);
            if (!bz.in_ideal) return std::nullopt;
            Word g = realize(first, bz.lambda);
            g += realize(second, bz.mu[0]);
            return g;
        }
    }
    return std::nullopt;
}

struct TildeCert {
    bool conjugate = false;
    Word conjugator;
    Word x_u, g_mid, x_v;  // conjugator = x_u . g_mid . x_v^-1 before reduction
    Int N_u = 0, N_v = 0, N = 0;
    CentralizerData::Case kind = CentralizerData::Case::misses_cb;
    std::string reason;
    bool verified = false;
};

inline TildeCert cl_tilde(const GroupParams& G, const Word& u, const Word& v) {
    if (!G.track_z)
        throw std::invalid_argument("cl_tilde: group does not track z");
    GroupParams base = GroupParams::bpq_plus(G.p, G.q);
    Word ub = strip_z(u), vb = strip_z(v);
    TildeCert out;

    ConjCertificate c = conjugacy(base, ub, vb);
    if (!c.conjugate) {
        out.reason = "images modulo the center are not conjugate";
        return out;
    }
    CentralizerData data = centralizer_data(G, ub);
    out.kind = data.kind;

    Word u0, xu;
    if (data.kind == CentralizerData::Case::misses_cb) {
        CyclicForm cf = cyclic_canonical(base, ub);
        u0 = cf.rep.word();
        xu = cf.conjugator;
    } else {
        u0 = data.u0;
        xu = data.rep->conjugator;
    }
    Word xv = free_reduce(concat(inverse_word(c.conjugator), xu));

    auto central_shift = [&](const Word& w, const Word& x) {
        Word tmp = inverse_word(x);
        tmp += w;
        tmp += x;
        tmp += inverse_word(u0);
        return z_exponent(G, tmp);
    };
    out.N_u = central_shift(u, xu);
    out.N_v = central_shift(v, xv);
    out.N = out.N_v - out.N_u;

    std::optional<Word> g = central_offset_conjugator(G, data, out.N);
    if (!g) {
        out.reason = "central offset lies outside the transfer image";
        return out;
    }
    out.x_u = xu;
    out.g_mid = *g;
    out.x_v = xv;
    Word conj = xu;
    conj += *g;
    conj += inverse_word(xv);
    out.conjugator = free_reduce(conj);
    out.conjugate = true;
    out.reason = "central offset realized on the centralizer";

    Word check = inverse_word(out.conjugator);
    check += u;
    check += out.conjugator;
    check += inverse_word(v);
    out.verified = canonicalize(G, check).is_identity();
    return out;
}

}  // namespace snowflake
