#pragma once

// Conjugacy decision with verified conjugators.  Vertex (elliptic) classes
// reduce to a three-point orbit with a terminal root; classes with stable
// letters are decided against rotations of the cyclic form, with the seam
// twist left as one integer unknown solved from affine membership
// constraints.  Central-extension conjugacy lives in zeta.hpp.

#include <optional>
#include <string>

#include "engine.hpp"

namespace snowflake {

struct EllipticRoot {
    TPoint root;
    Word conjugator;  // canon(conj^-1 . point . conj) == root
};

// Vertex orbits are {(qk,0), (pk,k), (pk,-k)}; at most one descent applies
// and it lands on the terminal b-exponent-zero representative.
inline EllipticRoot elliptic_root(const GroupParams& G, const TPoint& pt) {
    if (pt.n_b != 0 && pt.n_a == G.p * pt.n_b)
        return {{G.q * pt.n_b, 0}, {Letter{Gen::s, -1}}};
    if (pt.n_b != 0 && pt.n_a == -G.p * pt.n_b)
        return {{-G.q * pt.n_b, 0}, {Letter{Gen::t, -1}}};
    return {pt, {}};
}

struct ConjCertificate {
    bool conjugate = false;
    Word conjugator;  // canon(conjugator^-1 . u . conjugator) == canon(v)
    std::string reason;
    bool verified = false;
};

namespace detail {

// Solves g^-1 X g = Y over vertex elements g, where X and Y are cyclically
// reduced forms with identical stable-letter sequences.  Writing
// g = (a_0 - b_0) + M d_1, every crossing membership is affine in M; the
// symbolic pass either pins M or leaves it free (then M = 0 works if
// anything does), and an exact integer replay validates the choice.
inline std::optional<TPoint> slab_conjugator(const CanonicalElement& X,
                                             const CanonicalElement& Y) {
    const GroupParams& G = X.params;
    const size_t k = X.body.size();
    if (Y.body.size() != k || k == 0) return std::nullopt;
    for (size_t j = 0; j < k; ++j)
        if (!(X.body[j].letter == Y.body[j].letter)) return std::nullopt;

    auto a = [&](size_t j) { return j < k ? X.body[j].point : X.tail; };
    auto b = [&](size_t j) { return j < k ? Y.body[j].point : Y.tail; };
    const TPoint d1 = domain_vec(G, X.body[0].letter);

    std::optional<Int> forced;
    bool failed = false;
    struct Aff {
        Rat base, coef;
    };  // value = base + coef * M
    Aff nu{0, 1};
    auto force = [&](const Rat& base, const Rat& coef) {
        // base + coef * M == 0 with coef != 0
        Rat m = -base / coef;
        if (denominator(m) != 1) failed = true;
        else forced = numerator(m);
    };
    for (size_t j = 1; j < k && !forced && !failed; ++j) {
        TPoint r = range_vec(G, X.body[j - 1].letter);
        TPoint d = domain_vec(G, X.body[j].letter);
        TPoint delta = b(j) - a(j);
        Rat rxd = Rat(r.n_a) * d.n_b - Rat(r.n_b) * d.n_a;
        Rat cbase = Rat(delta.n_a) * d.n_b - Rat(delta.n_b) * d.n_a + nu.base * rxd;
        Rat ccoef = nu.coef * rxd;
        if (ccoef != 0) {
            force(cbase, ccoef);
            break;
        }
        if (cbase != 0) return std::nullopt;
        if (d.n_a != 0)
            nu = {(Rat(delta.n_a) + nu.base * r.n_a) / d.n_a,
                  nu.coef * Rat(r.n_a) / d.n_a};
        else
            nu = {(Rat(delta.n_b) + nu.base * r.n_b) / d.n_b,
                  nu.coef * Rat(r.n_b) / d.n_b};
    }
    if (!forced && !failed) {
        // closure: nu_{k-1} r_k + (b_k - a_k) == (a_0 - b_0) + M d_1
        TPoint rk = range_vec(G, X.body[k - 1].letter);
        TPoint deltak = b(k) - a(k);
        TPoint off = a(0) - b(0);
        Rat coefs[2] = {nu.coef * rk.n_a - d1.n_a, nu.coef * rk.n_b - d1.n_b};
        Rat bases[2] = {Rat(off.n_a) - deltak.n_a - nu.base * rk.n_a,
                        Rat(off.n_b) - deltak.n_b - nu.base * rk.n_b};
        for (int i = 0; i < 2 && !forced && !failed; ++i) {
            if (coefs[i] != 0) force(-bases[i], coefs[i]);
            else if (bases[i] != 0) failed = true;
        }
    }
    if (failed) return std::nullopt;

    const Int M = forced.value_or(Int(0));
    TPoint g = (a(0) - b(0)) + M * d1;
    Int nu_int = M;
    for (size_t j = 1; j < k; ++j) {
        TPoint r = range_vec(G, X.body[j - 1].letter);
        TPoint d = domain_vec(G, X.body[j].letter);
        TPoint s = nu_int * r + (b(j) - a(j));
        if (cross2(s, d) != 0) return std::nullopt;
        Int num = d.n_a != 0 ? s.n_a : s.n_b;
        Int den = d.n_a != 0 ? d.n_a : d.n_b;
        if (num % den != 0) return std::nullopt;
        nu_int = num / den;
    }
    TPoint rk = range_vec(G, X.body[k - 1].letter);
    if (!(nu_int * rk + (b(k) - a(k)) == g)) return std::nullopt;
    return g;
}

}  // namespace detail

inline ConjCertificate conjugacy(const GroupParams& G, const Word& u, const Word& v) {
    if (G.track_z)
        throw std::invalid_argument(
            "conjugacy: central-extension classes need the transfer pipeline");
    CanonicalElement U = canonicalize(G, u);
    CanonicalElement V = canonicalize(G, v);
    CyclicForm cu = cyclic_canonical(U);
    CyclicForm cv = cyclic_canonical(V);

    ConjCertificate cert;
    auto finish = [&](Word c, const char* reason) {
        cert.conjugate = true;
        cert.conjugator = free_reduce(std::move(c));
        cert.reason = reason;
        cert.verified = conjugate(U, canonicalize(G, cert.conjugator)) == V;
        return cert;
    };

    if (cu.rep.is_vertex() != cv.rep.is_vertex()) {
        cert.reason = "one class is elliptic, the other is not";
        return cert;
    }
    if (cu.rep.is_vertex()) {
        EllipticRoot ru = elliptic_root(G, cu.rep.tail);
        EllipticRoot rv = elliptic_root(G, cv.rep.tail);
        if (ru.root == rv.root) {
            Word c = cu.conjugator;
            c += ru.conjugator;
            c += inverse_word(rv.conjugator);
            c += inverse_word(cv.conjugator);
            return finish(std::move(c), "common elliptic root");
        }
        cert.reason = "distinct elliptic roots";
        return cert;
    }

    const size_t k = cu.rep.body.size();
    if (cv.rep.body.size() != k) {
        cert.reason = "different cyclic lengths";
        return cert;
    }
    CanonicalElement vr = cv.rep;
    Word rot;
    for (size_t r = 0; r < k; ++r) {
        if (r > 0) rot += detail::rotate_once(vr);
        if (auto g = detail::slab_conjugator(cu.rep, vr)) {
            Word c = cu.conjugator;
            c += point_word(*g);
            c += inverse_word(rot);
            c += inverse_word(cv.conjugator);
            return finish(std::move(c), "cyclic forms match after rotation");
        }
    }
    cert.reason = "no rotation admits a crossing conjugator";
    return cert;
}

// Representative of the class inside the centralizer of b, when the class
// meets it: b^l omega with omega a word over {a, theta}.  Elliptic classes
// are rooted first; classes with any s or t letter in the cyclic form miss.
struct PreferredRep {
    Int l;
    Word omega;       // freely and cyclically reduced over a, theta
    Word conjugator;  // canon(conj^-1 . u . conj) == canon(b^l omega), mod center
};

inline Word preferred_rep_word(const PreferredRep& pr) {
    return concat(letter_run(Gen::b, pr.l), pr.omega);
}

inline std::optional<PreferredRep> preferred_rep(const GroupParams& G, const Word& u) {
    CyclicForm cf = cyclic_canonical(G, u);
    if (cf.rep.is_vertex()) {
        EllipticRoot root = elliptic_root(G, cf.rep.tail);
        Word conj = cf.conjugator;
        conj += root.conjugator;
        return PreferredRep{root.root.n_b, letter_run(Gen::a, root.root.n_a),
                            free_reduce(conj)};
    }
    for (const Syllable& s : cf.rep.body)
        if (s.letter.gen != Gen::theta) return std::nullopt;
    Word omega;
    for (const Syllable& s : cf.rep.body) {
        omega += letter_run(Gen::a, s.point.n_a);
        omega.push_back(s.letter);
    }
    omega += letter_run(Gen::a, cf.rep.tail.n_a);
    return PreferredRep{cf.rep.tail.n_b, free_reduce(omega), cf.conjugator};
}

}  // namespace snowflake
