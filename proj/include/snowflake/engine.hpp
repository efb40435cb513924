#pragma once

// Normal forms.  Elements are kept as h_0 s_1 h_1 ... s_k h_k z^e where the
// s_i are stable letters (s, t, theta and inverses), the h_j lie in the
// vertex lattice Z^2 = <a,b>, each h_j left of a stable letter is the fixed
// coset representative for that letter's crossing subgroup, and no pinch
// s^-1 h s with h in the crossing subgroup remains.  Appending one letter is
// amortized O(1): at most one push or one pop.

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "group.hpp"

namespace snowflake {

struct TPoint {
    Int n_a, n_b;
    friend bool operator==(const TPoint&, const TPoint&) = default;
    TPoint operator+(const TPoint& o) const { return {n_a + o.n_a, n_b + o.n_b}; }
    TPoint operator-(const TPoint& o) const { return {n_a - o.n_a, n_b - o.n_b}; }
    TPoint operator-() const { return {-n_a, -n_b}; }
};

inline TPoint operator*(const Int& k, const TPoint& v) { return {k * v.n_a, k * v.n_b}; }

inline Int cross2(const TPoint& u, const TPoint& v) { return u.n_a * v.n_b - u.n_b * v.n_a; }

struct Syllable {
    TPoint point;   // h_j, the coset representative
    Letter letter;  // s_{j+1}
    friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Splitting h against an incoming stable letter: h = rep + multiple * d where
// d spans the crossing subgroup on the near side, and multiple * d moves
// across the letter as carry = multiple * r; theta crossings pick up z.
struct Crossing {
    TPoint rep;
    TPoint carry;
    Int zcorr;
    Int multiple;
};

// Subgroup directions, near side (before the letter) and far side (after).
inline TPoint domain_vec(const GroupParams& G, Letter sig) {
    if (sig.gen == Gen::theta) return {0, 1};
    if (sig.sign > 0) return {G.q, 0};
    return {G.p, sig.gen == Gen::s ? 1 : -1};
}

inline TPoint range_vec(const GroupParams& G, Letter sig) {
    if (sig.gen == Gen::theta) return {0, 1};
    if (sig.sign > 0) return {G.p, sig.gen == Gen::s ? 1 : -1};
    return {G.q, 0};
}

namespace detail {

// Machine-word fast path for the crossing arithmetic; 2^40 leaves headroom
// for the p*k products.
inline bool small_point(const TPoint& h) {
    constexpr long long lim = 1LL << 40;
    return h.n_a < lim && h.n_a > -lim && h.n_b < lim && h.n_b > -lim;
}

inline long long fdiv_ll(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace detail

inline Crossing split(const GroupParams& G, const TPoint& h, Letter sig) {
    switch (sig.gen) {
        case Gen::s:
        case Gen::t: {
            if (detail::small_point(h)) {
                long long na = h.n_a.convert_to<long long>();
                long long nb = h.n_b.convert_to<long long>();
                if (sig.sign > 0) {
                    long long k = detail::fdiv_ll(na, G.q);
                    return {{Int(na - G.q * k), Int(nb)},
                            {Int(G.p * k), Int(sig.gen == Gen::s ? k : -k)},
                            0,
                            Int(k)};
                }
                long long k = sig.gen == Gen::s ? nb : -nb;
                return {{Int(na - G.p * k), 0}, {Int(G.q * k), 0}, 0, Int(k)};
            }
            if (sig.sign > 0) {
                Int k = fdiv(h.n_a, G.q);
                return {{h.n_a - G.q * k, h.n_b},
                        {G.p * k, sig.gen == Gen::s ? k : -k},
                        0,
                        k};
            }
            Int k = sig.gen == Gen::s ? h.n_b : -h.n_b;
            return {{h.n_a - G.p * k, 0}, {G.q * k, 0}, 0, k};
        }
        case Gen::theta: {
            Int k = h.n_b;
            Int zc = G.track_z ? (sig.sign > 0 ? k : -k) : Int(0);
            return {{h.n_a, 0}, {0, k}, zc, k};
        }
        default:
            throw std::logic_error("split: not a stable letter");
    }
}

inline Word point_word(const TPoint& pt) {
    Word w = letter_run(Gen::a, pt.n_a);
    w += letter_run(Gen::b, pt.n_b);
    return w;
}

struct CanonicalElement {
    GroupParams params;
    std::vector<Syllable> body;  // body[j] = (h_j, s_{j+1})
    TPoint tail{0, 0};           // h_k
    Int z_exp = 0;

    static CanonicalElement identity(const GroupParams& g) { return {g, {}, {0, 0}, 0}; }

    bool is_vertex() const { return body.empty(); }
    bool is_identity() const {
        return body.empty() && tail == TPoint{0, 0} && z_exp == 0;
    }

    void append_point(const TPoint& d) {
        tail.n_a += d.n_a;
        tail.n_b += d.n_b;
    }

    void append_stable(Letter sig) {
        Crossing c = split(params, tail, sig);
        z_exp += c.zcorr;
        if (!body.empty() && body.back().letter == inverse(sig) &&
            c.rep == TPoint{0, 0}) {
            tail = body.back().point + c.carry;
            body.pop_back();
        } else {
            body.push_back({c.rep, sig});
            tail = c.carry;
        }
    }

    void append_letter(Letter l) {
        if (!params.allows(l.gen))
            throw std::invalid_argument(std::string("letter '") + letter_char(l) +
                                        "' is not a generator here");
        switch (l.gen) {
            case Gen::a: tail.n_a += l.sign; break;
            case Gen::b: tail.n_b += l.sign; break;
            case Gen::z: z_exp += l.sign; break;
            default: append_stable(l);
        }
    }

    void append_word(const Word& w) {
        for (Letter l : w) append_letter(l);
    }

    void multiply_by(const CanonicalElement& o) {
        for (const Syllable& s : o.body) {
            append_point(s.point);
            append_stable(s.letter);
        }
        append_point(o.tail);
        z_exp += o.z_exp;
    }

    CanonicalElement inverse_element() const {
        CanonicalElement r = identity(params);
        r.append_point(-tail);
        for (auto it = body.rbegin(); it != body.rend(); ++it) {
            r.append_stable(inverse(it->letter));
            r.append_point(-(it->point));
        }
        r.z_exp -= z_exp;
        return r;
    }

    Word word() const {
        Word w;
        for (const Syllable& s : body) {
            w += point_word(s.point);
            w.push_back(s.letter);
        }
        w += point_word(tail);
        w += letter_run(Gen::z, z_exp);
        return w;
    }

    std::string print() const {
        std::string out;
        auto tok = [&](char lowc, const Int& n) {
            if (n == 0) return;
            if (!out.empty()) out += ' ';
            out += n > 0 ? lowc : static_cast<char>(lowc - 'a' + 'A');
            Int m = abs(n);
            if (m != 1) {
                out += '^';
                out += m.str();
            }
        };
        auto point = [&](const TPoint& pt) {
            tok('a', pt.n_a);
            tok('b', pt.n_b);
        };
        for (const Syllable& s : body) {
            point(s.point);
            if (!out.empty()) out += ' ';
            out += letter_char(s.letter);
        }
        point(tail);
        tok('z', z_exp);
        return out.empty() ? "1" : out;
    }

    std::string key() const;

    friend bool operator==(const CanonicalElement&, const CanonicalElement&) = default;
};

namespace detail {

inline void encode_int(std::string& out, const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min() / 2;
    static const Int hi = std::numeric_limits<long long>::max() / 2;
    if (v >= lo && v <= hi) {
        long long x = v.convert_to<long long>();
        auto u = static_cast<unsigned long long>((x << 1) ^ (x >> 63));
        out += '\x01';
        while (u >= 0x80) {
            out += static_cast<char>(0x80 | (u & 0x7F));
            u >>= 7;
        }
        out += static_cast<char>(u);
    } else {
        out += '\x02';
        out += v.str();
        out += '\0';
    }
}

inline int letter_rank(Letter l) {
    switch (l.gen) {
        case Gen::s: return l.sign > 0 ? 0 : 1;
        case Gen::t: return l.sign > 0 ? 2 : 3;
        case Gen::theta: return l.sign > 0 ? 4 : 5;
        default: throw std::logic_error("letter_rank: not a stable letter");
    }
}

}  // namespace detail

// Injective byte encoding of the normal form; used as hash key by oracles.
inline std::string CanonicalElement::key() const {
    std::string k;
    detail::encode_int(k, Int(static_cast<long long>(body.size())));
    for (const Syllable& s : body) {
        k += static_cast<char>('0' + detail::letter_rank(s.letter));
        detail::encode_int(k, s.point.n_a);
        detail::encode_int(k, s.point.n_b);
    }
    detail::encode_int(k, tail.n_a);
    detail::encode_int(k, tail.n_b);
    detail::encode_int(k, z_exp);
    return k;
}

inline CanonicalElement canonicalize(const GroupParams& G, const Word& w) {
    CanonicalElement e = CanonicalElement::identity(G);
    e.append_word(w);
    return e;
}

inline CanonicalElement multiply(CanonicalElement a, const CanonicalElement& b) {
    a.multiply_by(b);
    return a;
}

// conjugate(x, c) = c^-1 x c; every conjugacy routine uses this orientation.
inline CanonicalElement conjugate(const CanonicalElement& x, const CanonicalElement& c) {
    CanonicalElement r = c.inverse_element();
    r.multiply_by(x);
    r.multiply_by(c);
    return r;
}

inline bool equal_words(const GroupParams& G, const Word& u, const Word& v) {
    return canonicalize(G, u) == canonicalize(G, v);
}

inline TPoint t_eval(const CanonicalElement& e) {
    if (!e.is_vertex()) throw std::domain_error("t_eval: element has stable letters");
    return e.tail;
}

// Defined for words whose image modulo the center is trivial.
inline Int z_exponent(const GroupParams& G, const Word& w) {
    CanonicalElement e = canonicalize(G, w);
    if (!e.body.empty() || !(e.tail == TPoint{0, 0}))
        throw std::domain_error("z_exponent: word is not a central power");
    return e.z_exp;
}

// ---------------------------------------------------------------------------
// Cyclic forms.  cyclic_canonical returns the canonical representative of the
// input's conjugacy class plus a conjugator that realizes it:
// canon(conj^-1 . input . conj) == rep.  Wrap pinches are stripped first;
// then, per rotation, the vertex-conjugation orbit is collapsed by an exact
// lattice reduction of the cyclic point data, so conjugate inputs agree.
// The z exponent rides along and is excluded from all form comparisons.

struct CyclicForm {
    CanonicalElement rep;
    Word conjugator;
};

namespace detail {

// Conjugates by (h_0 s_1): moves the leading syllable past the end.
inline Word rotate_once(CanonicalElement& e) {
    Syllable front = e.body.front();
    e.body.erase(e.body.begin());
    e.append_point(front.point);
    e.append_stable(front.letter);
    Word c = point_word(front.point);
    c.push_back(front.letter);
    return c;
}

// Wrap pinches can only sit at the seam between the last and first letter;
// each collapse removes two stable letters.
inline Word cyclic_reduce(CanonicalElement& e) {
    Word conj;
    while (e.body.size() >= 2) {
        Letter s1 = e.body.front().letter;
        if (e.body.back().letter != inverse(s1)) break;
        Crossing c = split(e.params, e.tail + e.body.front().point, s1);
        if (!(c.rep == TPoint{0, 0})) break;
        conj += rotate_once(e);
    }
    return conj;
}

struct FormOrder {
    size_t k;
    std::string ranks;
    std::string points;
    explicit FormOrder(const CanonicalElement& e) : k(e.body.size()) {
        for (const Syllable& s : e.body) ranks += static_cast<char>('0' + letter_rank(s.letter));
        for (const Syllable& s : e.body) {
            points += s.point.n_a.str();
            points += ',';
            points += s.point.n_b.str();
            points += ';';
        }
        points += e.tail.n_a.str();
        points += ',';
        points += e.tail.n_b.str();
    }
    bool operator<(const FormOrder& o) const {
        if (k != o.k) return k < o.k;
        if (ranks != o.ranks) return ranks < o.ranks;
        return points < o.points;
    }
};

// Canonical residue of v modulo the integer column span of B, together with
// the applied coefficients: on return v == v_in - B y.  Columns are brought
// to echelon form over Z; each pivot-row coordinate of the residue is reduced
// into [0, pivot), which pins a unique representative of the coset whatever
// basis the elimination happened to produce.
inline void lattice_residue(std::vector<std::vector<Int>> B, std::vector<Int>& v,
                            std::vector<Int>& y) {
    const size_t cols = B.size();
    const size_t rows = v.size();
    std::vector<std::vector<Int>> U(cols, std::vector<Int>(cols, 0));
    for (size_t c = 0; c < cols; ++c) U[c][c] = 1;
    std::vector<Int> t(cols, 0);
    size_t lead = 0;
    for (size_t row = 0; row < rows && lead < cols; ++row) {
        while (true) {
            size_t piv = cols;
            for (size_t c = lead; c < cols; ++c)
                if (B[c][row] != 0 && (piv == cols || abs(B[c][row]) < abs(B[piv][row])))
                    piv = c;
            if (piv == cols) break;
            std::swap(B[piv], B[lead]);
            std::swap(U[piv], U[lead]);
            bool lone = true;
            for (size_t c = lead + 1; c < cols; ++c) {
                if (B[c][row] == 0) continue;
                Int f = B[c][row] / B[lead][row];
                for (size_t i = row; i < rows; ++i) B[c][i] -= f * B[lead][i];
                for (size_t i = 0; i < cols; ++i) U[c][i] -= f * U[lead][i];
                if (B[c][row] != 0) lone = false;
            }
            if (lone) break;
        }
        if (B[lead][row] == 0) continue;
        if (B[lead][row] < 0) {
            for (size_t i = row; i < rows; ++i) B[lead][i] = -B[lead][i];
            for (size_t i = 0; i < cols; ++i) U[lead][i] = -U[lead][i];
        }
        Int f = fdiv(v[row], B[lead][row]);
        if (f != 0) {
            for (size_t i = row; i < rows; ++i) v[i] -= f * B[lead][i];
            t[lead] += f;
        }
        ++lead;
    }
    y.assign(cols, 0);
    for (size_t c = 0; c < cols; ++c)
        if (t[c] != 0)
            for (size_t i = 0; i < cols; ++i) y[i] += t[c] * U[c][i];
}

// Collapses the vertex-conjugation orbit of one rotation of a cyclically
// reduced form.  The point following each crossing, with the tail wrapped
// into the leading point, determines the element up to the rewrites
//   (Q_{j-1}, Q_j) -> (Q_{j-1} - c d_j, Q_j + c r_j)
// that move a domain-subgroup power across crossing j.  Interior rewrites fix
// the element; the rewrite across the leading crossing conjugates by a
// multiple of its domain vector.  Reducing the stacked point vector to its
// canonical lattice residue therefore picks one form per orbit, and the
// leading coefficient recovers the conjugator.
inline CanonicalElement seam_normalize(const CanonicalElement& e, Word& conj) {
    const GroupParams& G = e.params;
    const size_t k = e.body.size();
    std::vector<Int> v(2 * k);
    for (size_t j = 0; j + 1 < k; ++j) {
        v[2 * j] = e.body[j + 1].point.n_a;
        v[2 * j + 1] = e.body[j + 1].point.n_b;
    }
    TPoint wrap = e.tail + e.body[0].point;
    v[2 * k - 2] = wrap.n_a;
    v[2 * k - 1] = wrap.n_b;

    std::vector<std::vector<Int>> B(k, std::vector<Int>(2 * k, 0));
    for (size_t j = 0; j < k; ++j) {
        TPoint d = domain_vec(G, e.body[j].letter);
        TPoint r = range_vec(G, e.body[j].letter);
        size_t prev = (j + k - 1) % k;
        B[j][2 * prev] -= d.n_a;
        B[j][2 * prev + 1] -= d.n_b;
        B[j][2 * j] += r.n_a;
        B[j][2 * j + 1] += r.n_b;
    }
    std::vector<Int> y;
    lattice_residue(std::move(B), v, y);

    CanonicalElement out = CanonicalElement::identity(G);
    for (size_t j = 0; j < k; ++j) {
        out.append_stable(e.body[j].letter);
        out.append_point({v[2 * j], v[2 * j + 1]});
    }
    conj += point_word(e.body[0].point);
    conj += point_word(y[0] * domain_vec(G, e.body[0].letter));
    return out;
}

}  // namespace detail

inline CyclicForm cyclic_canonical(const CanonicalElement& input) {
    CanonicalElement e = input;
    Word conj = detail::cyclic_reduce(e);
    if (e.body.empty()) {
        // vertex orbits {(qk,0), (pk,k), (pk,-k)} root at b exponent zero
        const GroupParams& G = input.params;
        if (e.tail.n_b != 0 && e.tail.n_a == G.p * e.tail.n_b) {
            conj.push_back(Letter{Gen::s, -1});
            e.tail = {G.q * e.tail.n_b, 0};
        } else if (e.tail.n_b != 0 && e.tail.n_a == -G.p * e.tail.n_b) {
            conj.push_back(Letter{Gen::t, -1});
            e.tail = {-G.q * e.tail.n_b, 0};
        }
        return {e, free_reduce(conj)};
    }

    CanonicalElement cur = e;
    Word cur_conj;
    CanonicalElement best;
    Word best_conj;
    bool have = false;
    const size_t k = e.body.size();
    for (size_t r = 0; r < k; ++r) {
        if (r > 0) cur_conj += detail::rotate_once(cur);
        Word sc;
        CanonicalElement cand = detail::seam_normalize(cur, sc);
        if (!have || detail::FormOrder(cand) < detail::FormOrder(best)) {
            best = cand;
            best_conj = cur_conj;
            best_conj += sc;
            have = true;
        }
    }
    Word full = conj;
    full += best_conj;
    full = free_reduce(full);
    CanonicalElement rep = conjugate(input, canonicalize(input.params, full));
    if (detail::FormOrder(rep) < detail::FormOrder(best) ||
        detail::FormOrder(best) < detail::FormOrder(rep))
        throw std::logic_error("cyclic_canonical: conjugator does not replay");
    return {rep, full};
}

inline CyclicForm cyclic_canonical(const GroupParams& G, const Word& w) {
    return cyclic_canonical(canonicalize(G, w));
}

}  // namespace snowflake
