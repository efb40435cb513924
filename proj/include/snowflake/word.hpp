#pragma once

// Letters and words.  A word is a flat sequence of signed generator letters;
// parsing expands exponents, printing re-compresses runs.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"

namespace snowflake {

enum class Gen : uint8_t { a = 0, b, s, t, theta, z };

// Hard cap on letters produced by parsing or expansion; guards against
// runaway exponents, not a group-theoretic limit.
inline constexpr size_t kMaxWordLetters = 50'000'000;

struct Letter {
    Gen gen;
    int8_t sign;  // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
};

inline Letter inverse(Letter l) { return {l.gen, static_cast<int8_t>(-l.sign)}; }

using Word = std::vector<Letter>;

inline char letter_char(Letter l) {
    static constexpr char lower[] = {'a', 'b', 's', 't', 'h', 'z'};
    char c = lower[static_cast<int>(l.gen)];
    return l.sign > 0 ? c : static_cast<char>(c - 'a' + 'A');
}

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)),
          position(pos) {}
};

namespace detail {
inline bool char_to_letter(char c, Letter& out) {
    bool upper = c >= 'A' && c <= 'Z';
    char low = upper ? static_cast<char>(c - 'A' + 'a') : c;
    Gen g;
    switch (low) {
        case 'a': g = Gen::a; break;
        case 'b': g = Gen::b; break;
        case 's': g = Gen::s; break;
        case 't': g = Gen::t; break;
        case 'h': g = Gen::theta; break;
        case 'z': g = Gen::z; break;
        default: return false;
    }
    out = {g, static_cast<int8_t>(upper ? -1 : 1)};
    return true;
}
}  // namespace detail

// Grammar: word := (letter exponent?)*, exponent := '^' '-'? digits.
// Lowercase letters are positive generators, uppercase their inverses.
// '^' binds to the single preceding letter; ASCII whitespace is ignored.
inline Word parse_word(std::string_view text) {
    Word w;
    size_t i = 0;
    auto expand = [&](Letter l, long long e, size_t pos) {
        if (e < 0) { l = inverse(l); e = -e; }
        if (w.size() + static_cast<size_t>(e) > kMaxWordLetters)
            throw ParseError("word too long", pos);
        for (long long j = 0; j < e; ++j) w.push_back(l);
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            ++i;
            continue;
        }
        Letter l;
        if (!detail::char_to_letter(c, l))
            throw ParseError(std::string("unexpected character '") + c + "'", i);
        size_t letter_pos = i;
        ++i;
        if (i < text.size() && text[i] == '^') {
            size_t caret = i;
            ++i;
            bool neg = false;
            if (i < text.size() && text[i] == '-') { neg = true; ++i; }
            if (i >= text.size() || text[i] < '0' || text[i] > '9')
                throw ParseError("expected digits after '^'", caret);
            long long e = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                e = e * 10 + (text[i] - '0');
                if (e > static_cast<long long>(kMaxWordLetters))
                    throw ParseError("exponent too large", caret);
                ++i;
            }
            expand(l, neg ? -e : e, letter_pos);
        } else {
            expand(l, 1, letter_pos);
        }
    }
    return w;
}

// Run-length printing: "a a a B B" -> "a^3 B^2".  Empty word prints empty.
inline std::string print_word(const Word& w) {
    std::string out;
    size_t i = 0;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += ' ';
        out += letter_char(w[i]);
        if (j - i > 1) {
            out += '^';
            out += std::to_string(j - i);
        }
        i = j;
    }
    return out;
}

inline Word inverse_word(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inverse(*it));
    return r;
}

inline Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline Word& operator+=(Word& a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline Word free_reduce(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (Letter l : w) {
        if (!r.empty() && r.back() == inverse(l)) r.pop_back();
        else r.push_back(l);
    }
    return r;
}

inline Word word_power(const Word& w, const Int& e) {
    Int n = e < 0 ? -e : e;
    Int total = n * static_cast<long long>(w.size());
    if (total > static_cast<long long>(kMaxWordLetters))
        throw std::length_error("word_power: result too long");
    const Word base = e < 0 ? inverse_word(w) : w;
    Word r;
    r.reserve(total.convert_to<size_t>());
    for (Int i = 0; i < n; ++i) r += base;
    return r;
}

inline Int exponent_sum(const Word& w, Gen g) {
    Int s = 0;
    for (Letter l : w)
        if (l.gen == g) s += l.sign;
    return s;
}

inline Word letter_run(Gen g, const Int& e) {
    return word_power(Word{Letter{g, 1}}, e);
}

// Maximal root in the ambient free group: w = u c u^{-1} with c cyclically
// reduced, c = core^mult with mult maximal; returns (u core u^{-1}, mult).
struct RootDecomposition {
    Word root;
    long multiplicity;
};

inline RootDecomposition max_root(const Word& input) {
    Word w = free_reduce(input);
    if (w.empty()) return {{}, 1};
    Word u;
    while (w.size() >= 2 && w.front() == inverse(w.back())) {
        u.push_back(w.front());
        w.erase(w.begin());
        w.pop_back();
    }
    size_t n = w.size();
    size_t period = n;
    for (size_t d = 1; d <= n / 2; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
        if (ok) { period = d; break; }
    }
    Word core(w.begin(), w.begin() + static_cast<long>(period));
    Word root = concat(concat(u, core), inverse_word(u));
    return {free_reduce(root), static_cast<long>(n / period)};
}

}  // namespace snowflake
