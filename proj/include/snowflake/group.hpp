#pragma once

// Group presentations.  Three configurations share one parameter struct:
//   bpq      : <a,b,s,t | [a,b], s^-1 a^q s = a^p b, t^-1 a^q t = a^p b^-1>
//   bpq+     : adds theta (letter h) with [b,h] = 1
//   tbpq+    : central extension; [b,h] = z, z central
// Requires p > q >= 1.

#include <stdexcept>
#include <vector>

#include "word.hpp"

namespace snowflake {

struct GroupParams {
    long p = 2, q = 1;
    bool with_theta = false;
    bool track_z = false;

    static GroupParams bpq(long p, long q) {
        check(p, q);
        return {p, q, false, false};
    }
    static GroupParams bpq_plus(long p, long q) {
        check(p, q);
        return {p, q, true, false};
    }
    static GroupParams tbpq_plus(long p, long q) {
        check(p, q);
        return {p, q, true, true};
    }

    bool allows(Gen g) const {
        if (g == Gen::theta) return with_theta;
        if (g == Gen::z) return track_z;
        return true;
    }

    // Generator letters in the fixed enumeration order a A b B s S t T h H z Z.
    std::vector<Letter> letters() const {
        std::vector<Letter> out;
        for (Gen g : {Gen::a, Gen::b, Gen::s, Gen::t, Gen::theta, Gen::z}) {
            if (!allows(g)) continue;
            out.push_back({g, 1});
            out.push_back({g, -1});
        }
        return out;
    }

    // Defining relators as words; each evaluates to the identity.
    std::vector<Word> relators() const {
        std::vector<Word> rs;
        rs.push_back(parse_word("A B a b"));
        std::string qs = std::to_string(q), ps = std::to_string(p);
        rs.push_back(parse_word("S a^" + qs + " s B A^" + ps));
        rs.push_back(parse_word("T a^" + qs + " t b A^" + ps));
        if (with_theta) {
            if (track_z) {
                rs.push_back(parse_word("B H b h Z"));
                for (const char* g : {"a", "b", "s", "t", "h"}) {
                    std::string low(g), up(1, static_cast<char>(low[0] - 'a' + 'A'));
                    rs.push_back(parse_word("Z " + up + " z " + low));
                }
            } else {
                rs.push_back(parse_word("B H b h"));
            }
        }
        return rs;
    }

    friend bool operator==(const GroupParams&, const GroupParams&) = default;

  private:
    static void check(long p, long q) {
        if (!(p > q && q >= 1))
            throw std::invalid_argument("group parameters require p > q >= 1");
    }
};

inline void validate_word(const GroupParams& g, const Word& w) {
    for (Letter l : w)
        if (!g.allows(l.gen))
            throw std::invalid_argument(
                std::string("letter '") + letter_char(l) + "' is not a generator here");
}

}  // namespace snowflake
