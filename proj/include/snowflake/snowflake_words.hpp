#pragma once

// Distortion witnesses.  w_N is a word over {a,s,t} evaluating to a^N with
// |w_N| = O(N^{1/alpha}), alpha = log2(2p/q).  From these: short words for
// arbitrary lattice points, commutator blocks with quantified z-exponent,
// and short realizations of central powers.

#include <map>
#include <shared_mutex>

#include "engine.hpp"

namespace snowflake {

struct SnowflakeStats {
    Int n;
    size_t length;
    long depth;        // least d >= 1 with n <= (2p/q)^d
    Int length_bound;  // (2p+3)(2^d - 1)
};

class SnowflakeBuilder {
  public:
    explicit SnowflakeBuilder(const GroupParams& g) : G_(g) {}

    const GroupParams& params() const { return G_; }

    // w_N for N >= 0: a^N when N < 2p, else with N = 2p N0 + e0,
    // w_N = a^e0 (s^-1 w_{q N0} s) (t^-1 w_{q N0} t).  Evaluates to a^N.
    Word snowflake_word(const Int& n) const {
        if (n < 0) throw std::invalid_argument("snowflake_word: n must be >= 0");
        return build(n);
    }

    // Signed variant: evaluates to a^n for any n.
    Word a_power_word(const Int& n) const {
        return n >= 0 ? build(n) : inverse_word(build(-n));
    }

    // Word over {a,s,t} evaluating to a^x b^y.
    Word short_t_word(const TPoint& target) const {
        Int m = target.n_b;
        Int rest = target.n_a - G_.p * m;
        Word w = a_power_word(rest);
        if (m != 0) {
            w.push_back({Gen::s, -1});
            w += a_power_word(G_.q * m);
            w.push_back({Gen::s, 1});
        }
        return w;
    }

    // W_n = omega^-1 theta^-n omega theta^n, omega = short_t_word((0, floor(n^alpha))).
    // Central in the extension with z-exponent n * floor(n^alpha).
    Word commutator_word(const Int& n) const {
        if (!G_.with_theta)
            throw std::invalid_argument("commutator_word: group has no theta");
        if (n < 1) throw std::invalid_argument("commutator_word: n must be >= 1");
        Word omega = short_t_word({0, floor_pow_alpha(G_.p, G_.q, n)});
        Word w = inverse_word(omega);
        w += letter_run(Gen::theta, -n);
        w += omega;
        w += letter_run(Gen::theta, n);
        return w;
    }

    Int commutator_z(const Int& n) const { return n * floor_pow_alpha(G_.p, G_.q, n); }

    // Word evaluating to z^m: greedy peel of the largest commutator blocks,
    // explicit z letters for the remainder.
    Word short_z_word(const Int& m) const {
        if (!G_.track_z)
            throw std::invalid_argument("short_z_word: group does not track z");
        int sign = m >= 0 ? 1 : -1;
        Int mag = abs(m);
        const Int min_block = commutator_z(2);
        Word out;
        while (mag >= min_block) {
            Int lo = 2, hi = 4;
            while (commutator_z(hi) <= mag) hi *= 2;
            while (lo + 1 < hi) {  // largest n with commutator_z(n) <= mag
                Int mid = (lo + hi) / 2;
                if (commutator_z(mid) <= mag) lo = mid;
                else hi = mid;
            }
            Word block = commutator_word(lo);
            out += sign > 0 ? block : inverse_word(block);
            mag -= commutator_z(lo);
        }
        out += letter_run(Gen::z, sign > 0 ? mag : Int(-mag));
        return out;
    }

    long depth(const Int& n) const {
        if (n < 1) throw std::invalid_argument("depth: n must be >= 1");
        Int num = 2 * G_.p, den = G_.q;  // (2p)^d vs n q^d
        long d = 1;
        Int lhs = num, rhs = n * den;
        while (lhs < rhs) {
            lhs *= num;
            rhs *= den;
            ++d;
        }
        return d;
    }

    Int length_bound(const Int& n) const {
        return Int(2 * G_.p + 3) * (ipow(2, static_cast<unsigned long>(depth(n))) - 1);
    }

    SnowflakeStats stats(const Int& n) const {
        return {n, build(n).size(), depth(n), length_bound(n)};
    }

    // |short_t_word((x,y))| <= K * max(|x|,|y|,2)^{1/alpha} with K as below.
    Int short_t_constant() const { return Int(4 * G_.p + 6) * (G_.p + G_.q) + 2; }

  private:
    GroupParams G_;
    mutable std::shared_mutex mu_;
    mutable std::map<Int, Word> memo_;

    // Words above this index are rebuilt on demand instead of cached; keeps
    // the memo bounded while full-range sweeps stay near-linear.
    static constexpr long kMemoMaxN = 10000;

    Word build(const Int& n) const {
        if (n < 2 * G_.p) return letter_run(Gen::a, n);
        {
            std::shared_lock lk(mu_);
            auto it = memo_.find(n);
            if (it != memo_.end()) return it->second;
        }
        Int n0 = n / (2 * G_.p);
        Int e0 = n - 2 * G_.p * n0;
        Word child = build(G_.q * n0);
        Word w;
        w.reserve(e0.convert_to<size_t>() + 2 * child.size() + 4);
        w += letter_run(Gen::a, e0);
        w.push_back({Gen::s, -1});
        w += child;
        w.push_back({Gen::s, 1});
        w.push_back({Gen::t, -1});
        w += child;
        w.push_back({Gen::t, 1});
        if (n <= kMemoMaxN) {
            std::unique_lock lk(mu_);
            memo_.emplace(n, w);
        }
        return w;
    }
};

}  // namespace snowflake
