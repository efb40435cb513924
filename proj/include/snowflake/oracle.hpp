#pragma once

// Brute-force reference machinery: breadth-first balls over canonical
// elements, geodesic lengths, and an exhaustive minimal conjugator search.
// Everything here is exponential in the radius; it exists to cross-check the
// structural algorithms on small instances, not to scale.

#include <cstdint>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "engine.hpp"

namespace snowflake {

struct BallLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Ball {
    GroupParams params;
    long radius = 0;
    std::unordered_map<std::string, long> dist;  // canonical key -> word length
    std::optional<std::unordered_map<std::string, Word>> witness;
    std::size_t size() const { return dist.size(); }
};

inline Ball ball(const GroupParams& G, long radius, std::size_t max_elements = 20'000'000,
                 bool witnesses = false) {
    if (radius < 0) throw std::invalid_argument("ball: negative radius");
    Ball B;
    B.params = G;
    B.radius = radius;
    if (witnesses) B.witness.emplace();
    const std::vector<Letter> gens = G.letters();
    std::deque<std::tuple<CanonicalElement, long, Word>> q;
    CanonicalElement id = CanonicalElement::identity(G);
    B.dist.emplace(id.key(), 0);
    if (witnesses) (*B.witness)[id.key()] = Word{};
    q.emplace_back(std::move(id), 0, Word{});
    while (!q.empty()) {
        auto [e, d, w] = std::move(q.front());
        q.pop_front();
        if (d == radius) break;  // FIFO: distances are nondecreasing
        for (Letter l : gens) {
            CanonicalElement ne = e;
            ne.append_letter(l);
            std::string k = ne.key();
            auto [it, inserted] = B.dist.emplace(std::move(k), d + 1);
            if (!inserted) continue;
            if (B.dist.size() > max_elements)
                throw BallLimitError("ball: element cap exceeded");
            Word nw = w;
            nw.push_back(l);
            if (witnesses) (*B.witness)[it->first] = nw;
            q.emplace_back(std::move(ne), d + 1, std::move(nw));
        }
    }
    return B;
}

namespace detail {

inline void put_u64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

inline std::uint64_t get_u64(std::istream& is) {
    char b[8];
    is.read(b, 8);
    if (!is) throw std::runtime_error("ball load: truncated stream");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
}

}  // namespace detail

inline void dump_ball(const Ball& B, std::ostream& os) {
    os.write("SFBL", 4);
    detail::put_u64(os, 1);  // format version
    detail::put_u64(os, static_cast<std::uint64_t>(B.params.p));
    detail::put_u64(os, static_cast<std::uint64_t>(B.params.q));
    std::uint64_t flags = (B.params.with_theta ? 1u : 0u) | (B.params.track_z ? 2u : 0u);
    detail::put_u64(os, flags);
    detail::put_u64(os, static_cast<std::uint64_t>(B.radius));
    detail::put_u64(os, B.dist.size());
    std::vector<std::pair<std::string, long>> rows(B.dist.begin(), B.dist.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [k, d] : rows) {
        detail::put_u64(os, k.size());
        os.write(k.data(), static_cast<std::streamsize>(k.size()));
        detail::put_u64(os, static_cast<std::uint64_t>(d));
    }
}

inline Ball load_ball(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != "SFBL")
        throw std::runtime_error("ball load: bad magic");
    if (detail::get_u64(is) != 1) throw std::runtime_error("ball load: unknown version");
    long p = static_cast<long>(detail::get_u64(is));
    long q = static_cast<long>(detail::get_u64(is));
    std::uint64_t flags = detail::get_u64(is);
    Ball B;
    if (flags & 2u)
        B.params = GroupParams::tbpq_plus(p, q);
    else if (flags & 1u)
        B.params = GroupParams::bpq_plus(p, q);
    else
        B.params = GroupParams::bpq(p, q);
    B.radius = static_cast<long>(detail::get_u64(is));
    std::uint64_t count = detail::get_u64(is);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t len = detail::get_u64(is);
        std::string key(len, '\0');
        is.read(key.data(), static_cast<std::streamsize>(len));
        if (!is) throw std::runtime_error("ball load: truncated stream");
        long d = static_cast<long>(detail::get_u64(is));
        B.dist.emplace(std::move(key), d);
    }
    return B;
}

inline std::optional<long> geodesic_length(const GroupParams& G, const Word& w,
                                           long max_radius = 12,
                                           std::size_t max_elements = 20'000'000) {
    std::string target = canonicalize(G, w).key();
    const std::vector<Letter> gens = G.letters();
    std::unordered_map<std::string, long> dist;
    std::deque<std::pair<CanonicalElement, long>> q;
    CanonicalElement id = CanonicalElement::identity(G);
    if (id.key() == target) return 0;
    dist.emplace(id.key(), 0);
    q.emplace_back(std::move(id), 0);
    while (!q.empty()) {
        auto [e, d] = std::move(q.front());
        q.pop_front();
        if (d == max_radius) break;
        for (Letter l : gens) {
            CanonicalElement ne = e;
            ne.append_letter(l);
            std::string k = ne.key();
            if (k == target) return d + 1;
            auto [it, inserted] = dist.emplace(std::move(k), d + 1);
            if (!inserted) continue;
            if (dist.size() > max_elements)
                throw BallLimitError("geodesic_length: element cap exceeded");
            q.emplace_back(std::move(ne), d + 1);
        }
    }
    return std::nullopt;
}

struct BruteConjugacy {
    bool found = false;    // false means "no conjugator of length <= cap",
    Word conjugator;       // which is not a proof of non-conjugacy
    long length = -1;
};

// Bidirectional search over the conjugation orbit.  An edge applies one
// generator letter, so orbit distance equals minimal conjugator length; the
// two half-searches meet iff that length is <= cap.  The witness is made
// deterministic by picking the lexicographically least meeting key and
// first-discovered parents on both sides.
inline BruteConjugacy brute_conjugator(const GroupParams& G, const Word& u, const Word& v,
                                       long cap = 8, std::size_t max_elements = 4'000'000) {
    if (cap < 0) throw std::invalid_argument("brute_conjugator: negative cap");
    const std::vector<Letter> gens = G.letters();
    std::vector<CanonicalElement> gen_el;
    gen_el.reserve(gens.size());
    for (Letter l : gens) gen_el.push_back(canonicalize(G, Word{l}));

    struct Node {
        long dist;
        int parent_letter;  // index into gens, -1 at the root
        std::string parent_key;
    };
    using Map = std::unordered_map<std::string, Node>;
    Map dA, dB;
    std::vector<CanonicalElement> fA, fB;
    CanonicalElement U = canonicalize(G, u), V = canonicalize(G, v);
    std::string ku = U.key(), kv = V.key();
    dA.emplace(ku, Node{0, -1, {}});
    fA.push_back(U);
    long best = -1;
    if (ku == kv)
        best = 0;
    else {
        dB.emplace(kv, Node{0, -1, {}});
        fB.push_back(V);
    }

    long depthA = 0, depthB = 0;
    auto expand = [&](Map& mine, Map& other, std::vector<CanonicalElement>& frontier,
                      long depth) {
        std::vector<CanonicalElement> next;
        for (const CanonicalElement& e : frontier) {
            std::string ek = e.key();
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                CanonicalElement ne = conjugate(e, gen_el[gi]);
                std::string k = ne.key();
                auto [it, inserted] =
                    mine.emplace(std::move(k), Node{depth, static_cast<int>(gi), ek});
                if (!inserted) continue;
                if (dA.size() + dB.size() > max_elements)
                    throw BallLimitError("brute_conjugator: element cap exceeded");
                auto hit = other.find(it->first);
                if (hit != other.end()) {
                    long total = depth + hit->second.dist;
                    if (best < 0 || total < best) best = total;
                }
                next.push_back(std::move(ne));
            }
        }
        frontier = std::move(next);
    };

    while (depthA + depthB < cap && !(best >= 0 && depthA + depthB >= best)) {
        if (fA.size() <= fB.size() || fB.empty()) {
            ++depthA;
            expand(dA, dB, fA, depthA);
        } else {
            ++depthB;
            expand(dB, dA, fB, depthB);
        }
        if (fA.empty() && fB.empty()) break;
    }

    BruteConjugacy out;
    // exact minimum over every meeting key, lexicographically least witness
    long lstar = -1;
    const std::string* meet = nullptr;
    for (const auto& [k, node] : dA) {
        auto it = dB.find(k);
        if (it == dB.end()) {
            if (!(ku == kv && k == ku)) continue;
            // both searches share the root when u and v agree
            long total = node.dist;
            if (lstar < 0 || total < lstar || (total == lstar && (!meet || k < *meet))) {
                lstar = total;
                meet = &k;
            }
            continue;
        }
        long total = node.dist + it->second.dist;
        if (lstar < 0 || total < lstar || (total == lstar && (!meet || k < *meet))) {
            lstar = total;
            meet = &k;
        }
    }
    if (lstar < 0 || lstar > cap) return out;

    auto path_from = [&](const Map& m, const std::string& key) {
        Word c;
        const std::string* cur = &key;
        while (true) {
            const Node& n = m.at(*cur);
            if (n.parent_letter < 0) break;
            c.push_back(gens[static_cast<std::size_t>(n.parent_letter)]);
            cur = &n.parent_key;
        }
        std::reverse(c.begin(), c.end());
        return c;  // key's element = c^-1 (root) c
    };
    Word cA = path_from(dA, *meet);
    Word cB = (ku == kv && *meet == ku) ? Word{} : path_from(dB, *meet);
    Word c = cA;
    c += inverse_word(cB);
    c = free_reduce(c);
    if (!(conjugate(U, canonicalize(G, c)) == V))
        throw std::logic_error("brute_conjugator: witness replay failed");
    out.found = true;
    out.conjugator = c;
    out.length = lstar;
    return out;
}

// Product of `blocks` conjugated relators: trivial by construction.
inline Word random_null_word(const GroupParams& G, std::mt19937_64& rng, int max_blocks = 6) {
    if (max_blocks < 1) throw std::invalid_argument("random_null_word: need max_blocks >= 1");
    const std::vector<Word> rels = G.relators();
    const std::vector<Letter> gens = G.letters();
    std::uniform_int_distribution<int> nblocks(1, max_blocks);
    std::uniform_int_distribution<std::size_t> pick_rel(0, rels.size() - 1);
    std::uniform_int_distribution<int> conj_len(0, 6);
    std::uniform_int_distribution<std::size_t> pick_gen(0, gens.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    Word w;
    int n = nblocks(rng);
    for (int i = 0; i < n; ++i) {
        Word r = rels[pick_rel(rng)];
        if (coin(rng)) r = inverse_word(r);
        Word c;
        int m = conj_len(rng);
        for (int j = 0; j < m; ++j) c.push_back(gens[pick_gen(rng)]);
        w += inverse_word(c);
        w += r;
        w += c;
    }
    return w;
}

}  // namespace snowflake
