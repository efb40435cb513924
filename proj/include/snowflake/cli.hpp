#pragma once

// Command-line front end.  Kept in a header (run_cli) so the test suite can
// drive every subcommand in-process against string streams.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conjugacy.hpp"
#include "fit.hpp"
#include "oracle.hpp"
#include "snowflake_words.hpp"
#include "zeta.hpp"

namespace snowflake {

namespace cli_detail {

inline std::string display_word(const Word& w) { return w.empty() ? "1" : print_word(w); }

struct FitSummary {
    bool ok = false;
    LinearFit fit;
    double lo = 0, hi = 0;  // window actually applied (on x)
    std::string note;
};

// Window "lo:hi" filters on x; the default drops the lowest octave,
// since small rows sit below the asymptotic regime.
inline FitSummary windowed_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                               const std::string& window) {
    FitSummary s;
    if (xs.empty()) {
        s.note = "no data";
        return s;
    }
    double lo, hi;
    if (window.empty()) {
        lo = 2.0 * *std::min_element(xs.begin(), xs.end());
        hi = std::numeric_limits<double>::infinity();
    } else {
        auto colon = window.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--window expects lo:hi");
        lo = std::stod(window.substr(0, colon));
        hi = std::stod(window.substr(colon + 1));
    }
    std::vector<double> fx, fy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < lo || xs[i] > hi) continue;
        fx.push_back(xs[i]);
        fy.push_back(ys[i]);
    }
    s.lo = lo;
    s.hi = hi;
    if (fx.size() < 3) {
        s.note = "insufficient data in window";
        return s;
    }
    s.fit = fit_loglog(fx, fy);
    s.ok = true;
    return s;
}

inline std::string svg_path_for(const std::string& csv_path) {
    auto dot = csv_path.find_last_of('.');
    auto slash = csv_path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return csv_path + ".svg";
    return csv_path.substr(0, dot) + ".svg";
}

inline void print_fit(std::ostream& out, const FitSummary& s) {
    if (!s.ok) {
        out << "fit: " << s.note << "\n";
        return;
    }
    out << "fit: slope=" << csv_number(s.fit.slope) << " intercept="
        << csv_number(s.fit.intercept) << " r2=" << csv_number(s.fit.r2) << " n=" << s.fit.n
        << " window=[" << csv_number(s.lo) << ","
        << (s.hi == std::numeric_limits<double>::infinity() ? std::string("inf")
                                                            : csv_number(s.hi))
        << "]\n";
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            auto comma = line.find(',', pos);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(pos));
                break;
            }
            cells.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"exact computation in snowflake groups and their central extensions",
                 "snowflake"};
    app.require_subcommand(1);

    long p = 2, q = 1;
    std::string group;
    unsigned long long seed = 0;
    std::string out_path;
    long cap = 6;
    std::string window;
    app.add_option("--p", p, "vertex exponent p (default 2)");
    app.add_option("--q", q, "vertex exponent q (default 1)");
    app.add_option("--group", group, "bpq, bpq+, or tbpq+ (default depends on subcommand)")
        ->check(CLI::IsMember({"bpq", "bpq+", "tbpq+"}));
    app.add_option("--seed", seed, "random seed (accepted for reproducibility of scripts)");
    app.add_option("--out", out_path, "output path for CSV / ball dumps / SVG");
    app.add_option("--cap", cap, "brute-force length cap (default 6)");
    app.add_option("--window", window, "fit window lo:hi on the x column");

    std::string word1, word2, csv_file, xcol, ycol;
    long long count_n = 0;
    long radius = 0;
    std::vector<long long> n_list;

    auto* c_reduce = app.add_subcommand("reduce", "print the canonical form of a word");
    c_reduce->fallthrough();
    c_reduce->add_option("word", word1)->required();
    auto* c_equal = app.add_subcommand("equal", "decide equality of two words");
    c_equal->fallthrough();
    c_equal->add_option("word1", word1)->required();
    c_equal->add_option("word2", word2)->required();
    auto* c_conj = app.add_subcommand("conjugate", "decide conjugacy and print a conjugator");
    c_conj->fallthrough();
    c_conj->add_option("word1", word1)->required();
    c_conj->add_option("word2", word2)->required();
    auto* c_cl = app.add_subcommand("cl", "conjugacy in the central extension");
    c_cl->fallthrough();
    c_cl->add_option("word1", word1)->required();
    c_cl->add_option("word2", word2)->required();
    auto* c_zexp = app.add_subcommand("zexp", "central exponent of a word equal to a power of z");
    c_zexp->fallthrough();
    c_zexp->add_option("word", word1)->required();
    auto* c_snow = app.add_subcommand("snowflake", "print the snowflake word for a^N");
    c_snow->fallthrough();
    c_snow->add_option("N", count_n)->required();
    auto* c_ball = app.add_subcommand("ball", "count elements in a metric ball");
    c_ball->fallthrough();
    c_ball->add_option("radius", radius)->required();
    auto* c_expd = app.add_subcommand("exp-distortion", "snowflake length vs N experiment");
    c_expd->fallthrough();
    c_expd->add_option("N", n_list, "N values (default powers of two up to 2^16)");
    auto* c_expc = app.add_subcommand("exp-cl", "conjugator length scaling experiment");
    c_expc->fallthrough();
    c_expc->add_option("n", n_list, "n values (default 1..32)");
    auto* c_fit = app.add_subcommand("fit", "log-log fit of one CSV column against another");
    c_fit->fallthrough();
    c_fit->add_option("csv", csv_file)->required();
    c_fit->add_option("xcol", xcol)->required();
    c_fit->add_option("ycol", ycol)->required();

    std::vector<const char*> argv;
    argv.push_back("snowflake");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    auto resolve_group = [&](const char* dflt) {
        const std::string& gname = group.empty() ? dflt : group;
        if (gname == "bpq") return GroupParams::bpq(p, q);
        if (gname == "bpq+") return GroupParams::bpq_plus(p, q);
        return GroupParams::tbpq_plus(p, q);
    };

    try {
        if (c_reduce->parsed()) {
            GroupParams G = resolve_group("bpq");
            out << canonicalize(G, parse_word(word1)).print() << "\n";
            return 0;
        }
        if (c_equal->parsed()) {
            GroupParams G = resolve_group("bpq");
            bool eq = equal_words(G, parse_word(word1), parse_word(word2));
            out << (eq ? "equal" : "not equal") << "\n";
            return eq ? 0 : 1;
        }
        if (c_conj->parsed()) {
            GroupParams G = resolve_group("bpq");
            ConjCertificate cert = conjugacy(G, parse_word(word1), parse_word(word2));
            if (!cert.conjugate) {
                out << "not conjugate\n";
                return 1;
            }
            out << "conjugate\nconjugator: " << display_word(cert.conjugator)
                << "\nverified: " << (cert.verified ? "yes" : "no") << "\n";
            return 0;
        }
        if (c_cl->parsed()) {
            GroupParams G = resolve_group("tbpq+");
            TildeCert cert = cl_tilde(G, parse_word(word1), parse_word(word2));
            if (!cert.conjugate) {
                out << "not conjugate: " << cert.reason << "\n";
                return 1;
            }
            out << "conjugate\nconjugator: " << display_word(cert.conjugator)
                << "\nlength: " << cert.conjugator.size()
                << "\nverified: " << (cert.verified ? "yes" : "no") << "\n";
            return 0;
        }
        if (c_zexp->parsed()) {
            GroupParams G = resolve_group("tbpq+");
            out << z_exponent(G, parse_word(word1)) << "\n";
            return 0;
        }
        if (c_snow->parsed()) {
            GroupParams G = resolve_group("bpq");
            SnowflakeBuilder builder(G);
            Word w = builder.snowflake_word(Int(count_n));
            out << display_word(w) << "\n";
            return 0;
        }
        if (c_ball->parsed()) {
            GroupParams G = resolve_group("bpq");
            Ball B = ball(G, radius);
            out << "radius: " << radius << "\nelements: " << B.size() << "\n";
            if (!out_path.empty()) {
                std::ofstream f(out_path, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open " + out_path);
                dump_ball(B, f);
                out << "wrote " << out_path << "\n";
            }
            return 0;
        }
        if (c_expd->parsed()) {
            GroupParams G = resolve_group("bpq");
            SnowflakeBuilder builder(G);
            if (n_list.empty())
                for (int k = 0; k <= 16; ++k) n_list.push_back(1LL << k);
            std::sort(n_list.begin(), n_list.end());
            n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
            std::vector<std::vector<std::string>> rows;
            std::vector<double> xs, ys;
            for (long long N : n_list) {
                if (N < 0) throw std::invalid_argument("exp-distortion: negative N");
                Word w = builder.snowflake_word(Int(N));
                SnowflakeStats st = builder.stats(Int(N));
                std::string bfs;
                if (static_cast<long>(w.size()) <= cap) {
                    try {
                        auto g = geodesic_length(G, w, static_cast<long>(w.size()), 2'000'000);
                        if (g) bfs = std::to_string(*g);
                    } catch (const BallLimitError&) {
                    }
                }
                rows.push_back({std::to_string(N), std::to_string(w.size()),
                                st.length_bound.str(), bfs});
                if (N > 0 && !w.empty()) {
                    xs.push_back(static_cast<double>(N));
                    ys.push_back(static_cast<double>(w.size()));
                }
            }
            std::vector<std::string> header{"N", "len", "bound", "bfs_len"};
            if (out_path.empty()) {
                write_csv(out, header, rows);
            } else {
                std::ofstream f(out_path);
                if (!f) throw std::runtime_error("cannot open " + out_path);
                write_csv(f, header, rows);
                out << "wrote " << out_path << "\n";
            }
            FitSummary s = windowed_fit(xs, ys, window);
            print_fit(out, s);
            if (s.ok && !out_path.empty()) {
                std::string svg = svg_path_for(out_path);
                std::ofstream f(svg);
                if (!f) throw std::runtime_error("cannot open " + svg);
                write_loglog_svg(f, "snowflake word length vs N", xs, ys, s.fit);
                out << "wrote " << svg << "\n";
            }
            return 0;
        }
        if (c_expc->parsed()) {
            GroupParams G = resolve_group("tbpq+");
            SnowflakeBuilder builder(G);
            if (n_list.empty())
                for (long long n = 1; n <= 32; ++n) n_list.push_back(n);
            std::sort(n_list.begin(), n_list.end());
            n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
            std::vector<std::vector<std::string>> rows;
            std::vector<double> xs, ys;
            Word u{Letter{Gen::b, 1}};
            for (long long n : n_list) {
                if (n < 1) throw std::invalid_argument("exp-cl: n must be >= 1");
                Word szw = builder.short_z_word(builder.commutator_z(Int(n)));
                Word v = u;
                v += szw;
                TildeCert cert = cl_tilde(G, u, v);
                std::size_t input_len = u.size() + v.size();
                std::size_t conj_len = cert.conjugator.size();
                bool ok = cert.conjugate && cert.verified;
                rows.push_back({std::to_string(n), std::to_string(input_len),
                                std::to_string(conj_len), ok ? "1" : "0"});
                if (conj_len > 0) {
                    xs.push_back(static_cast<double>(input_len));
                    ys.push_back(static_cast<double>(conj_len));
                }
            }
            std::vector<std::string> header{"n", "input_len", "conj_len", "ok"};
            if (out_path.empty()) {
                write_csv(out, header, rows);
            } else {
                std::ofstream f(out_path);
                if (!f) throw std::runtime_error("cannot open " + out_path);
                write_csv(f, header, rows);
                out << "wrote " << out_path << "\n";
            }
            FitSummary s = windowed_fit(xs, ys, window);
            print_fit(out, s);
            if (s.ok && !out_path.empty()) {
                std::string svg = svg_path_for(out_path);
                std::ofstream f(svg);
                if (!f) throw std::runtime_error("cannot open " + svg);
                write_loglog_svg(f, "conjugator length vs input length", xs, ys, s.fit);
                out << "wrote " << svg << "\n";
            }
            return 0;
        }
        if (c_fit->parsed()) {
            std::ifstream f(csv_file);
            if (!f) throw std::runtime_error("cannot open " + csv_file);
            CsvTable t = read_csv(f);
            auto col = [&](const std::string& name) {
                for (std::size_t i = 0; i < t.header.size(); ++i)
                    if (t.header[i] == name) return i;
                throw std::invalid_argument("no column named " + name);
            };
            std::size_t xi = col(xcol), yi = col(ycol);
            std::vector<double> xs, ys;
            for (const auto& row : t.rows) {
                if (xi >= row.size() || yi >= row.size()) continue;
                if (row[xi].empty() || row[yi].empty()) continue;
                xs.push_back(std::stod(row[xi]));
                ys.push_back(std::stod(row[yi]));
            }
            FitSummary s = windowed_fit(xs, ys, window);
            if (!s.ok) {
                err << "error: " << s.note << "\n";
                return 2;
            }
            print_fit(out, s);
            if (!out_path.empty()) {
                std::ofstream svg(out_path);
                if (!svg) throw std::runtime_error("cannot open " + out_path);
                write_loglog_svg(svg, ycol + " vs " + xcol, xs, ys, s.fit);
                out << "wrote " << out_path << "\n";
            }
            return 0;
        }
        err << "error: no subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace snowflake
