// Command-line front end: pell, genpell, quad, heis, enum, verify.
#include "edt0l/battery.hpp"
#include "edt0l/heisenberg.hpp"
#include "edt0l/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace edt0l;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BigInt big(const std::string& s, const char* what) {
    try {
        return parse_bigint(s);
    } catch (const std::exception&) {
        throw Usage(std::string("bad integer for ") + what + ": " + s);
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Usage("cannot write " + path);
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Usage("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void print_pairs(const std::set<Pair, PairLess>& ps) {
    if (ps.empty()) std::cout << "(no solutions)\n";
    for (const auto& [x, y] : ps) std::cout << x << ' ' << y << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EDT0L systems for quadratic and Heisenberg equations"};
    app.require_subcommand(1);

    std::string d_s, n_s, bound_s = "100", count_s = "5";
    auto* pell = app.add_subcommand("pell", "fundamental solution and first solutions of x^2 - D y^2 = 1");
    pell->add_option("--d", d_s, "D")->required();
    pell->add_option("--count", count_s, "number of solutions");

    auto* genpell = app.add_subcommand("genpell", "solutions of x^2 - D y^2 = N in a box");
    genpell->add_option("--d", d_s, "D")->required();
    genpell->add_option("--n", n_s, "N")->required();
    genpell->add_option("--bound", bound_s, "box bound");

    std::string coeffs, emit, box_s = "20";
    auto* quad = app.add_subcommand("quad", "solutions of a two-variable quadratic");
    quad->add_option("--coeffs", coeffs, "alpha,beta,gamma,delta,eps,zeta")->required();
    quad->add_option("--emit-system", emit, "write the annotated system here");
    quad->add_option("--box", box_s, "box bound");

    std::string eq_text;
    auto* heis = app.add_subcommand("heis", "solutions of a one-variable Heisenberg equation");
    heis->add_option("--eq", eq_text, "equation, e.g. \"X a X^-1 b\"")->required();
    heis->add_option("--emit-system", emit, "write the system here");
    heis->add_option("--box", box_s, "box bound");

    std::string sys_path, tmpl;
    std::size_t path_len = 8, form_len = 64, max_words = 100;
    auto* en = app.add_subcommand("enum", "enumerate a serialized system within a budget");
    en->add_option("--system", sys_path, "system file")->required();
    en->add_option("--path-len", path_len);
    en->add_option("--form-len", form_len);
    en->add_option("--max-words", max_words);
    en->add_option("--template", tmpl, "decode with base letters, e.g. a,b");

    std::string mode;
    std::size_t random = 0;
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "compare constructions against brute force");
    verify->add_option("--mode", mode, "quad or heis")->required()->check(CLI::IsMember({"quad", "heis"}));
    verify->add_option("--random", random, "number of random equations");
    verify->add_option("--box", box_s, "box bound");
    verify->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*pell) {
            BigInt D = big(d_s, "--d");
            if (D < 2 || is_perfect_square(D)) throw Usage("D must be at least 2 and not a perfect square");
            long count = big(count_s, "--count").get_si();
            if (count < 1) throw Usage("--count must be positive");
            auto [x1, y1] = fundamental_solution(D);
            std::cout << x1 << ' ' << y1 << '\n';
            for (const auto& [x, y] : pell_solutions(D, count)) std::cout << x << ' ' << y << '\n';
            return 0;
        }
        if (*genpell) {
            BigInt D = big(d_s, "--d"), N = big(n_s, "--n"), B = big(bound_s, "--bound");
            if (D < 2 || is_perfect_square(D)) throw Usage("D must be at least 2 and not a perfect square");
            if (N == 0) throw Usage("N must be nonzero");
            print_pairs(genpell_solutions(D, N, B));
            return 0;
        }
        if (*quad) {
            std::vector<BigInt> c;
            std::stringstream ss(coeffs);
            for (std::string part; std::getline(ss, part, ',');) c.push_back(big(part, "--coeffs"));
            if (c.size() != 6) throw Usage("--coeffs needs six integers");
            QuadraticEquation eq{c[0], c[1], c[2], c[3], c[4], c[5]};
            AnnotatedSystem a = build_pair_system(eq);
            if (!emit.empty()) write_file(emit, serialize_annotated(a));
            print_pairs(solutions_in_box(a, big(box_s, "--box")));
            return 0;
        }
        if (*heis) {
            OneVarEquation eq;
            try {
                eq = parse_equation(eq_text);
            } catch (const EquationSyntaxError& e) {
                throw Usage(e.what());
            }
            HeisenbergSolution s = build_solution_system(eq);
            const ZSystem& z = s.z;
            std::cout << "# " << z.A1 << " X1 + " << z.C1 << " = 0\n";
            std::cout << "# " << z.A2 << " X2 + " << z.C2 << " = 0\n";
            std::cout << "# " << z.cX1X2 << " X1X2 + " << z.cX1 << " X1 + " << z.cX2 << " X2 + " << z.cX3 << " X3 + "
                      << z.c0 << " = 0\n";
            std::cout << "# case " << s.case_id << '\n';
            if (!emit.empty()) write_file(emit, serialize_system(s.system));
            BigInt B = big(box_s, "--box");
            auto sols = s.solutions_in_box(B);
            if (sols.empty()) std::cout << "(no solutions)\n";
            for (const auto& t : sols) std::cout << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
            return 0;
        }
        if (*en) {
            Edt0lSystem sys;
            try {
                sys = deserialize_system(read_file(sys_path));
            } catch (const ParseError& e) {
                throw Usage(e.what());
            }
            Enumeration e = enumerate_language(sys, {path_len, form_len, max_words});
            std::vector<std::string> base;
            std::stringstream ss(tmpl);
            for (std::string part; std::getline(ss, part, ',');) base.push_back(part);
            for (const auto& w : e.words) {
                if (base.empty()) {
                    std::cout << format_word(sys, w) << '\n';
                    continue;
                }
                auto v = decode_exponents(sys, w, base);
                for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? " " : "") << v[i];
                std::cout << '\n';
            }
            if (!e.complete) std::cerr << "note: the budget cut some branches\n";
            return 0;
        }
        if (*verify) {
            BigInt B = big(box_s, "--box");
            std::mt19937_64 rng(seed);
            for (std::size_t i = 0; i < random; ++i) {
                std::optional<std::string> bad;
                if (mode == "quad") {
                    bad = check_quad(random_quadratic(rng), B);
                } else {
                    bool balanced = std::bernoulli_distribution(0.5)(rng);
                    bad = check_heis(random_heis_equation(rng, 6, 2, balanced), B);
                }
                if (bad) {
                    std::cout << "mismatch: " << *bad << '\n';
                    return 1;
                }
            }
            std::cout << "ok " << random << '\n';
            return 0;
        }
    } catch (const Usage& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
