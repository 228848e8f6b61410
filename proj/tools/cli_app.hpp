#pragma once

// Command-line front end. run_cli is kept separate from main so the tests
// can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 precondition violation, 2 usage or input error.

#include "smplab/acceptance.hpp"
#include "smplab/constructions.hpp"
#include "smplab/fricke.hpp"
#include "smplab/io.hpp"
#include "smplab/jsr.hpp"
#include "smplab/regions.hpp"
#include "smplab/sturmian.hpp"
#include "smplab/words.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace smplab::cli {

class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string read_source(const std::string& source)
{
    if (source == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(source);
    if (!in) {
        throw input_error("cannot read '" + source + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Inline JSON when the argument starts with '{' or '[', otherwise a path
/// ("-" for standard input).
inline io::Json load_json(const std::string& source)
{
    const std::size_t first = source.find_first_not_of(" \t\r\n");
    const bool inline_json = first != std::string::npos && (source[first] == '{' || source[first] == '[');
    const std::string text = inline_json ? source : read_source(source);
    try {
        return io::Json::parse(text);
    } catch (const io::Json::parse_error& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
}

template <class Decode>
auto decode(Decode&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const precondition_error& e) {
        throw input_error(e.what());
    } catch (const io::Json::exception& e) {
        throw input_error(std::string("malformed input: ") + e.what());
    }
}

inline MatrixPair load_pair(const std::string& source)
{
    const io::Json j = load_json(source);
    return decode([&] { return io::pair_from_json(j); });
}

inline FiveTuple load_tuple(const std::string& source)
{
    const std::size_t first = source.find_first_not_of(" \t");
    if (first != std::string::npos && (std::isdigit(static_cast<unsigned char>(source[first])) ||
                                       source[first] == '-' || source[first] == '+' || source[first] == '.')) {
        return decode([&] { return io::parse_tuple(source); });
    }
    const io::Json j = load_json(source);
    return decode([&] { return io::tuple_from_json(j); });
}

inline Rational parse_rational(const std::string& text)
{
    return decode([&] { return Rational::parse(text); });
}

inline Word parse_word(const std::string& text)
{
    return decode([&] { return Word::parse(text); });
}

inline io::Json classify_pair_json(const MatrixPair& p, double tol)
{
    const CommutatorReport c = commutator_invariant(p);
    const ReducibilityVerdict red = is_reducible(p, tol);
    const char* reducibility = red.kind == Reducibility::Reducible     ? "reducible"
                               : red.kind == Reducibility::Irreducible ? "irreducible"
                                                                       : "indeterminate";
    return io::Json{{"pair", io::to_json(p)},
                    {"tuple", io::to_json(five_tuple(p))},
                    {"regions", io::to_json(classify(p, tol))},
                    {"commutator", io::number(c.value)},
                    {"reducibility", reducibility},
                    {"normalized_commutator", io::number(red.margin)},
                    {"oracle", io::to_json(geometric_oracle(p))}};
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectrum maximizing products of pairs of 2x2 real matrices"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer("Pairs are JSON objects {\"A\": [[a, b], [c, d]], \"B\": [[...]]}, given inline or as a file path "
               "(\"-\" reads standard input).\nExit codes: 0 success, 1 precondition violation, 2 usage or input "
               "error.");
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: SMPLAB_THREADS, then hardware concurrency)");

    std::string pair_src;
    std::string tuple_src;
    std::string batch_src;
    double tol = 1e-9;
    std::size_t max_len = 12;
    std::string norm = "euclid";
    std::string resolution = "1/1024";
    std::string gamma;
    std::size_t depth = 12;
    std::string word;
    std::string at;
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::size_t tree_depth = 0;
    int n = 1;
    bool verify = false;
    std::string kernel = "supporting";
    std::uint64_t seed = 0;
    std::uint64_t samples = 100'000;
    std::string dist = "normal";
    std::string format = "csv";
    bool list = false;
    std::vector<int> only;

    auto* classify_cmd = app.add_subcommand("classify", "Region membership of a pair or a five-tuple");
    auto* classify_inputs = classify_cmd->add_option_group("input");
    classify_inputs->add_option("--pair", pair_src, "Pair JSON or file");
    classify_inputs->add_option("--tuple", tuple_src, "Five-tuple x,y,z,u,v, or JSON file");
    classify_inputs->add_option("--batch", batch_src, "File of newline-delimited pair JSON; one JSON line out per pair");
    classify_inputs->require_option(1);
    classify_cmd->add_option("--tol", tol, "Tolerance for sign decisions")->capture_default_str();

    auto* jsr_cmd = app.add_subcommand("jsr", "Three-member bounds by exhaustive search");
    jsr_cmd->add_option("--pair", pair_src, "Pair JSON or file")->required();
    jsr_cmd->add_option("--max-len", max_len, "Maximum word length (<= 24)")->capture_default_str();
    jsr_cmd->add_option("--norm", norm, "Operator norm for the upper bound")->check(CLI::IsMember({"euclid"}))
        ->capture_default_str();

    auto* smp_cmd = app.add_subcommand("smp", "SMP candidate, certified where the region allows");
    smp_cmd->add_option("--pair", pair_src, "Pair JSON or file")->required();
    smp_cmd->add_option("--tol", tol, "Tolerance")->capture_default_str();
    smp_cmd->add_option("--max-len", max_len, "Search length for uncertified intervals")->capture_default_str();
    smp_cmd->add_option("--resolution", resolution, "Slope resolution for co-parallel pairs")->capture_default_str();

    auto* sturmian_cmd = app.add_subcommand("sturmian", "Maximize the Sturmian Lyapunov exponent (co-parallel pairs)");
    sturmian_cmd->add_option("--pair", pair_src, "Pair JSON or file")->required();
    sturmian_cmd->add_option("--resolution", resolution, "Stop when the bracket is narrower")->capture_default_str();
    sturmian_cmd->add_option("--tol", tol, "Classification tolerance")->capture_default_str();

    auto* lyap_cmd = app.add_subcommand("lyap", "Lyapunov exponent of the Sturmian measure of a slope");
    lyap_cmd->add_option("--pair", pair_src, "Pair JSON or file")->required();
    lyap_cmd->add_option("--gamma", gamma, "Slope p/q, or a decimal in (0, 1) evaluated by convergents")->required();
    lyap_cmd->add_option("--depth", depth, "Convergents used for a decimal slope")->capture_default_str();

    auto* fricke_cmd = app.add_subcommand("fricke", "Fricke polynomial of a word");
    fricke_cmd->add_option("--word", word, "Binary word")->required();
    fricke_cmd->add_option("--at", at, "Evaluate at x,y,z,u,v instead of printing the polynomial");

    auto* christoffel_cmd = app.add_subcommand("christoffel", "Christoffel words and the Christoffel tree");
    auto* christoffel_inputs = christoffel_cmd->add_option_group("input");
    auto* p_opt = christoffel_inputs->add_option("--p", p, "Number of ones");
    christoffel_cmd->add_option("--q", q, "Length")->needs(p_opt);
    christoffel_inputs->add_option("--tree", tree_depth, "Print the tree down to this depth as JSON");
    christoffel_inputs->require_option(1);

    auto* signature_cmd = app.add_subcommand("signature", "Signature m,k,l of a primitive word");
    signature_cmd->add_option("--word", word, "Binary word")->required();

    auto* example_cmd = app.add_subcommand("example", "The invariant-polygon pair (A_n, B_n)");
    example_cmd->add_option("--n", n, "Family index n >= 1")->required();
    example_cmd->add_flag("--verify", verify, "Verify norms, spectral radius and unique SMP by search");
    example_cmd->add_option("--max-len", max_len, "Search length for --verify (default 2n + 4)");
    example_cmd->add_option("--kernel", kernel, "Kernel line of B_n")->check(CLI::IsMember({"supporting", "tangent"}))
        ->capture_default_str();

    auto* realize_cmd = app.add_subcommand("realize", "A pair with the given five-tuple");
    realize_cmd->add_option("--tuple", tuple_src, "x,y,z,u,v or JSON file")->required();

    auto* symmetrize_cmd = app.add_subcommand("symmetrize", "Symmetric pair with the same tuple (crossing pairs)");
    symmetrize_cmd->add_option("--pair", pair_src, "Pair JSON or file")->required();
    symmetrize_cmd->add_option("--tol", tol, "Classification tolerance")->capture_default_str();

    auto* mc_cmd = app.add_subcommand("montecarlo", "Region frequencies of random pairs");
    mc_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    mc_cmd->add_option("--samples", samples, "Number of pairs")->capture_default_str();
    mc_cmd->add_option("--dist", dist, "Entry distribution")->check(CLI::IsMember({"normal", "uniform01"}))
        ->capture_default_str();
    mc_cmd->add_option("--tol", tol, "Classification tolerance")->capture_default_str();
    mc_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    mc_cmd->footer("CSV columns: " + io::monte_carlo_csv_header() +
                   "\n  counts of pairs per region (true verdicts only); indeterminate = any region undecided; "
                   "union_of_four = cross, mix, neg or copar; unclassified = outside that union, not reducible "
                   "and not indeterminate; union_fraction = union_of_four / samples.");

    auto* reproduce_cmd = app.add_subcommand("reproduce", "Run the reproduction checks and print a pass/fail table");
    reproduce_cmd->add_option("--seed", seed, "Seed for the sampled checks")->capture_default_str();
    reproduce_cmd->add_flag("--list", list, "List the checks without running them");
    reproduce_cmd->add_option("--only", only, "Run only these check numbers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*classify_cmd) {
            if (!batch_src.empty()) {
                std::istringstream lines(read_source(batch_src));
                std::string line;
                std::size_t number = 0;
                while (std::getline(lines, line)) {
                    ++number;
                    if (line.find_first_not_of(" \t\r") == std::string::npos) {
                        continue;
                    }
                    MatrixPair pair;
                    try {
                        pair = load_pair(line);
                    } catch (const input_error& e) {
                        throw input_error("line " + std::to_string(number) + ": " + e.what());
                    }
                    out << classify_pair_json(pair, tol).dump() << '\n';
                }
            } else if (!pair_src.empty()) {
                out << classify_pair_json(load_pair(pair_src), tol).dump(2) << '\n';
            } else {
                const FiveTuple t = load_tuple(tuple_src);
                out << io::Json{{"tuple", io::to_json(t)}, {"regions", io::to_json(classify_tuple(t, tol))}}.dump(2)
                    << '\n';
            }
        } else if (*jsr_cmd) {
            const MatrixPair pair = load_pair(pair_src);
            out << io::to_json(brute_force(pair, max_len, EuclideanNorm{}, BruteForceOptions{1e-9, threads})).dump(2)
                << '\n';
        } else if (*smp_cmd) {
            const MatrixPair pair = load_pair(pair_src);
            const SmpCandidate c = certify(pair, CertifyOptions{tol, max_len, parse_rational(resolution), threads});
            io::Json j = io::to_json(c);
            j["regions"] = io::to_json(classify(pair, tol));
            out << j.dump(2) << '\n';
        } else if (*sturmian_cmd) {
            const MatrixPair pair = load_pair(pair_src);
            out << io::to_json(maximize_sturmian(pair, parse_rational(resolution), SturmianOptions{tol})).dump(2)
                << '\n';
        } else if (*lyap_cmd) {
            const MatrixPair pair = load_pair(pair_src);
            if (gamma.find('/') != std::string::npos || gamma == "0" || gamma == "1") {
                out << io::number(lyapunov_rational(pair, parse_rational(gamma)).value).dump() << '\n';
            } else {
                double g = 0.0;
                try {
                    g = std::stod(gamma);
                } catch (const std::logic_error&) {
                    throw input_error("malformed slope '" + gamma + "'");
                }
                out << io::number(lyapunov_irrational(pair, g, depth).value).dump() << '\n';
            }
        } else if (*fricke_cmd) {
            const Poly5 f = fricke_poly(parse_word(word));
            if (at.empty()) {
                out << f.str() << '\n';
            } else {
                out << io::number(evaluate(f, load_tuple(at))).dump() << '\n';
            }
        } else if (*christoffel_cmd) {
            if (p_opt->count() > 0) {
                detail::require(q >= 1, "--q must be given and positive");
                out << christoffel(p, q).str() << '\n';
            } else {
                io::Json nodes = io::Json::array();
                for (const ChristoffelNode& node : christoffel_tree(tree_depth)) {
                    nodes.push_back(io::Json{{"depth", node.depth}, {"u", node.u.str()}, {"v", node.v.str()},
                                             {"word", node.word().str()}});
                }
                out << nodes.dump(2) << '\n';
            }
        } else if (*signature_cmd) {
            const Word w = parse_word(word);
            detail::require(is_primitive(w), "signature requires a primitive word");
            out << signature(w).str() << '\n';
        } else if (*example_cmd) {
            const KernelChoice choice = kernel == "tangent" ? KernelChoice::Tangent : KernelChoice::Supporting;
            io::Json j = io::to_json(counterexample_family(n, choice));
            j["kernel"] = kernel;
            if (verify) {
                const std::size_t len = example_cmd->count("--max-len") > 0 ? max_len
                                                                           : static_cast<std::size_t>(2 * n + 4);
                j["verification"] = io::to_json(verify_example(n, len, choice, threads));
            }
            out << j.dump(2) << '\n';
        } else if (*realize_cmd) {
            out << io::to_json(realize_from_tuple(load_tuple(tuple_src))).dump(2) << '\n';
        } else if (*symmetrize_cmd) {
            out << io::to_json(symmetrize(load_pair(pair_src), tol)).dump(2) << '\n';
        } else if (*mc_cmd) {
            const MonteCarloCounts c = monte_carlo_regions(seed, samples, parse_distribution(dist), tol, threads);
            if (format == "csv") {
                out << io::monte_carlo_csv_header() << '\n' << io::monte_carlo_csv_row(c) << '\n';
            } else {
                std::istringstream header(io::monte_carlo_csv_header());
                std::istringstream row(io::monte_carlo_csv_row(c));
                io::Json j = io::Json::object();
                std::string key;
                std::string value;
                while (std::getline(header, key, ',') && std::getline(row, value, ',')) {
                    j[key] = io::Json::parse(value);
                }
                out << j.dump(2) << '\n';
            }
        } else if (*reproduce_cmd) {
            if (list) {
                for (const acceptance::Criterion& c : acceptance::criteria()) {
                    out << c.id << ' ' << c.name << ": " << c.summary << '\n';
                }
                return 0;
            }
            return acceptance::run_all({seed, threads}, out, only) ? 0 : 1;
        }
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const concavity_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace smplab::cli
