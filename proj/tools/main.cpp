#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sl2factor/chains.hpp"
#include "sl2factor/engine.hpp"
#include "sl2factor/oracle.hpp"
#include "sl2factor/randgen.hpp"

namespace {

using namespace sl2factor;

constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

struct BudgetFlags {
    int max_k = 0;  // 0: derive from the ring
    int radius = 8;
    int unit_exp = 12;
    int unit_height = 8;
    long nodes = 1000000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-k", max_k,
                        "Deepest chain length tried (0 = pick from the ring)");
        cmd->add_option("--radius", radius, "Quotient candidate box radius");
        cmd->add_option("--unit-exp", unit_exp, "Unit generator exponent bound");
        cmd->add_option("--unit-height", unit_height, "Unit sweep height bound");
        cmd->add_option("--nodes", nodes, "Search node limit");
    }

    SearchBudget resolve(const Ring& ring) const {
        SearchBudget b;
        b.max_k = max_k > 0 ? max_k : recommended_depth(*ring) + 2;
        b.quotient_radius = radius;
        b.unit_exp_bound = unit_exp;
        b.unit_height_bound = unit_height;
        b.node_limit = nodes;
        b.validate();
        return b;
    }
};

std::string word_text(const ElemWord& w) {
    return w.empty() ? std::string("(empty)") : w.to_text();
}

int run_factor(const std::string& ring_text, const std::string& matrix_text,
               const BudgetFlags& flags, const std::string& format) {
    Ring ring = RingSpec::parse(ring_text);
    Mat2 A = Mat2::parse(ring, matrix_text);
    SearchBudget budget = flags.resolve(ring);
    EngineOutcome outcome = factor(A, budget);
    if (outcome.status != EngineStatus::Found) {
        std::cerr << "budget exhausted after " << outcome.nodes_used
                  << " nodes; raise --max-k, --radius or --nodes\n";
        return kExitBudget;
    }
    const FactorizationResult& r = *outcome.result;
    if (format == "json") {
        std::cout << r.to_json() << "\n";
    } else {
        std::cout << "word: " << word_text(r.word) << "\n"
                  << "canonical: " << word_text(r.canonical_word) << "\n"
                  << "raw_length: " << r.raw_length << "\n"
                  << "starts_lower: " << (r.starts_lower ? "true" : "false") << "\n"
                  << "chain_k: " << r.chain_length_used << "\n"
                  << "verified: " << (r.verified ? "true" : "false") << "\n";
    }
    return 0;
}

int run_verify(const std::string& ring_text, const std::string& matrix_text,
               const std::string& word_json) {
    Ring ring = RingSpec::parse(ring_text);
    Mat2 A = Mat2::parse(ring, matrix_text);
    ElemWord w = ElemWord::from_json(ring, word_json);
    bool ok = verify(A, w);
    std::cout << (ok ? "true" : "false") << "\n";
    return ok ? 0 : kExitError;
}

int run_chain(const std::string& ring_text, const std::string& a_text,
              const std::string& b_text, const BudgetFlags& flags,
              const std::string& format) {
    Ring ring = RingSpec::parse(ring_text);
    RingElement a = RingElement::parse(ring, a_text);
    RingElement b = RingElement::parse(ring, b_text);
    SearchBudget budget = flags.resolve(ring);
    ChainSearchResult r = find_terminating_chain(a, b, budget);
    if (r.status != SearchStatus::Found) {
        std::cerr << "no terminating chain of length <= " << budget.max_k
                  << " found (" << r.nodes_used << " nodes)\n";
        return kExitBudget;
    }
    const DivisionChain& chain = *r.chain;
    if (format == "json") {
        std::cout << chain.to_json() << "\n";
    } else {
        std::ostringstream qs, rs;
        for (const RingElement& q : chain.quotients()) qs << " " << q;
        for (const RingElement& rem : chain.remainders()) rs << " " << rem;
        std::cout << "a: " << chain.start_a() << "\n"
                  << "b: " << chain.start_b() << "\n"
                  << "q:" << qs.str() << "\n"
                  << "r:" << rs.str() << "\n";
    }
    return 0;
}

std::vector<RingElement> parse_params(const Ring& ring, const std::string& csv) {
    std::vector<RingElement> out;
    std::string item;
    std::istringstream is(csv);
    while (std::getline(is, item, ',')) {
        out.push_back(RingElement::parse(ring, item));
    }
    return out;
}

int run_oracle(const std::string& ring_text, const std::string& matrix_text,
               const std::string& params_csv, int max_len, long nodes, int count,
               std::uint64_t seed, int word_length, long height) {
    Ring ring = RingSpec::parse(ring_text);
    OracleParams params;
    params.param_set = parse_params(ring, params_csv);
    params.max_len = max_len;
    params.node_limit = nodes;
    params.validate();

    if (!matrix_text.empty()) {
        Mat2 A = Mat2::parse(ring, matrix_text);
        OracleResult r = min_word_length(A, params);
        if (r.overflow) {
            std::cerr << "oracle node limit exceeded after " << r.nodes << " nodes\n";
            return kExitBudget;
        }
        if (!r.min_length) {
            std::cout << "min_length: none\n";
            return kExitBudget;
        }
        std::cout << "min_length: " << *r.min_length << "\n"
                  << "witness: " << word_text(*r.witness) << "\n";
        return 0;
    }

    Lcg64 rng(seed);
    std::vector<Mat2> mats;
    mats.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        mats.push_back(random_matrix(rng, ring, word_length, height));
    }
    LengthHistogram hist = length_histogram(mats, params);
    std::cout << hist.to_csv();
    return 0;
}

int run_stats(const std::string& ring_text, const BudgetFlags& flags, int count,
              std::uint64_t seed, int word_length, long height) {
    Ring ring = RingSpec::parse(ring_text);
    SearchBudget budget = flags.resolve(ring);
    Lcg64 rng(seed);
    std::map<int, long> raw_hist, chain_hist;
    long exhausted = 0;
    for (int i = 0; i < count; ++i) {
        Mat2 A = random_matrix(rng, ring, word_length, height);
        EngineOutcome outcome = factor(A, budget);
        if (outcome.status != EngineStatus::Found) {
            ++exhausted;
            continue;
        }
        ++raw_hist[outcome.result->raw_length];
        ++chain_hist[outcome.result->chain_length_used];
    }
    std::cout << "metric,value,count\n";
    for (const auto& [len, n] : raw_hist) {
        std::cout << "raw_length," << len << "," << n << "\n";
    }
    for (const auto& [k, n] : chain_hist) {
        std::cout << "chain_k," << k << "," << n << "\n";
    }
    if (exhausted > 0) {
        std::cout << "exhausted,," << exhausted << "\n";
        return kExitBudget;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elementary matrix factorization in SL2 over S-integer rings"};
    app.require_subcommand(1);

    std::string ring_text;
    std::string matrix_text;
    std::string a_text, b_text;
    std::string word_json;
    std::string format = "text";
    std::string params_csv;
    int max_len = 8;
    long oracle_nodes = 5000000;
    int count = 100;
    std::uint64_t seed = 1;
    int word_length = 4;
    long height = 3;
    BudgetFlags flags;

    auto* factor_cmd = app.add_subcommand("factor", "Factor a matrix into elementary factors");
    factor_cmd->add_option("--ring", ring_text, "Ring, e.g. Q[1/6] or Q(sqrt 2)")->required();
    factor_cmd->add_option("matrix", matrix_text, "Matrix, e.g. [[7,5],[4,3]]")->required();
    factor_cmd->add_option("--format", format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    flags.attach(factor_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Check a word against a matrix");
    verify_cmd->add_option("--ring", ring_text, "Ring")->required();
    verify_cmd->add_option("matrix", matrix_text, "Matrix")->required();
    verify_cmd->add_option("word", word_json, "Word as JSON")->required();

    auto* chain_cmd = app.add_subcommand("chain", "Find a terminating division chain");
    chain_cmd->add_option("--ring", ring_text, "Ring")->required();
    chain_cmd->add_option("a", a_text, "First element")->required();
    chain_cmd->add_option("b", b_text, "Second element")->required();
    chain_cmd->add_option("--format", format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    flags.attach(chain_cmd);

    auto* oracle_cmd = app.add_subcommand(
        "oracle", "Shortest-word search over a finite parameter set");
    oracle_cmd->add_option("--ring", ring_text, "Ring")->required();
    oracle_cmd->add_option("matrix", matrix_text,
                           "Matrix to measure (omit to sample a histogram)");
    oracle_cmd->add_option("--params", params_csv, "Comma-separated parameters")
        ->required();
    oracle_cmd->add_option("--max-len", max_len, "Longest word length tried");
    oracle_cmd->add_option("--nodes", oracle_nodes, "Oracle node limit");
    oracle_cmd->add_option("--count", count, "Histogram sample size");
    oracle_cmd->add_option("--seed", seed, "Sampler seed");
    oracle_cmd->add_option("--word-length", word_length, "Sampled word length");
    oracle_cmd->add_option("--height", height, "Sampled parameter height");

    auto* stats_cmd = app.add_subcommand("stats", "Factor a random sample, report length histograms");
    stats_cmd->add_option("--ring", ring_text, "Ring")->required();
    stats_cmd->add_option("--count", count, "Sample size");
    stats_cmd->add_option("--seed", seed, "Sampler seed");
    stats_cmd->add_option("--word-length", word_length, "Sampled word length");
    stats_cmd->add_option("--height", height, "Sampled parameter height");
    flags.attach(stats_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (factor_cmd->parsed()) {
            return run_factor(ring_text, matrix_text, flags, format);
        }
        if (verify_cmd->parsed()) {
            return run_verify(ring_text, matrix_text, word_json);
        }
        if (chain_cmd->parsed()) {
            return run_chain(ring_text, a_text, b_text, flags, format);
        }
        if (oracle_cmd->parsed()) {
            return run_oracle(ring_text, matrix_text, params_csv, max_len,
                              oracle_nodes, count, seed, word_length, height);
        }
        if (stats_cmd->parsed()) {
            return run_stats(ring_text, flags, count, seed, word_length, height);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error at offset " << e.position() << ": " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
