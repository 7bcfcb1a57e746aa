#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sl2factor/chains.hpp"
#include "sl2factor/engine.hpp"
#include "sl2factor/oracle.hpp"
#include "sl2factor/randgen.hpp"

namespace py = pybind11;
using namespace sl2factor;

namespace {

SearchBudget make_budget(const Ring& ring, int max_k, int radius, int unit_exp,
                         int unit_height, long nodes) {
    SearchBudget b;
    b.max_k = max_k > 0 ? max_k : recommended_depth(*ring) + 2;
    b.quotient_radius = radius;
    b.unit_exp_bound = unit_exp;
    b.unit_height_bound = unit_height;
    b.node_limit = nodes;
    b.validate();
    return b;
}

std::vector<RingElement> parse_params(const Ring& ring,
                                      const std::vector<std::string>& texts) {
    std::vector<RingElement> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(RingElement::parse(ring, t));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact elementary-factorization core; all values cross the "
              "boundary as text (ring/element/matrix grammars, JSON words)";

    m.def(
        "factor_json",
        [](const std::string& ring_text, const std::string& matrix_text, int max_k,
           int radius, int unit_exp, int unit_height, long nodes) -> std::string {
            Ring ring = RingSpec::parse(ring_text);
            Mat2 A = Mat2::parse(ring, matrix_text);
            EngineOutcome out =
                factor(A, make_budget(ring, max_k, radius, unit_exp, unit_height, nodes));
            if (out.status != EngineStatus::Found) {
                throw std::runtime_error("search budget exhausted");
            }
            return out.result->to_json();
        },
        py::arg("ring"), py::arg("matrix"), py::arg("max_k") = 0,
        py::arg("radius") = 8, py::arg("unit_exp") = 12, py::arg("unit_height") = 8,
        py::arg("nodes") = 1000000L);

    m.def(
        "verify",
        [](const std::string& ring_text, const std::string& matrix_text,
           const std::string& word_json) {
            Ring ring = RingSpec::parse(ring_text);
            return verify(Mat2::parse(ring, matrix_text),
                          ElemWord::from_json(ring, word_json));
        },
        py::arg("ring"), py::arg("matrix"), py::arg("word_json"));

    m.def(
        "chain_json",
        [](const std::string& ring_text, const std::string& a_text,
           const std::string& b_text, int max_k, int radius, int unit_exp,
           int unit_height, long nodes) -> std::string {
            Ring ring = RingSpec::parse(ring_text);
            RingElement a = RingElement::parse(ring, a_text);
            RingElement b = RingElement::parse(ring, b_text);
            ChainSearchResult r = find_terminating_chain(
                a, b, make_budget(ring, max_k, radius, unit_exp, unit_height, nodes));
            if (r.status != SearchStatus::Found) {
                throw std::runtime_error("no terminating chain found within budget");
            }
            return r.chain->to_json();
        },
        py::arg("ring"), py::arg("a"), py::arg("b"), py::arg("max_k") = 0,
        py::arg("radius") = 8, py::arg("unit_exp") = 12, py::arg("unit_height") = 8,
        py::arg("nodes") = 1000000L);

    m.def(
        "eval_word_str",
        [](const std::string& ring_text, const std::string& word_json) {
            Ring ring = RingSpec::parse(ring_text);
            return eval_word(ring, ElemWord::from_json(ring, word_json)).to_string();
        },
        py::arg("ring"), py::arg("word_json"));

    m.def(
        "canonicalize_json",
        [](const std::string& ring_text, const std::string& word_json) {
            Ring ring = RingSpec::parse(ring_text);
            return canonicalize(ElemWord::from_json(ring, word_json)).word.to_json();
        },
        py::arg("ring"), py::arg("word_json"));

    m.def(
        "min_word_length",
        [](const std::string& ring_text, const std::string& matrix_text,
           const std::vector<std::string>& params, int max_len,
           long nodes) -> py::object {
            Ring ring = RingSpec::parse(ring_text);
            OracleParams op;
            op.param_set = parse_params(ring, params);
            op.max_len = max_len;
            op.node_limit = nodes;
            OracleResult r = min_word_length(Mat2::parse(ring, matrix_text), op);
            if (r.overflow) throw std::runtime_error("oracle node limit exceeded");
            if (!r.min_length) return py::none();
            return py::int_(*r.min_length);
        },
        py::arg("ring"), py::arg("matrix"), py::arg("params"), py::arg("max_len") = 8,
        py::arg("nodes") = 5000000L);

    m.def(
        "oracle_histogram_csv",
        [](const std::string& ring_text, const std::vector<std::string>& params,
           int max_len, long nodes, int count, std::uint64_t seed, int word_length,
           long height) {
            Ring ring = RingSpec::parse(ring_text);
            OracleParams op;
            op.param_set = parse_params(ring, params);
            op.max_len = max_len;
            op.node_limit = nodes;
            Lcg64 rng(seed);
            std::vector<Mat2> mats;
            mats.reserve(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i) {
                mats.push_back(random_matrix(rng, ring, word_length, height));
            }
            return length_histogram(mats, op).to_csv();
        },
        py::arg("ring"), py::arg("params"), py::arg("max_len") = 8,
        py::arg("nodes") = 5000000L, py::arg("count") = 100, py::arg("seed") = 1,
        py::arg("word_length") = 4, py::arg("height") = 3);

    m.def(
        "stats_csv",
        [](const std::string& ring_text, int count, std::uint64_t seed,
           int word_length, long height, int max_k, int radius, int unit_exp,
           int unit_height, long nodes) {
            Ring ring = RingSpec::parse(ring_text);
            SearchBudget budget =
                make_budget(ring, max_k, radius, unit_exp, unit_height, nodes);
            Lcg64 rng(seed);
            std::map<int, long> raw_hist, chain_hist;
            long exhausted = 0;
            for (int i = 0; i < count; ++i) {
                Mat2 A = random_matrix(rng, ring, word_length, height);
                EngineOutcome out = factor(A, budget);
                if (out.status != EngineStatus::Found) {
                    ++exhausted;
                    continue;
                }
                ++raw_hist[out.result->raw_length];
                ++chain_hist[out.result->chain_length_used];
            }
            std::ostringstream os;
            os << "metric,value,count\n";
            for (const auto& [len, n] : raw_hist) os << "raw_length," << len << "," << n << "\n";
            for (const auto& [k, n] : chain_hist) os << "chain_k," << k << "," << n << "\n";
            if (exhausted > 0) os << "exhausted,," << exhausted << "\n";
            return os.str();
        },
        py::arg("ring"), py::arg("count") = 100, py::arg("seed") = 1,
        py::arg("word_length") = 4, py::arg("height") = 3, py::arg("max_k") = 0,
        py::arg("radius") = 8, py::arg("unit_exp") = 12, py::arg("unit_height") = 8,
        py::arg("nodes") = 1000000L);

    m.def(
        "fundamental_unit",
        [](const std::string& ring_text) {
            return fundamental_unit(RingSpec::parse(ring_text)).to_string();
        },
        py::arg("ring"));

    m.def(
        "recommended_depth",
        [](const std::string& ring_text) {
            return recommended_depth(*RingSpec::parse(ring_text));
        },
        py::arg("ring"));

    m.def(
        "ring_name",
        [](const std::string& ring_text) {
            return RingSpec::parse(ring_text)->to_string();
        },
        py::arg("ring"));
}
