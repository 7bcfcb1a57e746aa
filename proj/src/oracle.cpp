#include "sl2factor/oracle.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace sl2factor {

void OracleParams::validate() const {
    if (param_set.empty()) throw std::invalid_argument("empty oracle parameter set");
    const Ring& ring = param_set.front().ring();
    for (const RingElement& p : param_set) {
        if (p.is_zero()) throw std::invalid_argument("zero oracle parameter");
        if (!same_ring(p.ring(), ring)) {
            throw std::invalid_argument("oracle parameters from mixed rings");
        }
    }
    if (max_len < 1) throw std::invalid_argument("max_len must be at least 1");
    if (node_limit < 1) throw std::invalid_argument("node_limit must be positive");
}

namespace {

/// Alternating-word tables and the meet-in-the-middle lookup. Right-hand
/// tables are cached per (length, first side) so histogram batches reuse
/// them; every table entry and every left-hand leaf costs one node.
class OracleSearcher {
public:
    OracleSearcher(Ring ring, const OracleParams& params)
        : ring_(std::move(ring)), params_(params) {
        params_.validate();
        for (const RingElement& p : params_.param_set) {
            if (!same_ring(p.ring(), ring_)) {
                throw std::invalid_argument("oracle parameter ring mismatch");
            }
        }
    }

    OracleResult search(const Mat2& A) {
        OracleResult out;
        if (A.is_identity()) {
            out.min_length = 0;
            out.witness = ElemWord();
            out.nodes = nodes_;
            return out;
        }
        for (int n = 1; n <= params_.max_len && !overflow_; ++n) {
            const int h = (n + 1) / 2;
            const int r = n - h;
            for (Side first : {Side::Lower, Side::Upper}) {
                // Letter h+1 keeps the alternation going: its side is the
                // first side again iff h is even.
                Side right_first = (h % 2 == 0) ? first : other_side(first);
                const Table* table = ensure_table(r, right_first);
                if (!table) break;  // overflow
                std::vector<ElemLetter> prefix;
                auto hit = dfs_left(A, Mat2::identity(ring_), first, h, prefix, *table);
                if (overflow_) break;
                if (hit) {
                    out.min_length = n;
                    out.witness = std::move(*hit);
                    out.nodes = nodes_;
                    return out;
                }
            }
        }
        out.overflow = overflow_;
        out.nodes = nodes_;
        return out;
    }

    long nodes() const noexcept { return nodes_; }
    bool overflow() const noexcept { return overflow_; }

private:
    struct Entry {
        Mat2 mat;
        ElemWord word;
    };
    using Table = std::map<std::string, Entry>;

    bool tick() {
        if (nodes_ >= params_.node_limit) {
            overflow_ = true;
            return false;
        }
        ++nodes_;
        return true;
    }

    /// Words of length `len` whose first letter has side `side`, keyed by the
    /// canonical text of their product. First key wins; iteration order of
    /// the previous level and the parameter order make the choice stable.
    const Table* ensure_table(int len, Side side) {
        auto& slot = tables_[side == Side::Lower ? 0 : 1];
        while (static_cast<int>(slot.size()) <= len) {
            int next = static_cast<int>(slot.size());
            Table t;
            if (next == 0) {
                Mat2 id = Mat2::identity(ring_);
                t.emplace(id.to_string(), Entry{id, ElemWord()});
            } else {
                const Table* prev = ensure_table(next - 1, other_side(side));
                if (!prev) return nullptr;
                for (const RingElement& p : params_.param_set) {
                    Mat2 head = Mat2::elementary(side, p);
                    for (const auto& [key, entry] : *prev) {
                        if (!tick()) return nullptr;
                        Mat2 prod = head * entry.mat;
                        ElemWord w({{side, p}});
                        for (const ElemLetter& l : entry.word.letters()) w.push_back(l);
                        std::string pk = prod.to_string();
                        t.emplace(std::move(pk), Entry{std::move(prod), std::move(w)});
                    }
                }
            }
            slot.push_back(std::move(t));
        }
        return &slot[static_cast<std::size_t>(len)];
    }

    std::optional<ElemWord> dfs_left(const Mat2& A, const Mat2& acc, Side side,
                                     int remaining, std::vector<ElemLetter>& prefix,
                                     const Table& table) {
        if (remaining == 0) {
            if (!tick()) return std::nullopt;
            auto it = table.find((acc.inverse() * A).to_string());
            if (it == table.end()) return std::nullopt;
            ElemWord w(prefix);
            for (const ElemLetter& l : it->second.word.letters()) w.push_back(l);
            return w;
        }
        for (const RingElement& p : params_.param_set) {
            prefix.push_back({side, p});
            auto hit = dfs_left(A, acc * Mat2::elementary(side, p),
                                other_side(side), remaining - 1, prefix, table);
            prefix.pop_back();
            if (hit || overflow_) return hit;
        }
        return std::nullopt;
    }

    Ring ring_;
    OracleParams params_;
    std::vector<Table> tables_[2];  // indexed by first side, then length
    long nodes_ = 0;
    bool overflow_ = false;
};

}  // namespace

OracleResult min_word_length(const Mat2& A, const OracleParams& params) {
    OracleSearcher searcher(A.a().ring(), params);
    return searcher.search(A);
}

std::string LengthHistogram::to_csv() const {
    std::ostringstream os;
    os << "length,count\n";
    for (std::size_t n = 0; n < counts.size(); ++n) {
        os << n << "," << counts[n] << "\n";
    }
    if (over_max > 0) {
        os << ">" << max_len << "," << over_max << "\n";
    }
    return os.str();
}

LengthHistogram length_histogram(const std::vector<Mat2>& mats,
                                 const OracleParams& params) {
    params.validate();
    LengthHistogram hist;
    hist.max_len = params.max_len;
    hist.counts.assign(static_cast<std::size_t>(params.max_len) + 1, 0);
    if (mats.empty()) return hist;
    OracleSearcher searcher(mats.front().a().ring(), params);
    for (const Mat2& A : mats) {
        OracleResult r = searcher.search(A);
        if (r.overflow) {
            throw std::runtime_error("oracle node limit exceeded");
        }
        if (r.min_length) {
            hist.counts[static_cast<std::size_t>(*r.min_length)] += 1;
        } else {
            hist.over_max += 1;
        }
    }
    return hist;
}

std::vector<std::pair<Mat2, int>> enumerate_products(const Ring& ring,
                                                     const OracleParams& params) {
    params.validate();
    long nodes = 0;
    auto tick = [&] {
        if (++nodes > params.node_limit) {
            throw std::runtime_error("oracle node limit exceeded");
        }
    };

    std::map<std::string, std::pair<Mat2, int>> found;
    found.emplace(Mat2::identity(ring).to_string(),
                  std::make_pair(Mat2::identity(ring), 0));

    // Frontier of all products of a given length, by first side.
    std::map<std::string, Mat2> frontier[2];
    frontier[0].emplace(Mat2::identity(ring).to_string(), Mat2::identity(ring));
    frontier[1].emplace(Mat2::identity(ring).to_string(), Mat2::identity(ring));
    for (int n = 1; n <= params.max_len; ++n) {
        std::map<std::string, Mat2> next[2];
        for (int s = 0; s < 2; ++s) {
            Side side = s == 0 ? Side::Lower : Side::Upper;
            // Words of length n starting `side` continue with the other side.
            for (const RingElement& p : params.param_set) {
                Mat2 head = Mat2::elementary(side, p);
                for (const auto& [key, mat] : frontier[s == 0 ? 1 : 0]) {
                    tick();
                    Mat2 prod = head * mat;
                    std::string pk = prod.to_string();
                    found.emplace(pk, std::make_pair(prod, n));
                    next[s].emplace(std::move(pk), std::move(prod));
                }
            }
        }
        frontier[0] = std::move(next[0]);
        frontier[1] = std::move(next[1]);
    }

    std::vector<std::pair<Mat2, int>> out;
    out.reserve(found.size());
    for (const auto& [key, value] : found) out.push_back(value);
    return out;
}

}  // namespace sl2factor
